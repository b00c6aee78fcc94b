#include <doctest.h>

#include <random>

#include "lsr/errors.hpp"
#include "lsr/kink.hpp"
#include "lsr/routing.hpp"
#include "oracles.hpp"

using namespace lsr;

namespace {

QubitPlane two_qubit_plane(int plane_size, CellCoord a, CellCoord b) {
    QubitPlane plane = QubitPlane::build(plane_size, 0);
    plane.place_symbol("a", a);
    plane.place_symbol("b", b);
    return plane;
}

// Custom rectangular plane: all ancilla except the two named data cells.
QubitPlane custom_plane(int w, int h, CellCoord a, CellCoord b) {
    QubitPlane plane(w, h);
    plane.set_kind(a, CellKind::Data);
    plane.set_kind(b, CellKind::Data);
    plane.place_symbol("a", a);
    plane.place_symbol("b", b);
    return plane;
}

std::vector<uint8_t> all_avail(const QubitPlane& plane) {
    return std::vector<uint8_t>(plane.n_cells(), 1);
}

PathCost cost_of_2d(const Path2D& p, const HeightMap& H) {
    PathCost c{{}, uint32_t(p.size())};
    for (const auto& cell : p) c.weight_sum = c.weight_sum + Cost128::weight_for_height(H.at(cell));
    return c;
}

PathCost cost_of_3d(const Path3D& p) {
    PathCost c{{}, uint32_t(p.size())};
    for (const auto& v : p.voxels) c.weight_sum = c.weight_sum + Cost128::weight_for_height(v.t);
    return c;
}

}  // namespace

TEST_CASE("2d bfs: adjacent MZZ takes the straight path") {
    QubitPlane plane = two_qubit_plane(2, {0, 0}, {2, 0});
    auto avail = all_avail(plane);
    auto p = find_shortest_path_2d(plane, avail, Instruction("a", "b", Basis::ZZ));
    REQUIRE(p.has_value());
    CHECK(*p == Path2D{{0, 0}, {1, 0}, {2, 0}});
}

TEST_CASE("2d bfs: adjacent MXX detours through X boundaries") {
    // Brute-force enumeration on the 3x3 grid: a single simple path of length
    // 5 entering both endpoints from the south.
    QubitPlane plane = two_qubit_plane(2, {0, 0}, {2, 0});
    auto avail = all_avail(plane);
    Instruction mxx("a", "b", Basis::XX);
    auto oracle_len = oracle::min_path_length(plane, avail, mxx);
    REQUIRE(oracle_len.has_value());
    CHECK(*oracle_len == 5);
    auto p = find_shortest_path_2d(plane, avail, mxx);
    REQUIRE(p.has_value());
    CHECK(int(p->size()) == *oracle_len);
    CHECK(*p == Path2D{{0, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 0}});
}

TEST_CASE("2d bfs: wall of unavailable cells disconnects") {
    QubitPlane plane = two_qubit_plane(3, {0, 0}, {4, 0});
    auto avail = all_avail(plane);
    for (int y = 0; y < plane.height(); ++y) avail[plane.cell_index({2, y})] = 0;
    for (int y = 0; y < plane.height(); ++y) avail[plane.cell_index({3, y})] = 0;
    auto p = find_shortest_path_2d(plane, avail, Instruction("a", "b", Basis::ZZ));
    CHECK(!p.has_value());
}

TEST_CASE("2d bfs agrees with brute force on random small instances") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        QubitPlane plane = two_qubit_plane(2, {0, 0}, {trial % 2 ? 2 : 0, trial % 2 ? 0 : 2});
        auto avail = all_avail(plane);
        for (int i = 0; i < plane.n_cells(); ++i)
            if (plane.kind(plane.cell_at(i)) == CellKind::Ancilla && rng() % 3 == 0) avail[i] = 0;
        for (Basis b : {Basis::ZZ, Basis::XX, Basis::CNOT}) {
            Instruction in("a", "b", b);
            auto expect = oracle::min_path_length(plane, avail, in);
            auto got = find_shortest_path_2d(plane, avail, in);
            CHECK(got.has_value() == expect.has_value());
            if (got) CHECK(int(got->size()) == *expect);
        }
    }
}

TEST_CASE("2d bfs is length-minimal on a 20-cell strip") {
    // 5x4 all-ancilla strip with the two data cells mid-row.
    QubitPlane plane = custom_plane(5, 4, {0, 1}, {4, 2});
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto avail = all_avail(plane);
        for (int i = 0; i < plane.n_cells(); ++i)
            if (plane.kind(plane.cell_at(i)) == CellKind::Ancilla && rng() % 4 == 0) avail[i] = 0;
        for (Basis b : {Basis::ZZ, Basis::XX, Basis::CNOT}) {
            Instruction in("a", "b", b);
            auto expect = oracle::min_path_length(plane, avail, in);
            auto got = find_shortest_path_2d(plane, avail, in);
            CHECK(got.has_value() == expect.has_value());
            if (got) CHECK(int(got->size()) == *expect);
        }
    }
}

TEST_CASE("weighted 2d: uniform heights reduce to bfs") {
    QubitPlane plane = two_qubit_plane(2, {0, 0}, {2, 0});
    HeightMap H(plane);
    auto p = find_weighted_path_2d(plane, H, Instruction("a", "b", Basis::ZZ));
    CHECK(p == Path2D{{0, 0}, {1, 0}, {2, 0}});
}

TEST_CASE("weighted 2d: tall cell on the straight route forces a flat detour") {
    // 5x3 all-ancilla strip, data at the row ends. The straight path crosses a
    // height-3 cell (cost 4*1 + 8 = 12); the +2-cell flat detour costs 7.
    QubitPlane plane = custom_plane(5, 3, {0, 1}, {4, 1});
    HeightMap H(plane);
    H.set({2, 1}, 3);
    Instruction in("a", "b", Basis::ZZ);
    auto oracle_best = oracle::min_path_cost(plane, H, in);
    REQUIRE(oracle_best.has_value());
    CHECK(oracle_best->weight_sum == Cost128::weight_for_height(0) + Cost128{6});
    CHECK(oracle_best->length == 7);
    Path2D p = find_weighted_path_2d(plane, H, in);
    CHECK(cost_of_2d(p, H) == *oracle_best);
    for (const auto& c : p) CHECK(c != CellCoord{2, 1});
}

TEST_CASE("weighted 2d matches brute-force minimum on random terrain") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
        QubitPlane plane = two_qubit_plane(2, {0, 0}, {2, 2});
        HeightMap H(plane);
        for (int y = 0; y < plane.height(); ++y)
            for (int x = 0; x < plane.width(); ++x) H.set({x, y}, int(rng() % 4));
        for (Basis b : {Basis::ZZ, Basis::XX, Basis::CNOT}) {
            Instruction in("a", "b", b);
            auto expect = oracle::min_path_cost(plane, H, in);
            REQUIRE(expect.has_value());
            Path2D p = find_weighted_path_2d(plane, H, in);
            CHECK(cost_of_2d(p, H) == *expect);
        }
    }
}

TEST_CASE("weighted 2d: deterministic across runs") {
    QubitPlane plane = two_qubit_plane(3, {0, 0}, {4, 4});
    HeightMap H(plane);
    Instruction in("a", "b", Basis::ZZ);
    Path2D first = find_weighted_path_2d(plane, H, in);
    for (int i = 0; i < 5; ++i) CHECK(find_weighted_path_2d(plane, H, in) == first);
}

TEST_CASE("lift: flat terrain gives a flat path at t=0") {
    QubitPlane plane = two_qubit_plane(2, {0, 0}, {2, 0});
    HeightMap H(plane);
    Path3D p = lift_path({{0, 0}, {1, 0}, {2, 0}}, H);
    CHECK(p.voxels == std::vector<VoxelCoord>{{{0, 0}, 0}, {{1, 0}, 0}, {{2, 0}, 0}});
    CHECK(count_kinks(p).count == 0);
}

TEST_CASE("lift: single raised endpoint produces one vertical run of 4 voxels") {
    // H = [0,0,1]: the climb happens on the lower (middle) cell so the path
    // never dips below the terrain; endpoints stay single voxels.
    QubitPlane plane = two_qubit_plane(2, {0, 0}, {2, 0});
    HeightMap H(plane);
    H.set({2, 0}, 1);
    Path3D p = lift_path({{0, 0}, {1, 0}, {2, 0}}, H);
    CHECK(p.voxels.size() == 4);
    CHECK(p.voxels == std::vector<VoxelCoord>{{{0, 0}, 0}, {{1, 0}, 0}, {{1, 0}, 1}, {{2, 0}, 1}});
    std::string why;
    CHECK(structurally_valid_path(p, &why));
    for (const auto& v : p.voxels) CHECK(v.t >= H.at(v.cell));
}

TEST_CASE("lift: path never dips below terrain along its cells") {
    std::mt19937_64 rng(99);
    QubitPlane plane = two_qubit_plane(3, {0, 0}, {4, 4});
    for (int trial = 0; trial < 50; ++trial) {
        HeightMap H(plane);
        for (int y = 0; y < plane.height(); ++y)
            for (int x = 0; x < plane.width(); ++x) H.set({x, y}, int(rng() % 5));
        Path2D p2 = find_weighted_path_2d(plane, H, Instruction("a", "b", Basis::ZZ));
        Path3D p3 = lift_path(p2, H);
        std::string why;
        REQUIRE_MESSAGE(structurally_valid_path(p3, &why), why);
        // Interior voxels stay at or above their own cell's height.
        for (size_t i = 1; i + 1 < p3.voxels.size(); ++i)
            CHECK(p3.voxels[i].t >= H.at(p3.voxels[i].cell));
        // Lifted cost dominates the 2D weighted cost.
        CHECK(cost_of_3d(p3).weight_sum >= cost_of_2d(p2, H).weight_sum);
    }
}

TEST_CASE("3d bfs: empty lattice stays flat; blocked layer escalates") {
    QubitPlane plane = two_qubit_plane(2, {0, 0}, {2, 0});
    Occupancy3D occ(plane);
    Instruction in("a", "b", Basis::ZZ);
    Path3D p = find_shortest_path_3d(plane, occ, in);
    CHECK(p.voxels == std::vector<VoxelCoord>{{{0, 0}, 0}, {{1, 0}, 0}, {{2, 0}, 0}});

    occ.occupy(p, plane);
    Path3D q = find_shortest_path_3d(plane, occ, in);
    CHECK(q.max_t() >= 1);
    std::string why;
    CHECK(structurally_valid_path(q, &why));
    for (const auto& v : q.voxels) CHECK(!occ.occupied(v));
}

TEST_CASE("3d dijkstra == 3d bfs on an empty lattice") {
    QubitPlane plane = two_qubit_plane(3, {0, 0}, {4, 2});
    Occupancy3D occ(plane);
    Instruction in("a", "b", Basis::ZZ);
    CHECK(find_weighted_path_3d(plane, occ, in) == find_shortest_path_3d(plane, occ, in));
}

TEST_CASE("3d dijkstra prefers a longer flat path over a shorter raised one") {
    // 5x4 strip, data at (0,1),(4,1). A t=0 wall over rows 0..2 of column 2
    // leaves a flat 9-voxel detour through row 3 (cost 9) and a 7-voxel climb
    // over the wall (cost 10). Dijkstra takes the flat one, BFS the short one.
    QubitPlane plane = custom_plane(5, 4, {0, 1}, {4, 1});
    Instruction in("a", "b", Basis::ZZ);
    Occupancy3D occ(plane);
    for (int y = 0; y <= 2; ++y) occ.set({{2, y}, 0});

    Path3D flat = find_weighted_path_3d(plane, occ, in);
    CHECK(flat.max_t() == 0);
    CHECK(flat.size() == 9);
    CHECK(cost_of_3d(flat).weight_sum == Cost128{9});

    Path3D over = find_shortest_path_3d(plane, occ, in);
    CHECK(over.size() == 7);
    CHECK(cost_of_3d(over).weight_sum == Cost128{10});

    auto occupied = [&](VoxelCoord v) { return occ.occupied(v); };
    auto best = oracle::min_voxel_path_cost(plane, occupied, in, {{0, 1}, 0}, {{4, 1}, 0}, 2, 12);
    REQUIRE(best.has_value());
    CHECK(*best == cost_of_3d(flat));
}

TEST_CASE("3d kernels match the voxel-path oracle on small random occupancy") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        QubitPlane plane = custom_plane(4, 3, {0, 1}, {3, 1});
        Occupancy3D occ(plane);
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 4; ++x)
                if (plane.kind({x, y}) == CellKind::Ancilla && rng() % 4 == 0)
                    occ.set({{x, y}, 0});
        Instruction in("a", "b", Basis::ZZ);
        Path3D got = find_weighted_path_3d(plane, occ, in);
        std::string why;
        REQUIRE_MESSAGE(structurally_valid_path(got, &why), why);
        for (const auto& v : got.voxels) CHECK(!occ.occupied(v));
        if (got.front().t == 0 && got.back().t == 0) {
            auto occupied = [&](VoxelCoord v) { return occ.occupied(v); };
            auto best =
                oracle::min_voxel_path_cost(plane, occupied, in, got.front(), got.back(), 2, 12);
            REQUIRE(best.has_value());
            CHECK(cost_of_3d(got) == *best);
        }
    }
}

TEST_CASE("cost saturation: heights beyond 127 compare by length") {
    CHECK(Cost128::weight_for_height(127) == Cost128::max());
    CHECK(Cost128::weight_for_height(130) == Cost128::max());
    CHECK(Cost128::max() + Cost128{1} == Cost128::max());
    PathCost a{Cost128::max(), 5};
    PathCost b{Cost128::max(), 7};
    CHECK(a < b);

    QubitPlane plane = two_qubit_plane(2, {0, 0}, {2, 0});
    HeightMap H(plane);
    H.set({1, 0}, 200);  // unavoidable cell saturates every path's cost
    Path2D p = find_weighted_path_2d(plane, H, Instruction("a", "b", Basis::ZZ));
    CHECK(p.size() == 3);  // all saturated, shortest wins
}

TEST_CASE("determinism: identical inputs give byte-identical 3d paths") {
    QubitPlane plane = two_qubit_plane(3, {0, 0}, {4, 4});
    Occupancy3D occ(plane);
    occ.set({{1, 0}, 0});
    occ.set({{2, 1}, 0});
    Instruction in("a", "b", Basis::XX);
    Path3D first = find_weighted_path_3d(plane, occ, in);
    for (int i = 0; i < 3; ++i) CHECK(find_weighted_path_3d(plane, occ, in) == first);
}
