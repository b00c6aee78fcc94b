#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lsr/errors.hpp"
#include "lsr/kink.hpp"

using namespace lsr;

namespace {

Path3D reversed(const Path3D& p) {
    Path3D r = p;
    std::reverse(r.voxels.begin(), r.voxels.end());
    return r;
}

// Random lifted path on an open grid: self-avoiding footprint walk plus
// random move heights.
struct RandomLifted {
    LiftedPath lp;
    int corners = 0;
};

RandomLifted random_lifted(std::mt19937_64& rng, int min_len = 3, int max_len = 12,
                           int max_h = 3) {
    while (true) {
        int len = min_len + int(rng() % (max_len - min_len + 1));
        LiftedPath lp;
        CellCoord cur{40, 40};
        lp.cells.push_back(cur);
        std::set<std::pair<int, int>> seen{{cur.x, cur.y}};
        bool ok = true;
        while (int(lp.cells.size()) < len) {
            Dir d = static_cast<Dir>(rng() % 4);
            CellCoord nxt = step(cur, d);
            if (!seen.insert({nxt.x, nxt.y}).second) {
                ok = false;
                break;
            }
            lp.cells.push_back(nxt);
            cur = nxt;
        }
        if (!ok) continue;
        lp.move_h.resize(lp.cells.size() - 1);
        for (auto& h : lp.move_h) h = int(rng() % (max_h + 1));
        RandomLifted out;
        out.lp = lp;
        for (size_t i = 1; i + 1 < lp.cells.size(); ++i)
            if (perpendicular(lp.dir(i - 1), lp.dir(i))) ++out.corners;
        return out;
    }
}

HeightMap zero_terrain() { return HeightMap(96, 96); }

}  // namespace

TEST_CASE("count_kinks base cases") {
    Path3D flat;
    flat.voxels = {{{0, 0}, 0}, {{1, 0}, 0}, {{2, 0}, 0}};
    CHECK(count_kinks(flat).count == 0);

    // Vertical run between collinear horizontals: not a kink.
    Path3D collinear;
    collinear.voxels = {{{0, 0}, 0}, {{1, 0}, 0}, {{1, 0}, 1}, {{2, 0}, 1}};
    CHECK(count_kinks(collinear).count == 0);

    // Vertical run between perpendicular horizontals: one kink.
    Path3D kinked;
    kinked.voxels = {{{0, 0}, 0}, {{1, 0}, 0}, {{1, 0}, 1}, {{1, 1}, 1}};
    CHECK(count_kinks(kinked).count == 1);
    CHECK(count_kinks(kinked).parity() == Parity::Odd);
}

TEST_CASE("count_kinks is invariant under path reversal") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        auto r = random_lifted(rng);
        Path3D p = r.lp.to_path3d();
        CHECK(count_kinks(p).count == count_kinks(reversed(p)).count);
    }
}

TEST_CASE("required_parity per basis") {
    CHECK(required_parity(Basis::ZZ) == Parity::Even);
    CHECK(required_parity(Basis::XX) == Parity::Even);
    CHECK(required_parity(Basis::CNOT) == Parity::Odd);
}

TEST_CASE("fix_kink_parity: flat L gains exactly one kink") {
    LiftedPath lp;
    lp.cells = {{0, 0}, {1, 0}, {1, 1}};
    lp.move_h = {0, 0};
    Path3D p = lp.to_path3d();
    REQUIRE(count_kinks(p).count == 0);
    HeightMap H = zero_terrain();
    Path3D fixed = fix_kink_parity(p, H);
    CHECK(count_kinks(fixed).count == 1);
    CHECK(int(fixed.voxels.size()) - int(p.voxels.size()) <= 2);
    std::string why;
    CHECK(structurally_valid_path(fixed, &why));
    CHECK(fixed.front().cell == p.front().cell);
    CHECK(fixed.back().cell == p.back().cell);
}

TEST_CASE("fix_kink_parity: aligning a kink corner removes it") {
    // One kink at the corner: the incoming move is higher than the outgoing.
    LiftedPath lp;
    lp.cells = {{0, 0}, {1, 0}, {1, 1}, {1, 2}};
    lp.move_h = {1, 0, 0};
    Path3D p = lp.to_path3d();
    REQUIRE(count_kinks(p).count == 1);
    HeightMap H = zero_terrain();
    Path3D fixed = fix_kink_parity(p, H);
    CHECK(count_kinks(fixed).count % 2 == 0);
    std::string why;
    CHECK(structurally_valid_path(fixed, &why));
}

TEST_CASE("fix_kink_parity: straight path is not applicable") {
    LiftedPath lp;
    lp.cells = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    lp.move_h = {0, 1, 0};
    HeightMap H = zero_terrain();
    CHECK_THROWS_AS(fix_kink_parity(lp.to_path3d(), H), NotApplicableError);
}

TEST_CASE("fix_kink_parity flips parity on every cornered lifted path") {
    std::mt19937_64 rng(2024);
    int applied = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto r = random_lifted(rng);
        if (r.corners == 0) continue;
        ++applied;
        Path3D p = r.lp.to_path3d();
        HeightMap H = zero_terrain();
        Path3D fixed = fix_kink_parity(p, H);
        CHECK(parity_of(count_kinks(fixed).count) != parity_of(count_kinks(p).count));
        CHECK(int(fixed.voxels.size()) - int(p.voxels.size()) <= 4);
        std::string why;
        REQUIRE_MESSAGE(structurally_valid_path(fixed, &why), why);
        CHECK(fixed.front().cell == p.front().cell);
        CHECK(fixed.back().cell == p.back().cell);
        // Raises only: the fixed path stays at or above the original footprint
        // heights cell by cell.
        auto floor_of = [&](const Path3D& q, CellCoord c) {
            int lo = INT32_MAX;
            for (const auto& v : q.voxels)
                if (v.cell == c) lo = std::min(lo, v.t);
            return lo;
        };
        for (const auto& c : r.lp.cells)
            CHECK(floor_of(fixed, c) >= floor_of(p, c));
    }
    CHECK(applied > 500);
}

TEST_CASE("twist: straight flat path gains one kink and four voxels") {
    LiftedPath lp;
    lp.cells = {{5, 5}, {6, 5}, {7, 5}, {8, 5}, {9, 5}};
    lp.move_h = {0, 0, 0, 0};
    Path3D p = lp.to_path3d();
    HeightMap H = zero_terrain();
    auto twisted = twist_straight_path(p, H);
    REQUIRE(twisted.has_value());
    CHECK(count_kinks(*twisted).count == 1);
    CHECK(twisted->voxels.size() == p.voxels.size() + 4);
    std::string why;
    CHECK(structurally_valid_path(*twisted, &why));
    CHECK(twisted->front().cell == p.front().cell);
    CHECK(twisted->back().cell == p.back().cell);
}

TEST_CASE("twist: fully walled-in path has no slot") {
    LiftedPath lp;
    lp.cells = {{5, 5}, {6, 5}, {7, 5}, {8, 5}};
    lp.move_h = {0, 0, 0};
    Path3D p = lp.to_path3d();
    // Terrain higher than any reachable twist level on both sides.
    HeightMap H = zero_terrain();
    for (int x = 0; x < 96; ++x)
        for (int y = 0; y < 96; ++y)
            if (y != 5) H.set({x, y}, 50);
    CHECK(!twist_straight_path(p, H).has_value());
}

TEST_CASE("twist on cornered path is a precondition violation") {
    LiftedPath lp;
    lp.cells = {{0, 0}, {1, 0}, {1, 1}};
    lp.move_h = {0, 0};
    HeightMap H = zero_terrain();
    CHECK_THROWS_AS(twist_straight_path(lp.to_path3d(), H), StateError);
}
