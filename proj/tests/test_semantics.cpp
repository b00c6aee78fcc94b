#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "lsr/chain.hpp"
#include "lsr/errors.hpp"
#include "lsr/kink.hpp"
#include "lsr/verify.hpp"

using namespace lsr;

namespace {

QubitPlane open_plane() { return QubitPlane(64, 64); }

MeasProgram::Step meas(int time, int seq, std::initializer_list<std::pair<int, char>> ops) {
    MeasProgram::Step st{MeasProgram::Step::Measure, time, seq, -1, false, 'Z', {}};
    st.ops = ops;
    return st;
}

MeasProgram::Step init(int time, int anc, bool plus) {
    return {MeasProgram::Step::Init, time, anc, anc, plus, 'Z', {}};
}

MeasProgram::Step destroy(int time, int anc, char basis) {
    return {MeasProgram::Step::Destroy, time, anc, anc, false, basis, {}};
}

int count_branches_certifying_measurement(const MeasProgram& prog, char basis, int* total) {
    int ok = 0;
    *total = 0;
    enumerate_branches(prog, [&](const StabilizerState& st) {
        ++*total;
        if (certify_measurement(st, basis).ok) ++ok;
    });
    return ok;
}

}  // namespace

TEST_CASE("path_to_chain: flat both-Z path is a single MZZ") {
    Path3D p;
    p.voxels = {{{0, 0}, 0}, {{1, 0}, 0}, {{2, 0}, 0}};
    MeasChain chain = path_to_chain(p, open_plane());
    REQUIRE(chain.meas.size() == 1);
    CHECK(chain.meas[0].basis == Basis2::ZZ);
    CHECK(chain.ancillas.empty());
    CHECK(chain.start_boundary == BoundaryType::Z);
    CHECK(chain.end_boundary == BoundaryType::Z);
}

TEST_CASE("path_to_chain: two-kink path starting at an X boundary") {
    LiftedPath lp;
    lp.cells = {{0, 0}, {0, 1}, {1, 1}, {1, 2}};
    lp.move_h = {0, 1, 2};
    Path3D p = lp.to_path3d();
    REQUIRE(count_kinks(p).count == 2);
    MeasChain chain = path_to_chain(p, open_plane());
    REQUIRE(chain.meas.size() == 3);
    CHECK(chain.meas[0].basis == Basis2::XX);
    CHECK(chain.meas[1].basis == Basis2::ZZ);
    CHECK(chain.meas[2].basis == Basis2::XX);
    REQUIRE(chain.ancillas.size() == 2);
    CHECK(chain.ancillas[0].init_plus == false);     // first meas XX -> |0>
    CHECK(chain.ancillas[0].meas_basis == 'X');      // last meas ZZ -> X
    CHECK(chain.ancillas[1].init_plus == true);      // first meas ZZ -> |+>
    CHECK(chain.ancillas[1].meas_basis == 'Z');      // last meas XX -> Z
}

TEST_CASE("path_to_chain: parity/boundary mismatch raises SemanticError") {
    // Flat L: zero kinks but Z and X endpoints.
    LiftedPath flat_l;
    flat_l.cells = {{0, 0}, {1, 0}, {1, 1}};
    flat_l.move_h = {0, 0};
    CHECK_THROWS_AS(path_to_chain(flat_l.to_path3d(), open_plane()), SemanticError);

    // One kink but both endpoints Z.
    LiftedPath zz;
    zz.cells = {{0, 0}, {1, 0}, {1, 1}, {2, 1}};
    zz.move_h = {0, 1, 1};
    Path3D p = zz.to_path3d();
    REQUIRE(count_kinks(p).count == 1);
    CHECK_THROWS_AS(path_to_chain(p, open_plane()), SemanticError);
}

TEST_CASE("simplify_chain: terminal cases and alternating triple") {
    MeasChain single;
    single.meas.push_back({Basis2::XX, 0});
    CHECK(simplify_chain(single) == LogicalOp{LogicalOp::MXX, 0});

    MeasChain triple;
    triple.meas = {{Basis2::XX, 0}, {Basis2::ZZ, 1}, {Basis2::XX, 2}};
    CHECK(simplify_chain(triple) == LogicalOp{LogicalOp::MXX, 0});

    MeasChain cnot;
    cnot.meas = {{Basis2::ZZ, 0}, {Basis2::XX, 1}};
    auto op = simplify_chain(cnot);
    CHECK(op.kind == LogicalOp::CNOT);
    CHECK(op.control_end == 0);

    MeasChain cnot_rev;
    cnot_rev.meas = {{Basis2::XX, 0}, {Basis2::ZZ, 1}};
    CHECK(simplify_chain(cnot_rev).control_end == 1);

    MeasChain runs;  // same-basis runs merge first
    runs.meas = {{Basis2::ZZ, 0}, {Basis2::ZZ, 1}, {Basis2::XX, 2}, {Basis2::XX, 3},
                 {Basis2::ZZ, 4}};
    CHECK(simplify_chain(runs) == LogicalOp{LogicalOp::MZZ, 0});
}

TEST_CASE("simulate_chain: forced MZZ equals the directly projected Bell state") {
    MeasChain chain;
    chain.meas.push_back({Basis2::ZZ, 0});
    std::vector<int> forced{0};
    auto st = simulate_chain(chain, 3, &forced);
    CHECK(st.group == ideal_measurement_group(2, 'Z', 0));

    std::vector<int> forced1{1};
    auto st1 = simulate_chain(chain, 3, &forced1);
    CHECK(st1.group == ideal_measurement_group(2, 'Z', 1));
}

TEST_CASE("simulate_chain: empty chain leaves the Bell pairs untouched") {
    MeasChain chain;
    auto st = simulate_chain(chain, 0);
    Tableau tab(4);
    tab.bell(0, 2);
    tab.bell(1, 3);
    CHECK(st.group == canonical_group(tab, {0, 1, 2, 3}));
}

TEST_CASE("simulate_chain: group after frame correction depends only on the outcome") {
    // Two-measurement ZZ chain through one ancilla: random intermediate
    // outcomes, logical outcome o = s1 xor s2.
    MeasChain chain;
    chain.meas = {{Basis2::ZZ, 0}, {Basis2::ZZ, 1}};
    MeasChain::Ancilla anc;
    anc.cell = {1, 0};
    anc.init_plus = true;
    anc.meas_basis = 'X';
    anc.t_init = 0;
    anc.t_meas = 1;
    chain.ancillas.push_back(anc);

    std::map<int, std::string> group_by_outcome;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        auto st = simulate_chain(chain, seed);
        auto cert = certify_measurement(st, 'Z');
        REQUIRE(cert.ok);
        CanonicalGroup corrected = conjugated(st.group, cert.frame);
        auto [it, fresh] = group_by_outcome.emplace(cert.logical_outcome, corrected.str());
        if (!fresh) CHECK(it->second == corrected.str());
        CHECK(corrected == ideal_measurement_group(2, 'Z', cert.logical_outcome));
    }
    CHECK(group_by_outcome.size() == 2);  // both branches appear over 10 seeds
}

TEST_CASE("verify_path_action: flat ZZ, one-kink CNOT, inconsistent ZZ") {
    auto plane = open_plane();
    Path3D flat;
    flat.voxels = {{{0, 0}, 0}, {{1, 0}, 0}, {{2, 0}, 0}};
    CHECK(verify_path_action(flat, plane, {LogicalOp::MZZ, 0}, 6));
    CHECK_FALSE(verify_path_action(flat, plane, {LogicalOp::MXX, 0}, 1));

    LiftedPath lp;  // Z start, X end, one kink: CNOT with control at the start
    lp.cells = {{0, 0}, {1, 0}, {1, 1}};
    lp.move_h = {0, 1};
    Path3D cnot = lp.to_path3d();
    REQUIRE(count_kinks(cnot).count == 1);
    CHECK(verify_path_action(cnot, plane, {LogicalOp::CNOT, 0}, 6));
    CHECK_FALSE(verify_path_action(cnot, plane, {LogicalOp::CNOT, 1}, 1));

    LiftedPath bad;  // one kink, both ends Z
    bad.cells = {{0, 0}, {1, 0}, {1, 1}, {2, 1}};
    bad.move_h = {0, 1, 1};
    CHECK_THROWS_AS(verify_path_action(bad.to_path3d(), plane, {LogicalOp::MZZ, 0}, 1),
                    SemanticError);
}

TEST_CASE("rewrite rules 1-5 hold on every outcome branch") {
    // Data qubits 0,1; ancillas from qubit 2. A = XX, B = ZZ.
    const char A = 'X';
    int total = 0;

    SUBCASE("rule 1: same-basis pair merges") {
        MeasProgram prog;
        prog.n_data = 2;
        prog.n_anc = 1;
        prog.steps = {init(0, 2, false), meas(0, 0, {{0, A}, {2, A}}),
                      meas(1, 1, {{2, A}, {1, A}}), destroy(1, 2, 'Z')};
        prog.sort_steps();
        int ok = count_branches_certifying_measurement(prog, A, &total);
        CHECK(total >= 2);
        CHECK(ok == total);
    }

    SUBCASE("rule 2: opposite measurement in between") {
        MeasProgram prog;
        prog.n_data = 2;
        prog.n_anc = 2;
        prog.steps = {init(0, 2, false),  // first meas XX -> |0>
                      meas(0, 0, {{0, 'X'}, {2, 'X'}}),
                      init(1, 3, true),   // first meas ZZ -> |+>
                      meas(1, 1, {{2, 'Z'}, {3, 'Z'}}),
                      destroy(1, 2, 'X'),
                      meas(2, 2, {{3, 'X'}, {1, 'X'}}),
                      destroy(2, 3, 'Z')};
        prog.sort_steps();
        int ok = count_branches_certifying_measurement(prog, A, &total);
        CHECK(total >= 4);
        CHECK(ok == total);
    }

    SUBCASE("rule 3: same-basis pair followed by the other basis") {
        MeasProgram prog;
        prog.n_data = 2;
        prog.n_anc = 2;
        prog.steps = {init(0, 2, false), meas(0, 0, {{0, 'X'}, {2, 'X'}}),
                      init(1, 3, false), meas(1, 1, {{3, 'X'}, {1, 'X'}}),
                      meas(2, 2, {{2, 'Z'}, {3, 'Z'}}), destroy(2, 2, 'X'),
                      destroy(2, 3, 'X')};
        prog.sort_steps();
        int ok = count_branches_certifying_measurement(prog, A, &total);
        CHECK(total >= 4);
        CHECK(ok == total);
    }

    SUBCASE("rule 4: same-basis pair following the other basis") {
        MeasProgram prog;
        prog.n_data = 2;
        prog.n_anc = 2;
        prog.steps = {init(0, 2, true), init(0, 3, true),
                      meas(0, 0, {{2, 'Z'}, {3, 'Z'}}),
                      meas(1, 1, {{0, 'X'}, {2, 'X'}}), destroy(1, 2, 'Z'),
                      meas(2, 2, {{3, 'X'}, {1, 'X'}}), destroy(2, 3, 'Z')};
        prog.sort_steps();
        int ok = count_branches_certifying_measurement(prog, A, &total);
        CHECK(total >= 4);
        CHECK(ok == total);
    }

    SUBCASE("rule 5: ZZ then XX composes to a CNOT") {
        MeasProgram prog;
        prog.n_data = 2;
        prog.n_anc = 1;
        prog.steps = {init(0, 2, true), meas(0, 0, {{0, 'Z'}, {2, 'Z'}}),
                      meas(1, 1, {{2, 'X'}, {1, 'X'}}), destroy(1, 2, 'Z')};
        prog.sort_steps();
        int ok = 0;
        total = 0;
        enumerate_branches(prog, [&](const StabilizerState& st) {
            ++total;
            if (certify_cnot(st, 0, 1).ok) ++ok;
        });
        CHECK(total >= 4);
        CHECK(ok == total);
    }
}

TEST_CASE("corpus: kink parity determines the logical operation") {
    std::mt19937_64 rng(321);
    auto plane = open_plane();
    int checked = 0, cnots = 0, meases = 0, inconsistent = 0;
    while (checked < 520) {
        // Random footprint walk + random move heights (kinks 0..4 typical).
        int len = 3 + int(rng() % 10);
        LiftedPath lp;
        CellCoord cur{32, 32};
        lp.cells.push_back(cur);
        std::set<std::pair<int, int>> seen{{cur.x, cur.y}};
        bool ok = true;
        while (int(lp.cells.size()) < len) {
            CellCoord nxt = step(cur, static_cast<Dir>(rng() % 4));
            if (!seen.insert({nxt.x, nxt.y}).second) {
                ok = false;
                break;
            }
            lp.cells.push_back(nxt);
            cur = nxt;
        }
        if (!ok) continue;
        lp.move_h.resize(lp.cells.size() - 1);
        for (auto& h : lp.move_h) h = int(rng() % 3);
        Path3D p = lp.to_path3d();
        if (count_kinks(p).count > 4) continue;
        ++checked;

        Parity parity = parity_of(count_kinks(p).count);
        BoundaryType sb = boundary_of(lp.dir(0));
        BoundaryType eb = boundary_of(lp.dir(lp.n_moves() - 1));
        bool consistent = (parity == Parity::Even) == (sb == eb);
        if (!consistent) {
            ++inconsistent;
            CHECK_THROWS_AS(path_to_chain(p, plane), SemanticError);
            continue;
        }
        MeasChain chain = path_to_chain(p, plane);
        LogicalOp op = simplify_chain(chain);
        if (parity == Parity::Even) {
            ++meases;
            REQUIRE(op.kind != LogicalOp::CNOT);
            CHECK((op.kind == LogicalOp::MXX) == (sb == BoundaryType::X));
        } else {
            ++cnots;
            REQUIRE(op.kind == LogicalOp::CNOT);
            CHECK(op.control_end == (sb == BoundaryType::Z ? 0 : 1));
        }
        CHECK(verify_path_action(p, plane, op, 3));
    }
    CHECK(checked >= 520);
    CHECK(cnots > 50);
    CHECK(meases > 50);
    CHECK(inconsistent > 50);
}
