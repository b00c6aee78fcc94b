#include "lsr/chain.hpp"

#include <algorithm>

#include "lsr/errors.hpp"

namespace lsr {

std::string LogicalOp::str() const {
    switch (kind) {
        case MXX: return "MXX";
        case MZZ: return "MZZ";
        case CNOT: return control_end == 0 ? "CNOT(q1->q2)" : "CNOT(q2->q1)";
    }
    return "?";
}

MeasChain path_to_chain(const Path3D& path, const QubitPlane& plane) {
    (void)plane;
    std::string why;
    if (!structurally_valid_path(path, &why)) throw StateError("invalid path: " + why);
    if (path.voxels.size() < 2) throw StateError("path too short");

    // Split into horizontal/vertical segments; record each horizontal
    // segment's beat and each vertical run's cell, span and kink flag.
    struct Seg {
        bool vertical;
        int time;        // horizontal: beat
        CellCoord cell;  // vertical: run cell
        int t_lo, t_hi;
        Dir dir_in, dir_out;  // vertical: adjacent horizontal directions
        bool kink;
    };
    std::vector<Seg> segs;
    std::optional<Dir> last_dir;
    segs.push_back({false, path.voxels[0].t, {}, 0, 0, Dir::N, Dir::N, false});
    for (size_t i = 0; i + 1 < path.voxels.size(); ++i) {
        const auto& a = path.voxels[i];
        const auto& b = path.voxels[i + 1];
        if (a.cell == b.cell) {
            if (!segs.back().vertical) {
                segs.push_back({true, 0, a.cell, std::min(a.t, b.t), std::max(a.t, b.t),
                                *last_dir, Dir::N, false});
            } else {
                segs.back().t_lo = std::min(segs.back().t_lo, b.t);
                segs.back().t_hi = std::max(segs.back().t_hi, b.t);
            }
        } else {
            Dir d = dir_between(a.cell, b.cell);
            if (segs.back().vertical) {
                segs.back().dir_out = d;
                segs.back().kink = perpendicular(segs.back().dir_in, d);
                segs.push_back({false, b.t, {}, 0, 0, Dir::N, Dir::N, false});
            }
            last_dir = d;
        }
    }

    MeasChain chain;
    chain.start_boundary = boundary_of(dir_between(path.voxels[0].cell, path.voxels[1].cell));
    chain.end_boundary = boundary_of(
        dir_between(path.voxels[path.voxels.size() - 2].cell, path.voxels.back().cell));

    Basis2 basis = basis2_of(chain.start_boundary);
    for (size_t i = 0; i < segs.size(); ++i) {
        const Seg& s = segs[i];
        if (!s.vertical) {
            chain.meas.push_back({basis, s.time});
        } else {
            if (s.kink) basis = flip(basis);
            MeasChain::Ancilla anc;
            anc.cell = s.cell;
            anc.t_init = s.t_lo;
            anc.t_meas = s.t_hi;
            chain.ancillas.push_back(anc);
        }
    }
    if (basis != basis2_of(chain.end_boundary))
        throw SemanticError("kink parity inconsistent with the boundary type at the far endpoint (" +
                            std::to_string(path.back().cell.x) + "," +
                            std::to_string(path.back().cell.y) + ")");

    // Ancilla pre/post bases come from its first and last two-body measurement
    // in time: init opposite the first, destructive opposite the last.
    for (size_t j = 0; j < chain.ancillas.size(); ++j) {
        const MeasChain::TwoBody& before = chain.meas[j];
        const MeasChain::TwoBody& after = chain.meas[j + 1];
        const MeasChain::TwoBody& first = before.time <= after.time ? before : after;
        const MeasChain::TwoBody& last = before.time <= after.time ? after : before;
        chain.ancillas[j].init_plus = first.basis == Basis2::ZZ;
        chain.ancillas[j].meas_basis = last.basis == Basis2::XX ? 'Z' : 'X';
    }
    return chain;
}

LogicalOp simplify_chain(const MeasChain& chain) {
    if (chain.meas.empty()) throw StateError("cannot simplify an empty chain");
    // Rule 1: merge adjacent same-basis measurements.
    std::vector<Basis2> merged;
    for (const auto& m : chain.meas)
        if (merged.empty() || merged.back() != m.basis) merged.push_back(m.basis);
    // Rules 2-4: alternating triples collapse pairwise; only the length parity
    // and the end bases survive.
    if (merged.size() % 2 == 1) {
        // Alternating odd chain: both ends share a basis.
        return {merged.front() == Basis2::XX ? LogicalOp::MXX : LogicalOp::MZZ, 0};
    }
    // Rule 5: two alternating measurements form a CNOT with the control at the
    // ZZ end.
    return {LogicalOp::CNOT, merged.front() == Basis2::ZZ ? 0 : 1};
}

void MeasProgram::sort_steps() {
    std::stable_sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.seq < b.seq;
    });
}

MeasProgram chain_to_program(const MeasChain& chain) {
    MeasProgram prog;
    prog.n_data = 2;
    prog.n_anc = chain.n_anc();
    auto node_qubit = [&](int node) {
        if (node == 0) return 0;                  // q1 end
        if (node == chain.n_anc() + 1) return 1;  // q2 end
        return 2 + (node - 1);                    // ancilla j is program qubit 2+j
    };
    for (int j = 0; j < int(chain.ancillas.size()); ++j) {
        const auto& a = chain.ancillas[j];
        MeasProgram::Step init{MeasProgram::Step::Init, a.t_init, j, 2 + j, a.init_plus, 'Z', {}};
        prog.steps.push_back(init);
        MeasProgram::Step destroy{MeasProgram::Step::Destroy, a.t_meas, j, 2 + j, false,
                                  a.meas_basis, {}};
        prog.steps.push_back(destroy);
    }
    for (int j = 0; j < int(chain.meas.size()); ++j) {
        const auto& m = chain.meas[j];
        char b = m.basis == Basis2::XX ? 'X' : 'Z';
        MeasProgram::Step st{MeasProgram::Step::Measure, m.time, j, -1, false, 'Z', {}};
        st.ops = {{node_qubit(j), b}, {node_qubit(j + 1), b}};
        prog.steps.push_back(st);
    }
    prog.sort_steps();
    return prog;
}

}  // namespace lsr
