#include "lsr/schedulers.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "lsr/dependency.hpp"
#include "lsr/errors.hpp"
#include "lsr/kink.hpp"
#include "lsr/manybody.hpp"
#include "lsr/occupancy.hpp"
#include "lsr/routing.hpp"

namespace lsr {

namespace {

Path3D flat_lift(const Path2D& p, int beat) {
    Path3D out;
    out.voxels.reserve(p.size());
    for (const auto& c : p) out.voxels.push_back({c, beat});
    return out;
}

Schedule make_schedule(Algorithm algo, const QubitPlane& plane, bool kink_condition, size_t m) {
    Schedule s;
    s.algorithm = algo;
    s.kink_condition = kink_condition;
    s.plane_size = plane.plane_size();
    s.factories = plane.n_factories();
    s.routed.resize(m);
    return s;
}

void reject_many_body(const InstructionList& instrs, const char* algo) {
    for (const auto& in : instrs.instructions)
        if (in.many_body())
            throw RoutingError(std::string(algo) + " does not support many-body instructions");
}

}  // namespace

Schedule schedule_bfs(const InstructionList& instrs, const QubitPlane& plane) {
    reject_many_body(instrs, "bfs");
    Schedule sched = make_schedule(Algorithm::BFS, plane, false, instrs.size());
    const size_t m = instrs.size();
    std::vector<uint8_t> avail(plane.n_cells(), 1);
    size_t i = 0;
    int t = 0;
    while (i < m) {
        bool fresh_beat = true;
        while (i < m) {
            auto p = find_shortest_path_2d(plane, avail, instrs[i]);
            if (!p) {
                if (fresh_beat)
                    throw RoutingError("instruction " + std::to_string(i) +
                                       " is unroutable on an empty beat");
                break;
            }
            for (const auto& c : *p) avail[plane.cell_index(c)] = 0;
            sched.routed[i] = {int(i), flat_lift(*p, t), 0, false, false};
            ++i;
            fresh_beat = false;
        }
        std::fill(avail.begin(), avail.end(), 1);
        ++t;
    }
    sched.total_beats = instrs.empty() ? 0 : t;
    return sched;
}

Schedule schedule_la_bfs(const InstructionList& instrs, const QubitPlane& plane) {
    reject_many_body(instrs, "la-bfs");
    Schedule sched = make_schedule(Algorithm::LA_BFS, plane, false, instrs.size());
    auto dg = DependencyGraph::build(instrs);
    std::vector<uint8_t> avail(plane.n_cells(), 1);
    int t = 0;
    while (!dg.empty()) {
        bool progressed = false;
        for (int i : dg.executable_indices()) {
            auto p = find_shortest_path_2d(plane, avail, instrs[i]);
            if (!p) continue;
            for (const auto& c : *p) avail[plane.cell_index(c)] = 0;
            sched.routed[i] = {i, flat_lift(*p, t), 0, false, false};
            dg.mark_executed(i);
            progressed = true;
        }
        if (!progressed)
            throw RoutingError("no executable instruction is routable on an empty beat");
        std::fill(avail.begin(), avail.end(), 1);
        ++t;
    }
    sched.total_beats = instrs.empty() ? 0 : t;
    return sched;
}

namespace {

Schedule schedule_3d(Algorithm algo, const InstructionList& instrs, const QubitPlane& plane,
                     bool weighted) {
    reject_many_body(instrs, weighted ? "dijkstra3d" : "bfs3d");
    Schedule sched = make_schedule(algo, plane, false, instrs.size());
    Occupancy3D occ(plane);
    int total = 0;
    for (size_t i = 0; i < instrs.size(); ++i) {
        Path3D p = weighted ? find_weighted_path_3d(plane, occ, instrs[i])
                            : find_shortest_path_3d(plane, occ, instrs[i]);
        occ.occupy(p, plane);
        total = std::max(total, p.max_t() + 1);
        sched.routed[i] = {int(i), std::move(p), 0, false, false};
        sched.routed[i].kinks = count_kinks(sched.routed[i].path).count;
    }
    sched.total_beats = total;
    return sched;
}

}  // namespace

Schedule schedule_bfs3d(const InstructionList& instrs, const QubitPlane& plane) {
    return schedule_3d(Algorithm::BFS3D, instrs, plane, false);
}

Schedule schedule_dijkstra3d(const InstructionList& instrs, const QubitPlane& plane) {
    return schedule_3d(Algorithm::DIJKSTRA3D, instrs, plane, true);
}

Schedule schedule_projection(const InstructionList& instrs, const QubitPlane& plane,
                             const ScheduleOptions& opts) {
    Schedule sched = make_schedule(opts.look_ahead ? Algorithm::LA_PROJ : Algorithm::PROJ, plane,
                                   opts.kink_condition, instrs.size());
    HeightMap H(plane);
    int total = 0;

    auto route_one = [&](int i) {
        const Instruction& in = instrs[i];
        RoutedInstruction r;
        r.instr_index = i;
        if (in.many_body()) {
            RoutingTree tree = route_manybody_projection(in.qubits, plane, H, in.basis);
            r.path.voxels = tree.voxels;
            r.tree = true;
            for (const auto& v : r.path.voxels) total = std::max(total, v.t + 1);
            sched.routed[i] = std::move(r);
            return;
        }
        Path2D p2 = find_weighted_path_2d(plane, H, in);
        Path3D p = lift_path(p2, H);
        if (opts.kink_condition) {
            KinkCount kc = count_kinks(p);
            if (kc.parity() != required_parity(in.basis)) {
                bool has_corner = false;
                for (size_t j = 1; j + 1 < p2.size(); ++j) {
                    if (perpendicular(dir_between(p2[j - 1], p2[j]), dir_between(p2[j], p2[j + 1]))) {
                        has_corner = true;
                        break;
                    }
                }
                if (has_corner) {
                    p = fix_kink_parity(p, H);
                } else {
                    auto twisted = twist_straight_path(p, [&](VoxelCoord v) {
                        return plane.in_bounds(v.cell) && plane.kind(v.cell) == CellKind::Ancilla &&
                               v.t >= H.at(v.cell);
                    });
                    if (!twisted)
                        throw RoutingError("instruction " + std::to_string(i) +
                                           ": no space to twist a straight path");
                    p = *twisted;
                }
                r.adjusted = true;
            }
        }
        r.kinks = count_kinks(p).count;
        for (const auto& v : p.voxels) {
            H.raise(v.cell, v.t + 1);
            total = std::max(total, v.t + 1);
        }
        r.path = std::move(p);
        sched.routed[i] = std::move(r);
    };

    if (opts.look_ahead) {
        auto key = [&](int i) {
            uint64_t h = 0;
            for (const auto& q : instrs[i].qubits)
                h = std::max(h, uint64_t(H.at(plane.cell_of(q))));
            return h;
        };
        auto dg = DependencyGraph::build(instrs, key);
        while (!dg.empty()) {
            int i = dg.pop_min_height();
            route_one(i);
            dg.mark_executed(i);
        }
    } else {
        for (size_t i = 0; i < instrs.size(); ++i) route_one(int(i));
    }
    sched.total_beats = total;
    return sched;
}

Schedule run_scheduler(Algorithm algo, const InstructionList& instrs, const QubitPlane& plane,
                       bool kink_condition) {
    switch (algo) {
        case Algorithm::BFS: return schedule_bfs(instrs, plane);
        case Algorithm::LA_BFS: return schedule_la_bfs(instrs, plane);
        case Algorithm::BFS3D: return schedule_bfs3d(instrs, plane);
        case Algorithm::DIJKSTRA3D: return schedule_dijkstra3d(instrs, plane);
        case Algorithm::PROJ: return schedule_projection(instrs, plane, {kink_condition, false});
        case Algorithm::LA_PROJ: return schedule_projection(instrs, plane, {kink_condition, true});
    }
    throw DomainError("unknown algorithm");
}

ValidationReport validate_schedule(const InstructionList& instrs, const QubitPlane& plane,
                                   const Schedule& sched, const ValidateOptions& opts) {
    ValidationReport rep;
    if (sched.routed.size() != instrs.size()) {
        rep.fail("schedule has " + std::to_string(sched.routed.size()) + " paths for " +
                 std::to_string(instrs.size()) + " instructions");
        return rep;
    }

    // (1) voxel-disjointness across all paths
    std::unordered_map<VoxelCoord, int> owner;
    for (const auto& r : sched.routed) {
        for (const auto& v : r.path.voxels) {
            auto [it, inserted] = owner.emplace(v, r.instr_index);
            if (!inserted) {
                rep.fail("collision: instructions " + std::to_string(it->second) + " and " +
                         std::to_string(r.instr_index) + " share voxel (" +
                         std::to_string(v.cell.x) + "," + std::to_string(v.cell.y) + "," +
                         std::to_string(v.t) + ")");
                return rep;
            }
        }
    }

    int max_t = -1;

    // (2) per-path structure
    for (const auto& r : sched.routed) {
        const Instruction& in = instrs[r.instr_index];
        const std::string tag = "instruction " + std::to_string(r.instr_index) + ": ";
        for (const auto& v : r.path.voxels) max_t = std::max(max_t, v.t);

        if (r.tree) {
            RoutingTree tree;
            tree.voxels = r.path.voxels;
            for (const auto& q : in.qubits) tree.targets.push_back(plane.cell_of(q));
            auto report = check_tree_conditions(tree);
            if (!report.pass()) {
                rep.fail(tag + "routing tree invalid: " + report.describe());
                return rep;
            }
            continue;
        }

        std::string why;
        if (!structurally_valid_path(r.path, &why)) {
            rep.fail(tag + why);
            return rep;
        }
        CellCoord c1 = plane.cell_of(in.q1());
        CellCoord c2 = plane.cell_of(in.q2());
        if (r.path.front().cell != c1 || r.path.back().cell != c2) {
            rep.fail(tag + "endpoints do not match instruction operands");
            return rep;
        }
        for (size_t j = 1; j + 1 < r.path.voxels.size(); ++j) {
            CellCoord c = r.path.voxels[j].cell;
            if (c != c1 && c != c2 && plane.kind(c) != CellKind::Ancilla) {
                rep.fail(tag + "interior voxel on a data/factory cell");
                return rep;
            }
            if (c == c1 || c == c2) {
                rep.fail(tag + "path revisits an endpoint pillar");
                return rep;
            }
        }
        if (r.path.size() >= 2) {
            auto entry_dir = [](const VoxelCoord& a, const VoxelCoord& b) {
                if (b.cell.x == a.cell.x + 1) return Dir::E;
                if (b.cell.x == a.cell.x - 1) return Dir::W;
                if (b.cell.y == a.cell.y + 1) return Dir::S;
                return Dir::N;
            };
            Dir d1 = entry_dir(r.path.voxels[0], r.path.voxels[1]);
            Dir d2 = entry_dir(r.path.voxels[r.path.size() - 2], r.path.voxels.back());
            if (boundary_of(d1) != in.boundary_at(0)) {
                rep.fail(tag + "start boundary type mismatch");
                return rep;
            }
            if (boundary_of(d2) != in.boundary_at(1)) {
                rep.fail(tag + "end boundary type mismatch");
                return rep;
            }
        }

        if (opts.check_kinks) {
            if (parity_of(count_kinks(r.path).count) != required_parity(in.basis)) {
                rep.fail(tag + "kink parity violates the basis requirement");
                return rep;
            }
        }
    }

    // (3) per-qubit causal order: touch times strictly increase in program order
    std::vector<const RoutedInstruction*> by_index(sched.routed.size(), nullptr);
    for (const auto& r : sched.routed) {
        if (r.instr_index < 0 || size_t(r.instr_index) >= sched.routed.size() ||
            by_index[r.instr_index]) {
            rep.fail("bad or duplicate instruction index " + std::to_string(r.instr_index));
            return rep;
        }
        by_index[r.instr_index] = &r;
    }
    std::unordered_map<std::string, int> prev_touch;
    for (const auto* rp : by_index) {
        const Instruction& in = instrs[rp->instr_index];
        for (const auto& q : in.qubits) {
            CellCoord c = plane.cell_of(q);
            int touch = -1;
            for (const auto& v : rp->path.voxels)
                if (v.cell == c) touch = std::max(touch, v.t);
            if (touch < 0) {
                rep.fail("instruction " + std::to_string(rp->instr_index) +
                         " never touches qubit " + q);
                return rep;
            }
            auto it = prev_touch.find(q);
            if (it != prev_touch.end() && touch <= it->second) {
                rep.fail("causality: instruction " + std::to_string(rp->instr_index) +
                         " touches qubit " + q + " at beat " + std::to_string(touch) +
                         ", not after beat " + std::to_string(it->second));
                return rep;
            }
            prev_touch[q] = touch;
        }
    }

    if (!sched.routed.empty() && sched.total_beats != max_t + 1)
        rep.fail("total_beats " + std::to_string(sched.total_beats) + " != 1 + max voxel t (" +
                 std::to_string(max_t) + ")");
    return rep;
}

}  // namespace lsr
