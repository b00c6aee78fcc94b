#pragma once

#include <optional>
#include <string>

#include "lsr/instruction.hpp"
#include "lsr/plane.hpp"
#include "lsr/schedule.hpp"

namespace lsr {

/// Baseline: in-order execution, one availability map per beat, beat advances
/// on the first routing failure.
Schedule schedule_bfs(const InstructionList& instrs, const QubitPlane& plane);

/// Look-ahead variant: per beat, tries every executable instruction in
/// ascending index order and routes whatever fits.
Schedule schedule_la_bfs(const InstructionList& instrs, const QubitPlane& plane);

/// Sequential 3D search per instruction; look-ahead is unnecessary because the
/// search never fails.
Schedule schedule_bfs3d(const InstructionList& instrs, const QubitPlane& plane);
Schedule schedule_dijkstra3d(const InstructionList& instrs, const QubitPlane& plane);

/// Height-weighted 2D search stacked into 3D, optional kink-parity fixing and
/// minimum-height instruction look-ahead.
Schedule schedule_projection(const InstructionList& instrs, const QubitPlane& plane,
                             const ScheduleOptions& opts);

Schedule run_scheduler(Algorithm algo, const InstructionList& instrs, const QubitPlane& plane,
                       bool kink_condition);

struct ValidationReport {
    bool ok = true;
    std::string first_violation;

    void fail(const std::string& what) {
        if (ok) {
            ok = false;
            first_violation = what;
        }
    }
};

struct ValidateOptions {
    bool check_kinks = false;
};

/// Checks voxel-disjointness, per-path structural invariants (adjacency,
/// endpoint boundaries, no data-cell interiors), per-qubit causal order, and
/// optionally kink parity.
ValidationReport validate_schedule(const InstructionList& instrs, const QubitPlane& plane,
                                   const Schedule& sched, const ValidateOptions& opts);

}  // namespace lsr
