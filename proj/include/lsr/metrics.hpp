#pragma once

#include <cstdint>
#include <string>

#include "lsr/plane.hpp"
#include "lsr/schedule.hpp"

namespace lsr {

struct Metrics {
    double throughput = 0.0;       // instructions per code beat
    int total_beats = 0;
    uint64_t active_volume = 0;    // data/factory pillars plus routing voxels
    double wall_time_seconds = -1.0;  // set by the CLI around the scheduler call
};

/// Active volume counts every data/factory pillar for the whole schedule plus
/// all routing voxels on ancilla cells; reproducible from the schedule alone.
Metrics compute_metrics(const Schedule& sched, const QubitPlane& plane);

struct ResourceEstimate {
    double p_voxel = 0.0;
    double program_failure = 0.0;
    uint64_t physical_qubits = 0;
    int code_distance = 0;
    double physical_error_rate = 0.0;
};

/// p_voxel = 0.1 * d * (100p)^((d+1)/2); failure = min(1, p_voxel * volume);
/// physical qubits = cells * (2d^2 - 1). Requires odd d >= 3 and 0 < p < 0.01.
ResourceEstimate resource_estimate(uint64_t active_volume, uint64_t cells, int d, double p);

std::string metrics_to_json(const Metrics& m, const ResourceEstimate* re);

}  // namespace lsr
