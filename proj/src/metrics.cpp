#include "lsr/metrics.hpp"

#include <cmath>

#include <json.hpp>

#include "lsr/errors.hpp"

namespace lsr {

Metrics compute_metrics(const Schedule& sched, const QubitPlane& plane) {
    Metrics m;
    m.total_beats = sched.total_beats;
    const size_t n_instr = sched.routed.size();
    if (n_instr > 0 && sched.total_beats == 0)
        throw InternalError("schedule has instructions but zero beats");
    m.throughput = n_instr == 0 ? 0.0 : double(n_instr) / sched.total_beats;

    uint64_t pillars = uint64_t(plane.data_positions().size()) * uint64_t(sched.total_beats);
    uint64_t routing = 0;
    for (const auto& r : sched.routed)
        for (const auto& v : r.path.voxels)
            if (plane.kind(v.cell) == CellKind::Ancilla) ++routing;
    m.active_volume = pillars + routing;
    return m;
}

ResourceEstimate resource_estimate(uint64_t active_volume, uint64_t cells, int d, double p) {
    if (d < 3 || d % 2 == 0) throw DomainError("code distance must be odd and >= 3");
    if (!(p > 0.0) || !(p < 0.01)) throw DomainError("physical error rate must be in (0, 0.01)");
    ResourceEstimate re;
    re.code_distance = d;
    re.physical_error_rate = p;
    re.p_voxel = 0.1 * d * std::pow(100.0 * p, (d + 1) / 2.0);
    re.program_failure = std::min(1.0, re.p_voxel * double(active_volume));
    re.physical_qubits = cells * uint64_t(2 * int64_t(d) * d - 1);
    return re;
}

std::string metrics_to_json(const Metrics& m, const ResourceEstimate* re) {
    nlohmann::ordered_json j;
    j["total_beats"] = m.total_beats;
    j["throughput"] = m.throughput;
    j["active_volume"] = m.active_volume;
    if (m.wall_time_seconds >= 0.0) j["wall_time_seconds"] = m.wall_time_seconds;
    if (re) {
        j["resource"] = {{"code_distance", re->code_distance},
                         {"physical_error_rate", re->physical_error_rate},
                         {"p_voxel", re->p_voxel},
                         {"program_failure", re->program_failure},
                         {"physical_qubits", re->physical_qubits}};
    }
    return j.dump();
}

}  // namespace lsr
