#pragma once

// Brute-force reference implementations used only by tests. These stay
// independent of the library's search kernels: plain recursive enumeration
// over simple paths and beat assignments.

#include <functional>
#include <optional>
#include <vector>

#include "lsr/instruction.hpp"
#include "lsr/path.hpp"
#include "lsr/plane.hpp"

namespace lsr::oracle {

/// All simple 2D paths of an instruction: interior cells are available
/// ancillas, both endpoint entries cross the required boundary type.
/// Calls visit(path) for each; enumeration order is deterministic.
void enumerate_paths(const QubitPlane& plane, const std::vector<uint8_t>& avail,
                     const Instruction& instr, const std::function<void(const Path2D&)>& visit,
                     size_t max_len = SIZE_MAX);

/// Minimum cell count over all simple paths, or nullopt if disconnected.
std::optional<int> min_path_length(const QubitPlane& plane, const std::vector<uint8_t>& avail,
                                   const Instruction& instr);

/// Minimum (sum of 2^H, length) over all simple paths, endpoints included.
std::optional<PathCost> min_path_cost(const QubitPlane& plane, const HeightMap& H,
                                      const Instruction& instr);

/// Exact minimum total beats over all beat assignments with per-qubit order
/// and per-beat vertex-disjoint 2D path packings. max_beats caps the search.
std::optional<int> min_total_beats(const InstructionList& instrs, const QubitPlane& plane,
                                   int max_beats);

/// Brute-force minimum (sum of 2^t, voxel count) over simple 3D voxel paths
/// with the endpoint voxels fixed, bounded by max_t and max_len.
std::optional<PathCost> min_voxel_path_cost(const QubitPlane& plane,
                                            const std::function<bool(VoxelCoord)>& occupied,
                                            const Instruction& instr, VoxelCoord start,
                                            VoxelCoord goal, int max_t, size_t max_len);

/// Cheap lower bound on min_total_beats: the largest per-qubit multiplicity.
int beats_lower_bound(const InstructionList& instrs);

}  // namespace lsr::oracle
