#pragma once

#include <optional>
#include <vector>

#include "lsr/instruction.hpp"
#include "lsr/occupancy.hpp"
#include "lsr/path.hpp"
#include "lsr/plane.hpp"

namespace lsr {

/// Unweighted shortest 2D path through available ancilla cells, entering each
/// endpoint across a boundary of the instruction's basis type. Returns nullopt
/// when the endpoints are disconnected this beat. Deterministic under the
/// fixed N,E,S,W neighbour order.
std::optional<Path2D> find_shortest_path_2d(const QubitPlane& plane,
                                            const std::vector<uint8_t>& avail,
                                            const Instruction& instr);

/// Height-weighted 2D Dijkstra: minimises the sum of 2^H over path cells,
/// endpoints included. Never blocked by terrain; throws RoutingError only if
/// the boundary constraint makes the endpoints unreachable.
Path2D find_weighted_path_2d(const QubitPlane& plane, const HeightMap& H, const Instruction& instr);

/// Stacks a 2D path onto the height terrain. Each move happens at the higher
/// of its two cells' heights, vertical runs sit on the lower cell, and the
/// endpoints attach with a single voxel each, so the result never dips below
/// the terrain and starts/ends with a horizontal segment.
Path3D lift_path(const Path2D& p, const HeightMap& H);

/// 3D BFS per-instruction search: endpoints take the lowest unoccupied voxel
/// at or above the qubit's causal frontier; if the endpoints are disconnected,
/// the lower endpoint is raised and the search repeats.
Path3D find_shortest_path_3d(const QubitPlane& plane, const Occupancy3D& occ,
                             const Instruction& instr);

/// Weighted variant: Dijkstra minimising the sum of 2^t over path voxels.
Path3D find_weighted_path_3d(const QubitPlane& plane, const Occupancy3D& occ,
                             const Instruction& instr);

}  // namespace lsr
