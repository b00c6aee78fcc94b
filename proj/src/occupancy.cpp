#include "lsr/occupancy.hpp"

#include "lsr/errors.hpp"

namespace lsr {

void Occupancy3D::occupy(const Path3D& path, const QubitPlane& plane) {
    for (const auto& v : path.voxels) {
        if (occupied(v))
            throw CollisionError("voxel (" + std::to_string(v.cell.x) + "," +
                                 std::to_string(v.cell.y) + "," + std::to_string(v.t) +
                                 ") already occupied");
    }
    for (const auto& v : path.voxels) set(v);
    if (!path.voxels.empty()) {
        for (const VoxelCoord& end : {path.front(), path.back()}) {
            if (const std::string* sym = plane.symbol_at(end.cell))
                raise_frontier(*sym, end.t + 1);
        }
    }
}

}  // namespace lsr
