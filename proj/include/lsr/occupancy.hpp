#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "lsr/path.hpp"
#include "lsr/plane.hpp"

namespace lsr {

/// Per-voxel occupancy for the 3D searches. Layers grow lazily; height is
/// unbounded. Also tracks the per-qubit causal frontier: the earliest beat at
/// which a qubit's cell may be touched again.
class Occupancy3D {
public:
    explicit Occupancy3D(const QubitPlane& plane)
        : width_(plane.width()), n_cells_(plane.n_cells()) {}

    int layer_count() const { return int(layers_.size()); }

    bool occupied(VoxelCoord v) const {
        if (v.t < 0) return true;
        if (v.t >= layer_count()) return false;
        return layers_[v.t][idx(v.cell)];
    }

    void set(VoxelCoord v) {
        grow_to(v.t);
        layers_[v.t][idx(v.cell)] = true;
    }

    int frontier(const std::string& sym) const {
        auto it = frontier_.find(sym);
        return it == frontier_.end() ? 0 : it->second;
    }

    void raise_frontier(const std::string& sym, int t) {
        auto& e = frontier_[sym];
        if (t > e) e = t;
    }

    /// Marks all path voxels and raises the endpoint qubits' frontiers to one
    /// past their touch time. Throws CollisionError naming the clashing voxel.
    void occupy(const Path3D& path, const QubitPlane& plane);

private:
    size_t idx(CellCoord c) const { return size_t(c.y) * width_ + c.x; }
    void grow_to(int t) {
        while (layer_count() <= t) layers_.emplace_back(n_cells_, false);
    }

    int width_;
    int n_cells_;
    std::vector<std::vector<bool>> layers_;
    std::unordered_map<std::string, int> frontier_;
};

}  // namespace lsr
