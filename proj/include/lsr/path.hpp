#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "lsr/geometry.hpp"
#include "lsr/plane.hpp"

namespace lsr {

/// 2D routing path: consecutive cells are 4-adjacent, first/last cells are the
/// instruction endpoints, no cell repeats.
using Path2D = std::vector<CellCoord>;

/// Face-connected voxel path in the space-time lattice.
struct Path3D {
    std::vector<VoxelCoord> voxels;

    bool empty() const { return voxels.empty(); }
    size_t size() const { return voxels.size(); }
    const VoxelCoord& front() const { return voxels.front(); }
    const VoxelCoord& back() const { return voxels.back(); }
    int max_t() const;
    bool operator==(const Path3D&) const = default;
};

/// Saturating 128-bit weight accumulator. Heights >= 127 saturate instead of
/// overflowing; comparisons then fall back to length and scan order.
struct Cost128 {
    unsigned __int128 v = 0;

    static Cost128 max() {
        Cost128 c;
        c.v = ~static_cast<unsigned __int128>(0);
        return c;
    }
    static Cost128 weight_for_height(int h) {
        if (h >= 127) return max();
        Cost128 c;
        c.v = static_cast<unsigned __int128>(1) << h;
        return c;
    }
    Cost128 operator+(Cost128 o) const {
        Cost128 r;
        r.v = v + o.v;
        if (r.v < v) r = max();  // saturate
        return r;
    }
    auto operator<=>(const Cost128& o) const {
        if (v < o.v) return std::strong_ordering::less;
        if (v > o.v) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    bool operator==(const Cost128&) const = default;
};

/// Comparison key for weighted searches: weight first, then cell count.
/// Remaining ties are broken by the deterministic expansion order of the search.
struct PathCost {
    Cost128 weight_sum;
    uint32_t length = 0;
    auto operator<=>(const PathCost&) const = default;
};

/// Per-cell first-free time layer used by the projection schedulers.
class HeightMap {
public:
    explicit HeightMap(const QubitPlane& plane) : width_(plane.width()), h_(size_t(plane.n_cells()), 0) {}
    HeightMap(int width, int height) : width_(width), h_(size_t(width) * height, 0) {}

    int at(CellCoord c) const { return h_[idx(c)]; }
    bool in_bounds(CellCoord c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && size_t(c.y) * width_ + c.x < h_.size();
    }
    void raise(CellCoord c, int v) {
        auto& e = h_[idx(c)];
        if (v > e) e = v;
    }
    void set(CellCoord c, int v) { h_[idx(c)] = v; }

private:
    size_t idx(CellCoord c) const { return size_t(c.y) * width_ + c.x; }
    int width_;
    std::vector<int> h_;
};

/// Lifted projection paths in move-height form: a 2D footprint plus the height
/// of every move between consecutive cells. Cell i occupies the contiguous
/// span between its two adjacent move heights; endpoints occupy one voxel.
struct LiftedPath {
    std::vector<CellCoord> cells;  // footprint, length k+1
    std::vector<int> move_h;       // per-edge move height, length k

    size_t n_moves() const { return move_h.size(); }
    Dir dir(size_t i) const;  // direction of move i

    Path3D to_path3d() const;

    /// Reconstructs the move-height form from a projection-shaped Path3D
    /// (single contiguous voxel run per footprint cell, one voxel at each end).
    static std::optional<LiftedPath> from_path3d(const Path3D& p);
};

/// Structural checks shared by the validators: 6-neighbour face adjacency,
/// no repeated voxel, first and last segments horizontal.
bool face_adjacent(const VoxelCoord& a, const VoxelCoord& b);
bool structurally_valid_path(const Path3D& p, std::string* why = nullptr);

}  // namespace lsr
