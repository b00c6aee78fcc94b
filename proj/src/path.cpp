#include "lsr/path.hpp"

#include <algorithm>
#include <unordered_set>

#include "lsr/errors.hpp"

namespace lsr {

int Path3D::max_t() const {
    int m = -1;
    for (const auto& v : voxels) m = std::max(m, v.t);
    return m;
}

Dir LiftedPath::dir(size_t i) const {
    CellCoord a = cells[i], b = cells[i + 1];
    if (b.x == a.x + 1) return Dir::E;
    if (b.x == a.x - 1) return Dir::W;
    if (b.y == a.y + 1) return Dir::S;
    return Dir::N;
}

Path3D LiftedPath::to_path3d() const {
    Path3D out;
    if (cells.empty()) return out;
    if (cells.size() == 1) {
        out.voxels.push_back({cells[0], 0});
        return out;
    }
    out.voxels.push_back({cells[0], move_h[0]});
    for (size_t i = 1; i + 1 < cells.size(); ++i) {
        int arrive = move_h[i - 1];
        int depart = move_h[i];
        out.voxels.push_back({cells[i], arrive});
        int stepv = depart > arrive ? 1 : -1;
        for (int t = arrive + stepv; (stepv > 0) ? t <= depart : t >= depart; t += stepv)
            out.voxels.push_back({cells[i], t});
    }
    out.voxels.push_back({cells.back(), move_h.back()});
    return out;
}

std::optional<LiftedPath> LiftedPath::from_path3d(const Path3D& p) {
    if (p.voxels.size() < 2) return std::nullopt;
    LiftedPath lp;
    lp.cells.push_back(p.voxels[0].cell);
    for (size_t i = 0; i + 1 < p.voxels.size(); ++i) {
        const auto& a = p.voxels[i];
        const auto& b = p.voxels[i + 1];
        if (!face_adjacent(a, b)) return std::nullopt;
        if (a.cell == b.cell) continue;  // vertical step stays within the cell's run
        lp.cells.push_back(b.cell);
        lp.move_h.push_back(a.t);
        if (a.t != b.t) return std::nullopt;
    }
    // Endpoints must be single voxels and each interior run contiguous; verify
    // by re-emitting and comparing.
    if (lp.to_path3d() != p) return std::nullopt;
    return lp;
}

bool face_adjacent(const VoxelCoord& a, const VoxelCoord& b) {
    int d = std::abs(a.cell.x - b.cell.x) + std::abs(a.cell.y - b.cell.y) + std::abs(a.t - b.t);
    return d == 1;
}

bool structurally_valid_path(const Path3D& p, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (p.voxels.empty()) return fail("empty path");
    std::unordered_set<VoxelCoord> seen;
    for (const auto& v : p.voxels) {
        if (v.t < 0) return fail("negative time layer");
        if (!seen.insert(v).second) return fail("repeated voxel");
    }
    for (size_t i = 0; i + 1 < p.voxels.size(); ++i)
        if (!face_adjacent(p.voxels[i], p.voxels[i + 1])) return fail("voxels not face-adjacent");
    if (p.voxels.size() >= 2) {
        if (p.voxels[0].cell == p.voxels[1].cell) return fail("first segment not horizontal");
        size_t n = p.voxels.size();
        if (p.voxels[n - 1].cell == p.voxels[n - 2].cell) return fail("last segment not horizontal");
    }
    return true;
}

}  // namespace lsr
