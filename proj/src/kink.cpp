#include "lsr/kink.hpp"

#include <algorithm>
#include <unordered_set>

#include "lsr/errors.hpp"

namespace lsr {

namespace {

std::optional<Dir> move_dir(const VoxelCoord& a, const VoxelCoord& b) {
    if (a.t != b.t) return std::nullopt;
    if (b.cell.x == a.cell.x + 1) return Dir::E;
    if (b.cell.x == a.cell.x - 1) return Dir::W;
    if (b.cell.y == a.cell.y + 1) return Dir::S;
    return Dir::N;
}

}  // namespace

KinkCount count_kinks(const Path3D& path) {
    KinkCount kc;
    std::optional<Dir> before;  // horizontal direction entering the current vertical run
    bool in_run = false;
    for (size_t i = 0; i + 1 < path.voxels.size(); ++i) {
        auto d = move_dir(path.voxels[i], path.voxels[i + 1]);
        if (!d) {
            in_run = true;
            continue;
        }
        if (in_run) {
            if (before && perpendicular(*before, *d)) ++kc.count;
            in_run = false;
        }
        before = d;
    }
    return kc;
}

Parity required_parity(Basis b) { return b == Basis::CNOT ? Parity::Odd : Parity::Even; }

namespace {

struct Profile {
    LiftedPath lp;

    bool corner_at(size_t i) const {  // interior cell i turns 90 degrees
        return perpendicular(lp.dir(i - 1), lp.dir(i));
    }
    bool run_at(size_t i) const { return lp.move_h[i - 1] != lp.move_h[i]; }
    bool kink_at(size_t i) const { return corner_at(i) && run_at(i); }
    Parity parity() const {
        int k = 0;
        for (size_t i = 1; i + 1 < lp.cells.size(); ++i)
            if (kink_at(i)) ++k;
        return parity_of(k);
    }
};

}  // namespace

Path3D fix_kink_parity(const Path3D& path, const HeightMap& H, FixScan scan) {
    if (scan == FixScan::FromEnd) {
        Path3D rev;
        rev.voxels.assign(path.voxels.rbegin(), path.voxels.rend());
        Path3D fixed = fix_kink_parity(rev, H, FixScan::FromStart);
        Path3D out;
        out.voxels.assign(fixed.voxels.rbegin(), fixed.voxels.rend());
        return out;
    }
    (void)H;  // the raises stay above the input path, which is above the terrain
    auto parsed = LiftedPath::from_path3d(path);
    if (!parsed) throw StateError("fix_kink_parity expects a lifted projection path");
    Profile p{*parsed};
    const size_t k = p.lp.cells.size() - 1;

    size_t corner = 0;
    for (size_t i = 1; i < k; ++i) {
        if (p.corner_at(i)) {
            corner = i;
            break;
        }
    }
    if (corner == 0) throw NotApplicableError("path has no 90-degree corner");

    const Parity before = p.parity();
    if (!p.kink_at(corner)) {
        // Raise the incoming move one layer; everything between the start and
        // this corner is straight, so only this corner gains a kink.
        p.lp.move_h[corner - 1] += 1;
    } else {
        // Align the lower move with the higher one to erase the kink. This can
        // create or erase a neighbouring kink; recount and fall back to the
        // lift step on the now-flat corner.
        if (p.lp.move_h[corner - 1] > p.lp.move_h[corner])
            p.lp.move_h[corner] = p.lp.move_h[corner - 1];
        else
            p.lp.move_h[corner - 1] = p.lp.move_h[corner];
        if (p.parity() == before) p.lp.move_h[corner - 1] += 1;
    }
    if (p.parity() == before) throw InternalError("kink parity was not flipped");
    return p.lp.to_path3d();
}

std::optional<Path3D> twist_straight_path(const Path3D& path,
                                          const std::function<bool(VoxelCoord)>& is_free) {
    auto parsed = LiftedPath::from_path3d(path);
    if (!parsed) throw StateError("twist expects a lifted projection path");
    Profile p{*parsed};
    const size_t k = p.lp.cells.size() - 1;
    for (size_t i = 1; i < k; ++i)
        if (p.corner_at(i)) throw StateError("twist expects a corner-free path");

    const Dir d = p.lp.dir(0);
    for (size_t xi = 1; xi < k; ++xi) {
        if (p.lp.move_h[xi - 1] != p.lp.move_h[xi]) continue;  // twisting here would bend a run
        const CellCoord x = p.lp.cells[xi];
        const CellCoord b = p.lp.cells[xi + 1];
        const int h = p.lp.move_h[xi];
        const int hb = (xi + 1 < k) ? p.lp.move_h[xi + 1] : h;
        const int g = std::max(h, hb) + 1;
        for (Dir lat : {left_of(d), right_of(d)}) {
            const CellCoord s = step(x, lat);
            const CellCoord sb = step(b, lat);
            bool clear = true;
            for (const CellCoord& c : p.lp.cells)
                if (c == s || c == sb) clear = false;
            if (!clear) continue;

            LiftedPath out;
            out.cells.assign(p.lp.cells.begin(), p.lp.cells.begin() + xi + 1);
            out.cells.push_back(s);
            out.cells.push_back(sb);
            out.cells.insert(out.cells.end(), p.lp.cells.begin() + xi + 1, p.lp.cells.end());
            out.move_h.assign(p.lp.move_h.begin(), p.lp.move_h.begin() + xi);
            out.move_h.push_back(h);  // x -> s
            out.move_h.push_back(g);  // s -> sb, climb at s makes the kink
            out.move_h.push_back(g);  // sb -> b
            if (xi + 1 < k) {
                out.move_h.push_back(g);  // b -> next stays level, flat corner at b
                out.move_h.insert(out.move_h.end(), p.lp.move_h.begin() + xi + 2,
                                  p.lp.move_h.end());
            }
            Path3D twisted = out.to_path3d();
            std::unordered_set<VoxelCoord> original(path.voxels.begin(), path.voxels.end());
            for (const auto& v : twisted.voxels)
                if (!original.count(v) && !is_free(v)) clear = false;
            if (!clear) continue;
            return twisted;
        }
    }
    return std::nullopt;
}

std::optional<Path3D> twist_straight_path(const Path3D& path, const HeightMap& H) {
    return twist_straight_path(
        path, [&H](VoxelCoord v) { return H.in_bounds(v.cell) && v.t >= H.at(v.cell); });
}

std::optional<Path3D> twist_straight_path(const Path3D& path, const Occupancy3D& occ) {
    return twist_straight_path(path, [&occ](VoxelCoord v) { return !occ.occupied(v); });
}

}  // namespace lsr
