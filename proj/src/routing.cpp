#include "lsr/routing.hpp"

#include <algorithm>
#include <queue>

#include "lsr/errors.hpp"

namespace lsr {

namespace {

bool dir_allowed(Dir d, BoundaryType b) { return boundary_of(d) == b; }

struct Endpoints {
    CellCoord start, goal;
    BoundaryType start_b, goal_b;
};

Endpoints endpoints_of(const QubitPlane& plane, const Instruction& instr) {
    if (instr.many_body()) throw StateError("two-body kernel got a many-body instruction");
    Endpoints e;
    e.start = plane.cell_of(instr.q1());
    e.goal = plane.cell_of(instr.q2());
    e.start_b = instr.boundary_at(0);
    e.goal_b = instr.boundary_at(1);
    return e;
}

}  // namespace

std::optional<Path2D> find_shortest_path_2d(const QubitPlane& plane,
                                            const std::vector<uint8_t>& avail,
                                            const Instruction& instr) {
    const auto [start, goal, start_b, goal_b] = endpoints_of(plane, instr);
    const int n = plane.n_cells();
    const int is = plane.cell_index(start);
    const int ig = plane.cell_index(goal);
    if (!avail[is] || !avail[ig]) return std::nullopt;

    std::vector<int> parent(n, -2);  // -2 unseen, -1 source
    std::queue<int> q;
    parent[is] = -1;
    q.push(is);
    while (!q.empty()) {
        int ui = q.front();
        q.pop();
        CellCoord u = plane.cell_at(ui);
        for (Dir d : kAllDirs) {
            CellCoord v = step(u, d);
            if (!plane.in_bounds(v)) continue;
            int vi = plane.cell_index(v);
            if (parent[vi] != -2) continue;
            if (ui == is && !dir_allowed(d, start_b)) continue;
            if (vi == ig) {
                if (!dir_allowed(d, goal_b)) continue;
                parent[vi] = ui;
                Path2D path;
                for (int c = vi; c != -1; c = parent[c]) path.push_back(plane.cell_at(c));
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (plane.kind(v) != CellKind::Ancilla || !avail[vi]) continue;
            parent[vi] = ui;
            q.push(vi);
        }
    }
    return std::nullopt;
}

Path2D find_weighted_path_2d(const QubitPlane& plane, const HeightMap& H,
                             const Instruction& instr) {
    // Dijkstra over (cell, entry direction) states so that ties in
    // (weight, length) break toward fewer turns; straighter routes need fewer
    // kink adjustments later and pack better.
    const auto [start, goal, start_b, goal_b] = endpoints_of(plane, instr);
    const int n = plane.n_cells();
    const int is = plane.cell_index(start);
    const int ig = plane.cell_index(goal);

    struct Key {
        PathCost cost;
        uint32_t turns = 0;
        auto operator<=>(const Key&) const = default;
    };
    const Key unreached{{Cost128::max(), UINT32_MAX}, UINT32_MAX};
    std::vector<Key> dist(size_t(n) * 4, unreached);
    std::vector<int> parent(size_t(n) * 4, -2);
    std::vector<bool> done(size_t(n) * 4, false);

    // Weights are scaled by 2^-hmin: the argmin is unchanged and saturation
    // only matters once the terrain height RANGE exceeds 127 layers.
    int hmin = INT32_MAX;
    for (int i = 0; i < n; ++i) hmin = std::min(hmin, H.at(plane.cell_at(i)));
    auto weight = [&](CellCoord c) { return Cost128::weight_for_height(H.at(c) - hmin); };

    struct Entry {
        Key key;
        int state;
        bool operator>(const Entry& o) const {
            return key != o.key ? key > o.key : state > o.state;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;

    const Cost128 w_start = weight(start);
    for (Dir d : kAllDirs) {
        if (!dir_allowed(d, start_b)) continue;
        CellCoord v = step(start, d);
        if (!plane.in_bounds(v)) continue;
        int vi = plane.cell_index(v);
        bool is_goal = vi == ig;
        if (is_goal && !dir_allowed(d, goal_b)) continue;
        if (!is_goal && plane.kind(v) != CellKind::Ancilla) continue;
        int state = vi * 4 + int(d);
        Key key{{w_start + weight(v), 2}, 0};
        if (key < dist[state]) {
            dist[state] = key;
            parent[state] = -1;
            pq.push({key, state});
        }
    }

    int goal_state = -2;
    while (!pq.empty()) {
        auto [key, state] = pq.top();
        pq.pop();
        if (done[state]) continue;
        done[state] = true;
        int ui = state / 4;
        Dir din = static_cast<Dir>(state % 4);
        if (ui == ig) {
            goal_state = state;
            break;
        }
        CellCoord u = plane.cell_at(ui);
        for (Dir d : kAllDirs) {
            CellCoord v = step(u, d);
            if (!plane.in_bounds(v)) continue;
            int vi = plane.cell_index(v);
            bool is_goal = vi == ig;
            if (is_goal && !dir_allowed(d, goal_b)) continue;
            if (!is_goal && plane.kind(v) != CellKind::Ancilla) continue;
            int next = vi * 4 + int(d);
            if (done[next]) continue;
            Key cand{{key.cost.weight_sum + weight(v), key.cost.length + 1},
                     key.turns + (d != din ? 1 : 0)};
            if (cand < dist[next]) {
                dist[next] = cand;
                parent[next] = state;
                pq.push({cand, next});
            }
        }
    }
    if (goal_state < 0)
        throw RoutingError("no boundary-compatible route between " + instr.q1() + " and " +
                           instr.q2());
    Path2D path;
    for (int s = goal_state; s != -1; s = parent[s]) path.push_back(plane.cell_at(s / 4));
    path.push_back(start);
    std::reverse(path.begin(), path.end());
    return path;
}

Path3D lift_path(const Path2D& p, const HeightMap& H) {
    if (p.size() < 2) throw StateError("cannot lift a path with fewer than 2 cells");
    LiftedPath lp;
    lp.cells = p;
    lp.move_h.resize(p.size() - 1);
    for (size_t i = 0; i + 1 < p.size(); ++i)
        lp.move_h[i] = std::max(H.at(p[i]), H.at(p[i + 1]));
    return lp.to_path3d();
}

namespace {

// Shared scaffolding of the two 3D searches. The search space is bounded by
// one fully-free layer above the current occupancy top: any route that exists
// in unbounded space can be rerouted through that layer.
struct Search3D {
    const QubitPlane& plane;
    const Occupancy3D& occ;
    const Instruction& instr;
    CellCoord start_cell, goal_cell;
    BoundaryType start_b, goal_b;
    int top;  // inclusive max layer
    int n;

    Search3D(const QubitPlane& pl, const Occupancy3D& oc, const Instruction& in)
        : plane(pl), occ(oc), instr(in) {
        auto e = endpoints_of(pl, in);
        start_cell = e.start;
        goal_cell = e.goal;
        start_b = e.start_b;
        goal_b = e.goal_b;
        top = occ.layer_count();
        n = pl.n_cells();
    }

    int vindex(CellCoord c, int t) const { return t * n + plane.cell_index(c); }
    VoxelCoord voxel_at(int vi) const { return {plane.cell_at(vi % n), vi / n}; }

    int lowest_free(CellCoord c, int min_t) const {
        int t = min_t;
        while (occ.occupied({c, t})) ++t;
        return t;
    }

    // A voxel usable as path interior: unoccupied ancilla space within bounds.
    bool usable(VoxelCoord v) const {
        if (v.t < 0 || v.t > top) return false;
        if (plane.kind(v.cell) != CellKind::Ancilla) return false;
        return !occ.occupied(v);
    }

    bool edge_ok(int from_vi, VoxelCoord to, int start_vi, int goal_vi, Dir d,
                 bool horizontal) const {
        if (horizontal) {
            if (from_vi == start_vi && !dir_allowed(d, start_b)) return false;
            if (vindex(to.cell, to.t) == goal_vi) return dir_allowed(d, goal_b);
        } else {
            // Endpoints attach horizontally; the data pillars are otherwise
            // off-limits, so vertical moves never touch them.
            if (from_vi == start_vi || vindex(to.cell, to.t) == goal_vi) return false;
        }
        return usable(to);
    }

    Path3D reconstruct(const std::vector<int>& parent, int goal_vi) const {
        Path3D path;
        for (int c = goal_vi; c != -1; c = parent[c]) path.voxels.push_back(voxel_at(c));
        std::reverse(path.voxels.begin(), path.voxels.end());
        return path;
    }
};

template <typename Fn>
Path3D search_with_rising_endpoints(const QubitPlane& plane, const Occupancy3D& occ,
                                    const Instruction& instr, Fn&& attempt) {
    Search3D s(plane, occ, instr);
    int min_s = occ.frontier(instr.q1());
    int min_g = occ.frontier(instr.q2());
    for (int guard = 0; guard < 4 * (s.top + 2) + 8; ++guard) {
        int ts = s.lowest_free(s.start_cell, min_s);
        int tg = s.lowest_free(s.goal_cell, min_g);
        Path3D p = attempt(s, ts, tg);
        if (!p.empty()) return p;
        // Disconnected: raise the lower endpoint and retry.
        if (ts <= tg)
            min_s = ts + 1;
        else
            min_g = tg + 1;
    }
    throw InternalError("3D search failed to terminate");
}

}  // namespace

Path3D find_shortest_path_3d(const QubitPlane& plane, const Occupancy3D& occ,
                             const Instruction& instr) {
    return search_with_rising_endpoints(
        plane, occ, instr, [&](const Search3D& s, int ts, int tg) -> Path3D {
            const int total = (s.top + 1) * s.n;
            std::vector<int> parent(total, -2);
            const int svi = s.vindex(s.start_cell, ts);
            const int gvi = s.vindex(s.goal_cell, tg);
            std::queue<int> q;
            parent[svi] = -1;
            q.push(svi);
            while (!q.empty()) {
                int ui = q.front();
                q.pop();
                VoxelCoord u = s.voxel_at(ui);
                // Horizontal neighbours first (N,E,S,W), then Up, Down.
                for (Dir d : kAllDirs) {
                    VoxelCoord v{step(u.cell, d), u.t};
                    if (!s.plane.in_bounds(v.cell)) continue;
                    int vi = s.vindex(v.cell, v.t);
                    if (parent[vi] != -2) continue;
                    if (!s.edge_ok(ui, v, svi, gvi, d, true)) continue;
                    parent[vi] = ui;
                    if (vi == gvi) return s.reconstruct(parent, gvi);
                    q.push(vi);
                }
                for (int dt : {+1, -1}) {
                    VoxelCoord v{u.cell, u.t + dt};
                    if (v.t < 0 || v.t > s.top) continue;
                    int vi = s.vindex(v.cell, v.t);
                    if (parent[vi] != -2) continue;
                    if (!s.edge_ok(ui, v, svi, gvi, Dir::N, false)) continue;
                    parent[vi] = ui;
                    if (vi == gvi) return s.reconstruct(parent, gvi);
                    q.push(vi);
                }
            }
            return {};
        });
}

Path3D find_weighted_path_3d(const QubitPlane& plane, const Occupancy3D& occ,
                             const Instruction& instr) {
    return search_with_rising_endpoints(
        plane, occ, instr, [&](const Search3D& s, int ts, int tg) -> Path3D {
            const int total = (s.top + 1) * s.n;
            std::vector<PathCost> dist(total, {Cost128::max(), UINT32_MAX});
            std::vector<int> parent(total, -2);
            std::vector<bool> done(total, false);
            const int svi = s.vindex(s.start_cell, ts);
            const int gvi = s.vindex(s.goal_cell, tg);

            struct Entry {
                PathCost cost;
                int vi;
                bool operator>(const Entry& o) const {
                    return cost != o.cost ? cost > o.cost : vi > o.vi;
                }
            };
            std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
            dist[svi] = {Cost128::weight_for_height(ts), 1};
            parent[svi] = -1;
            pq.push({dist[svi], svi});
            while (!pq.empty()) {
                auto [cost, ui] = pq.top();
                pq.pop();
                if (done[ui]) continue;
                done[ui] = true;
                if (ui == gvi) return s.reconstruct(parent, gvi);
                VoxelCoord u = s.voxel_at(ui);
                auto relax = [&](VoxelCoord v, Dir d, bool horizontal) {
                    if (!s.plane.in_bounds(v.cell) || v.t < 0 || v.t > s.top) return;
                    int vi = s.vindex(v.cell, v.t);
                    if (done[vi]) return;
                    if (!s.edge_ok(ui, v, svi, gvi, d, horizontal)) return;
                    PathCost cand{cost.weight_sum + Cost128::weight_for_height(v.t),
                                  cost.length + 1};
                    if (cand < dist[vi]) {
                        dist[vi] = cand;
                        parent[vi] = ui;
                        pq.push({cand, vi});
                    }
                };
                for (Dir d : kAllDirs) relax({step(u.cell, d), u.t}, d, true);
                relax({u.cell, u.t + 1}, Dir::N, false);
                relax({u.cell, u.t - 1}, Dir::N, false);
            }
            return {};
        });
}

}  // namespace lsr
