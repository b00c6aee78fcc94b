#include "lsr/manybody.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "lsr/errors.hpp"
#include "lsr/routing.hpp"
#include "lsr/verify.hpp"

namespace lsr {

namespace {

std::string voxel_str(const VoxelCoord& v) {
    return "(" + std::to_string(v.cell.x) + "," + std::to_string(v.cell.y) + "," +
           std::to_string(v.t) + ")";
}

}  // namespace

int TreeAnalysis::voxel_id(const VoxelCoord& v) const {
    for (size_t i = 0; i < voxels.size(); ++i)
        if (voxels[i] == v) return int(i);
    return -1;
}

bool TreeAnalysis::connected() const {
    if (voxels.empty()) return false;
    std::vector<bool> seen(voxels.size(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    size_t count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                q.push(v);
            }
    }
    return count == voxels.size();
}

bool TreeAnalysis::acyclic() const {
    size_t edges = 0;
    for (const auto& a : adj) edges += a.size();
    return edges / 2 == voxels.size() - 1;
}

TreeAnalysis analyze_tree(const RoutingTree& tree) {
    TreeAnalysis ta;
    ta.voxels = tree.voxels;
    const size_t n = ta.voxels.size();
    std::unordered_map<VoxelCoord, int> index;
    for (size_t i = 0; i < n; ++i) index.emplace(ta.voxels[i], int(i));

    ta.adj.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const auto& v = ta.voxels[i];
        auto probe = [&](VoxelCoord w) {
            auto it = index.find(w);
            if (it != index.end()) ta.adj[i].push_back(it->second);
        };
        for (Dir d : kAllDirs) probe({step(v.cell, d), v.t});
        probe({v.cell, v.t + 1});
        probe({v.cell, v.t - 1});
    }
    for (size_t i = 0; i < n; ++i) {
        if (ta.adj[i].size() == 1) ta.leaves.push_back(int(i));
        if (ta.adj[i].size() > 2) ta.forks.push_back(int(i));
    }

    // Segments: connected components of same-beat horizontal adjacency,
    // excluding idle run interiors (voxels with only two vertical neighbours).
    auto horizontal_degree = [&](size_t i) {
        int deg = 0;
        for (int j : ta.adj[i])
            if (ta.voxels[j].t == ta.voxels[i].t) ++deg;
        return deg;
    };
    auto vertical_degree = [&](size_t i) {
        int deg = 0;
        for (int j : ta.adj[i])
            if (ta.voxels[j].t != ta.voxels[i].t) ++deg;
        return deg;
    };
    ta.segment_of.assign(n, -1);
    for (size_t i = 0; i < n; ++i) {
        if (ta.segment_of[i] != -1) continue;
        if (horizontal_degree(i) == 0 && vertical_degree(i) == 2) continue;  // idle
        int seg = ta.n_segments++;
        ta.segment_time.push_back(ta.voxels[i].t);
        std::queue<int> q;
        q.push(int(i));
        ta.segment_of[i] = seg;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : ta.adj[u]) {
                if (ta.voxels[v].t != ta.voxels[u].t || ta.segment_of[v] != -1) continue;
                ta.segment_of[v] = seg;
                q.push(v);
            }
        }
    }

    // Vertical connectors: maximal same-cell runs of length >= 2.
    std::unordered_map<uint64_t, std::vector<int>> by_cell;
    for (size_t i = 0; i < n; ++i) {
        uint64_t key = (uint64_t(uint32_t(ta.voxels[i].cell.x)) << 32) |
                       uint32_t(ta.voxels[i].cell.y);
        by_cell[key].push_back(int(i));
    }
    for (auto& [key, ids] : by_cell) {
        std::sort(ids.begin(), ids.end(),
                  [&](int a, int b) { return ta.voxels[a].t < ta.voxels[b].t; });
        size_t s = 0;
        while (s < ids.size()) {
            size_t e = s;
            while (e + 1 < ids.size() &&
                   ta.voxels[ids[e + 1]].t == ta.voxels[ids[e]].t + 1)
                ++e;
            if (e > s) {
                TreeAnalysis::Connector c;
                c.cell = ta.voxels[ids[s]].cell;
                c.t_lo = ta.voxels[ids[s]].t;
                c.t_hi = ta.voxels[ids[e]].t;
                c.seg_lo = ta.segment_of[ids[s]];
                c.seg_hi = ta.segment_of[ids[e]];
                auto horiz_dir = [&](int id) -> std::optional<Dir> {
                    for (int j : ta.adj[id])
                        if (ta.voxels[j].t == ta.voxels[id].t)
                            return dir_between(ta.voxels[id].cell, ta.voxels[j].cell);
                    return std::nullopt;
                };
                auto d_lo = horiz_dir(ids[s]);
                auto d_hi = horiz_dir(ids[e]);
                c.kink = d_lo && d_hi && perpendicular(*d_lo, *d_hi);
                ta.connectors.push_back(c);
            }
            s = e + 1;
        }
    }
    return ta;
}

std::vector<Parity> classify_segments(const TreeAnalysis& ta, int pivot_leaf_voxel) {
    if (pivot_leaf_voxel < 0 || size_t(pivot_leaf_voxel) >= ta.voxels.size())
        throw ConditionError("pivot voxel out of range");
    int pivot_seg = ta.segment_of[pivot_leaf_voxel];
    if (pivot_seg < 0) throw ConditionError("pivot leaf is not part of a segment");

    std::vector<std::vector<std::pair<int, bool>>> seg_adj(ta.n_segments);  // (other, kink)
    for (const auto& c : ta.connectors) {
        if (c.seg_lo < 0 || c.seg_hi < 0)
            throw ConditionError("connector junction outside any segment");
        seg_adj[c.seg_lo].push_back({c.seg_hi, c.kink});
        seg_adj[c.seg_hi].push_back({c.seg_lo, c.kink});
    }
    std::vector<int> parity(ta.n_segments, -1);
    std::queue<int> q;
    parity[pivot_seg] = 0;
    q.push(pivot_seg);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, kink] : seg_adj[u]) {
            int p = parity[u] ^ (kink ? 1 : 0);
            if (parity[v] == -1) {
                parity[v] = p;
                q.push(v);
            }
        }
    }
    std::vector<Parity> out(ta.n_segments, Parity::Even);
    for (int s = 0; s < ta.n_segments; ++s) {
        if (parity[s] == -1) throw ConditionError("segment graph is not connected");
        out[s] = parity[s] ? Parity::Odd : Parity::Even;
    }
    return out;
}

std::string TreeConditionReport::describe() const {
    if (pass()) return "all conditions satisfied";
    std::string s;
    if (!tree_shaped) s += "[1 tree-shaped] ";
    if (!no_temporal_fork) s += "[2 no-temporal-fork] ";
    if (!no_leaf_in_odd) s += "[3 no-leaf-in-odd-segment] ";
    if (!no_fork_in_odd) s += "[4 no-fork-in-odd-segment] ";
    if (witness) s += "witness " + voxel_str(*witness);
    if (!detail.empty()) s += " (" + detail + ")";
    return s;
}

TreeConditionReport check_tree_conditions(const RoutingTree& tree) {
    TreeConditionReport rep;
    if (tree.voxels.empty()) {
        rep.tree_shaped = false;
        rep.detail = "empty routing";
        return rep;
    }
    TreeAnalysis ta = analyze_tree(tree);

    // Condition 1: connected, loop-free, and leaves <-> targets.
    if (!ta.connected()) {
        rep.tree_shaped = false;
        rep.detail = "routing is disconnected";
    } else if (!ta.acyclic()) {
        rep.tree_shaped = false;
        rep.detail = "routing contains a loop";
    } else if (!tree.targets.empty()) {
        std::unordered_set<CellCoord> targets(tree.targets.begin(), tree.targets.end());
        std::unordered_set<CellCoord> leaf_cells;
        for (int l : ta.leaves) {
            CellCoord c = ta.voxels[l].cell;
            if (!targets.count(c)) {
                rep.tree_shaped = false;
                rep.witness = ta.voxels[l];
                rep.detail = "leaf not on a target cell";
                break;
            }
            if (!leaf_cells.insert(c).second) {
                rep.tree_shaped = false;
                rep.witness = ta.voxels[l];
                rep.detail = "target cell holds two leaves";
                break;
            }
        }
        if (rep.tree_shaped && leaf_cells.size() != targets.size()) {
            rep.tree_shaped = false;
            rep.detail = "a target cell has no leaf";
        }
    }

    // Condition 2: no voxel above or below a fork voxel.
    for (int f : ta.forks) {
        for (int j : ta.adj[f]) {
            if (ta.voxels[j].t != ta.voxels[f].t) {
                rep.no_temporal_fork = false;
                rep.witness = ta.voxels[f];
                break;
            }
        }
        if (!rep.no_temporal_fork) break;
    }

    if (!rep.tree_shaped || !rep.no_temporal_fork) return rep;
    if (ta.leaves.empty()) return rep;

    // Conditions 3-4 need the segment classification; pivot choice is
    // arbitrary, take the lexicographically smallest leaf voxel.
    int pivot = ta.leaves[0];
    for (int l : ta.leaves)
        if (ta.voxels[l] < ta.voxels[pivot]) pivot = l;
    std::vector<Parity> parity;
    try {
        parity = classify_segments(ta, pivot);
    } catch (const ConditionError& e) {
        rep.tree_shaped = false;
        rep.detail = e.what();
        return rep;
    }
    for (int l : ta.leaves) {
        if (parity[ta.segment_of[l]] == Parity::Odd) {
            rep.no_leaf_in_odd = false;
            rep.witness = ta.voxels[l];
            break;
        }
    }
    for (int f : ta.forks) {
        if (parity[ta.segment_of[f]] == Parity::Odd) {
            rep.no_fork_in_odd = false;
            rep.witness = ta.voxels[f];
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Many-body Dijkstra projection
// ---------------------------------------------------------------------------

namespace {

struct GrowState {
    std::vector<VoxelCoord> voxels;
    std::unordered_set<VoxelCoord> voxel_set;
    std::unordered_map<uint64_t, int> top_at;  // cell key -> highest voxel t

    static uint64_t cell_key(CellCoord c) {
        return (uint64_t(uint32_t(c.x)) << 32) | uint32_t(c.y);
    }
    void add(const VoxelCoord& v) {
        if (!voxel_set.insert(v).second) return;
        voxels.push_back(v);
        auto [it, fresh] = top_at.emplace(cell_key(v.cell), v.t);
        if (!fresh && v.t > it->second) it->second = v.t;
    }
    bool contains(const VoxelCoord& v) const { return voxel_set.count(v) > 0; }
    int top(CellCoord c) const {
        auto it = top_at.find(cell_key(c));
        return it == top_at.end() ? -1 : it->second;
    }
};

// Terrain for branch cells in transit: above the caller heights, two layers
// above any tree voxel in the same column and one layer above tree voxels in
// neighbouring columns, so a passing branch never shares a face with the tree.
int pass_height(const QubitPlane& plane, const HeightMap& H, const GrowState& gs, CellCoord c) {
    int h = H.at(c);
    if (gs.top(c) >= 0) h = std::max(h, gs.top(c) + 2);
    for (Dir d : kAllDirs) {
        CellCoord nb = step(c, d);
        if (plane.in_bounds(nb)) h = std::max(h, gs.top(nb) + 1);
    }
    return h;
}

// Terrain for the branch's final cell, which deliberately touches the tree at
// the attach edge: only its own column constrains it.
int attach_height(const HeightMap& H, const GrowState& gs, CellCoord c) {
    return std::max(H.at(c), gs.top(c) + 1);
}

Parity branch_parity(const Path3D& p) { return parity_of(count_kinks(p).count); }

struct AttachCandidate {
    CellCoord nb;   // last branch cell
    CellCoord c;    // even-segment cell attached to
    int t = 0;      // beat of the segment voxel
    PathCost cost;  // weighted distance Q_i -> nb
};

}  // namespace

namespace {

RoutingTree grow_tree(const std::vector<std::string>& qubits, const QubitPlane& plane,
                      const HeightMap& H, Basis basis) {
    const BoundaryType bnd = basis == Basis::XX ? BoundaryType::X : BoundaryType::Z;

    RoutingTree tree;
    for (const auto& q : qubits) tree.targets.push_back(plane.cell_of(q));

    // Step 1: two-body projection between Q1 and Q2, adjusted to even parity.
    Instruction seed(qubits[0], qubits[1], basis);
    Path2D p2 = find_weighted_path_2d(plane, H, seed);
    Path3D p = lift_path(p2, H);
    if (branch_parity(p) == Parity::Odd) p = fix_kink_parity(p, H);

    GrowState gs;
    for (const auto& v : p.voxels) gs.add(v);

    for (size_t qi = 2; qi < qubits.size(); ++qi) {
        const CellCoord q_cell = plane.cell_of(qubits[qi]);

        // Classify the current tree to find the even-segment voxels.
        RoutingTree cur;
        cur.voxels = gs.voxels;
        TreeAnalysis ta = analyze_tree(cur);
        int pivot = -1;
        for (int l : ta.leaves)
            if (ta.voxels[l].cell == tree.targets[0]) pivot = l;
        if (pivot < 0) throw InternalError("lost the Q1 leaf while growing the tree");
        std::vector<Parity> parity = classify_segments(ta, pivot);

        // Collect candidate attach edges nb -> c into the even segments.
        std::vector<AttachCandidate> cands;
        for (size_t i = 0; i < ta.voxels.size(); ++i) {
            int seg = ta.segment_of[i];
            if (seg < 0 || parity[seg] != Parity::Even) continue;
            if (plane.kind(ta.voxels[i].cell) != CellKind::Ancilla) continue;  // keep leaves leaves
            bool has_vertical = false;
            for (int j : ta.adj[i])
                if (ta.voxels[j].t != ta.voxels[i].t) has_vertical = true;
            if (has_vertical) continue;  // attaching here would fork a connector
            // Boundary types only constrain the target-leaf edges; joining the
            // merged ancilla region is direction-free (forks already imply
            // side joins), so any horizontal neighbour can host the attach.
            const VoxelCoord& v = ta.voxels[i];
            for (Dir d : kAllDirs) {
                CellCoord nb = step(v.cell, d);
                if (!plane.in_bounds(nb)) continue;
                if (nb == q_cell) {  // direct leaf attach, handled first below
                    cands.push_back({nb, v.cell, v.t, {}});
                    continue;
                }
                if (plane.kind(nb) != CellKind::Ancilla) continue;
                if (v.t < attach_height(H, gs, nb)) continue;  // cannot land beside it
                cands.push_back({nb, v.cell, v.t, {}});
            }
        }
        // A target sitting right next to an even segment can attach without
        // any branch at all: its leaf voxel joins across its own boundary.
        bool attached = false;
        {
            std::vector<AttachCandidate> direct;
            for (const auto& cand : cands) {
                if (cand.nb != q_cell) continue;
                if (boundary_of(dir_between(q_cell, cand.c)) != bnd) continue;
                if (cand.t < H.at(q_cell)) continue;
                direct.push_back(cand);
            }
            std::sort(direct.begin(), direct.end(),
                      [](const AttachCandidate& a, const AttachCandidate& b) {
                          return a.t != b.t ? a.t < b.t : a.c < b.c;
                      });
            for (const auto& cand : direct) {
                VoxelCoord leaf{q_cell, cand.t};
                if (gs.contains(leaf)) continue;
                RoutingTree merged;
                merged.voxels = gs.voxels;
                merged.voxels.push_back(leaf);
                for (size_t j = 0; j <= qi; ++j)
                    merged.targets.push_back(plane.cell_of(qubits[j]));
                if (!check_tree_conditions(merged).pass()) continue;
                gs.add(leaf);
                attached = true;
                break;
            }
        }
        if (attached) continue;
        cands.erase(std::remove_if(cands.begin(), cands.end(),
                                   [&](const AttachCandidate& c) { return c.nb == q_cell; }),
                    cands.end());

        if (cands.empty())
            throw RoutingError("no attachable even-segment boundary for qubit " + qubits[qi]);

        // Weighted distances from Q_i over the effective terrain.
        const int n = plane.n_cells();
        std::vector<PathCost> dist(n, {Cost128::max(), UINT32_MAX});
        std::vector<int> parent(n, -2);
        std::vector<bool> done(n, false);
        struct Entry {
            PathCost cost;
            int cell;
            bool operator>(const Entry& o) const {
                return cost != o.cost ? cost > o.cost : cell > o.cell;
            }
        };
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
        int hmin = INT32_MAX;
        for (int i = 0; i < n; ++i)
            hmin = std::min(hmin, pass_height(plane, H, gs, plane.cell_at(i)));
        const int isrc = plane.cell_index(q_cell);
        dist[isrc] = {Cost128::weight_for_height(pass_height(plane, H, gs, q_cell) - hmin), 1};
        parent[isrc] = -1;
        pq.push({dist[isrc], isrc});
        while (!pq.empty()) {
            auto [cost, ui] = pq.top();
            pq.pop();
            if (done[ui]) continue;
            done[ui] = true;
            CellCoord u = plane.cell_at(ui);
            for (Dir d : kAllDirs) {
                CellCoord v = step(u, d);
                if (!plane.in_bounds(v)) continue;
                int vi = plane.cell_index(v);
                if (done[vi]) continue;
                if (ui == isrc && boundary_of(d) != bnd) continue;
                if (plane.kind(v) != CellKind::Ancilla) continue;
                PathCost cand{cost.weight_sum + Cost128::weight_for_height(
                                                  pass_height(plane, H, gs, v) - hmin),
                              cost.length + 1};
                if (cand < dist[vi]) {
                    dist[vi] = cand;
                    parent[vi] = ui;
                    pq.push({cand, vi});
                }
            }
        }

        for (auto& cand : cands) cand.cost = dist[plane.cell_index(cand.nb)];
        std::sort(cands.begin(), cands.end(), [](const AttachCandidate& a, const AttachCandidate& b) {
            if (a.cost != b.cost) return a.cost < b.cost;
            if (a.t != b.t) return a.t < b.t;
            if (a.c != b.c) return a.c < b.c;
            return a.nb < b.nb;
        });

        for (const auto& cand : cands) {
            if (parent[plane.cell_index(cand.nb)] == -2) continue;  // unreachable
            // Reconstruct footprint Q_i .. nb and append the attach move.
            std::vector<CellCoord> cells;
            for (int c = plane.cell_index(cand.nb); c != -1; c = parent[c])
                cells.push_back(plane.cell_at(c));
            std::reverse(cells.begin(), cells.end());
            // The footprint may revisit tree cells (including the attach cell)
            // at buffered heights; overlap and contact checks below operate on
            // voxels, which is what actually matters.
            cells.push_back(cand.c);

            LiftedPath lp;
            lp.cells = cells;
            lp.move_h.resize(cells.size() - 1);
            // Transit moves over buffered terrain. The arrival at nb only has
            // to clear nb's own column and stay at or above the attach beat,
            // so the final run can descend onto the segment.
            for (size_t j = 0; j + 3 < cells.size(); ++j)
                lp.move_h[j] = std::max(pass_height(plane, H, gs, cells[j]),
                                        pass_height(plane, H, gs, cells[j + 1]));
            const size_t jnb = cells.size() - 3;  // move prev -> nb
            lp.move_h[jnb] = std::max({pass_height(plane, H, gs, cells[jnb]),
                                       attach_height(H, gs, cells[jnb + 1]), cand.t});
            lp.move_h.back() = cand.t;  // pinned to the segment's beat
            Path3D branch = lp.to_path3d();

            if (branch_parity(branch) == Parity::Odd) {
                HeightMap eff(plane);
                for (int y = 0; y < plane.height(); ++y)
                    for (int x = 0; x < plane.width(); ++x)
                        eff.set({x, y}, std::min(attach_height(H, gs, {x, y}),
                                                 pass_height(plane, H, gs, {x, y})));
                try {
                    branch = fix_kink_parity(branch, eff, FixScan::FromStart);
                } catch (const NotApplicableError&) {
                    continue;
                }
                // The attach height is pinned; reject fixes that moved it.
                if (branch.voxels.back() != VoxelCoord{cand.c, cand.t}) continue;
                if (branch_parity(branch) == Parity::Odd) continue;
            }

            // New voxels must not overlap the tree, and the merged network
            // must stay a valid tree (this also forbids the branch grazing
            // the tree or itself anywhere except the attach edge).
            std::vector<VoxelCoord> fresh(branch.voxels.begin(), branch.voxels.end() - 1);
            bool overlap = false;
            for (const auto& v : fresh)
                if (gs.contains(v)) overlap = true;
            if (overlap) continue;

            RoutingTree merged;
            merged.voxels = gs.voxels;
            merged.voxels.insert(merged.voxels.end(), fresh.begin(), fresh.end());
            for (size_t j = 0; j <= qi; ++j) merged.targets.push_back(plane.cell_of(qubits[j]));
            if (!check_tree_conditions(merged).pass()) continue;

            for (const auto& v : fresh) gs.add(v);
            attached = true;
            break;
        }
        if (!attached)
            throw RoutingError("attachment point unreachable for qubit " + qubits[qi]);
    }

    tree.voxels = gs.voxels;
    return tree;
}

}  // namespace

RoutingTree route_manybody_projection(const std::vector<std::string>& qubits,
                                      const QubitPlane& plane, HeightMap& H, Basis basis) {
    if (qubits.size() < 2) throw StateError("many-body routing needs at least 2 qubits");
    if (basis == Basis::CNOT) throw StateError("many-body routing is for XX/ZZ measurements");
    const size_t m = qubits.size();

    // Growth can wedge on cramped layouts depending on which pair seeds the
    // tree; retry over base-pair orderings before giving up.
    std::vector<std::vector<std::string>> orderings;
    orderings.push_back(qubits);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            if (i == j || (i == 0 && j == 1)) continue;
            std::vector<std::string> order{qubits[i], qubits[j]};
            for (size_t k = 0; k < m; ++k)
                if (k != i && k != j) order.push_back(qubits[k]);
            orderings.push_back(std::move(order));
        }
    }

    std::string last_error;
    for (const auto& order : orderings) {
        RoutingTree tree;
        try {
            tree = grow_tree(order, plane, H, basis);
        } catch (const RoutingError& e) {
            last_error = e.what();
            continue;
        }
        tree.targets.clear();
        for (const auto& q : qubits) tree.targets.push_back(plane.cell_of(q));
        auto rep = check_tree_conditions(tree);
        if (!rep.pass())
            throw InternalError("many-body projection produced an invalid tree: " +
                                rep.describe());
        for (const auto& v : tree.voxels) H.raise(v.cell, v.t + 1);
        return tree;
    }
    throw RoutingError("many-body routing failed for all base orderings: " + last_error);
}

// ---------------------------------------------------------------------------
// Tree -> measurement program
// ---------------------------------------------------------------------------

MeasProgram tree_to_program(const RoutingTree& tree, const QubitPlane& plane, char basis) {
    auto rep = check_tree_conditions(tree);
    if (!rep.pass()) throw ConditionError("tree fails validity conditions: " + rep.describe());
    TreeAnalysis ta = analyze_tree(tree);
    int pivot = ta.leaves[0];
    for (int l : ta.leaves)
        if (ta.voxels[l] < ta.voxels[pivot]) pivot = l;
    std::vector<Parity> parity = classify_segments(ta, pivot);

    MeasProgram prog;
    prog.n_data = int(tree.targets.size());
    prog.n_anc = int(ta.connectors.size());

    // Map each leaf to its target index; every leaf must attach horizontally
    // across its own basis-type boundary.
    std::unordered_map<CellCoord, int> target_index;
    for (size_t i = 0; i < tree.targets.size(); ++i) target_index.emplace(tree.targets[i], int(i));
    const BoundaryType need = basis == 'X' ? BoundaryType::X : BoundaryType::Z;
    for (int l : ta.leaves) {
        const VoxelCoord& leaf = ta.voxels[l];
        const VoxelCoord& nb = ta.voxels[ta.adj[l][0]];
        if (nb.t != leaf.t)
            throw ConditionError("target leaf attaches vertically");
        if (boundary_of(dir_between(leaf.cell, nb.cell)) != need)
            throw ConditionError("target leaf attaches through the wrong boundary type");
    }

    const char conj = basis == 'Z' ? 'X' : 'Z';
    // Segment measurements: data leaves contribute the measurement basis; a
    // connector contributes `basis` on its even side and the conjugate basis
    // on its odd side.
    std::vector<std::vector<std::pair<int, char>>> seg_ops(ta.n_segments);
    for (int l : ta.leaves) {
        int seg = ta.segment_of[l];
        seg_ops[seg].push_back({target_index.at(ta.voxels[l].cell), basis});
    }
    for (size_t j = 0; j < ta.connectors.size(); ++j) {
        const auto& c = ta.connectors[j];
        int anc_qubit = prog.n_data + int(j);
        seg_ops[c.seg_lo].push_back(
            {anc_qubit, parity[c.seg_lo] == Parity::Even ? basis : conj});
        seg_ops[c.seg_hi].push_back(
            {anc_qubit, parity[c.seg_hi] == Parity::Even ? basis : conj});
    }
    for (int s = 0; s < ta.n_segments; ++s) {
        if (seg_ops[s].empty()) continue;
        MeasProgram::Step st{MeasProgram::Step::Measure, ta.segment_time[s], s, -1, false, 'Z', {}};
        std::sort(seg_ops[s].begin(), seg_ops[s].end());
        st.ops = seg_ops[s];
        prog.steps.push_back(st);
    }
    // Ancilla lifetimes: init opposite its first contribution, destructive
    // measurement opposite its last.
    for (size_t j = 0; j < ta.connectors.size(); ++j) {
        const auto& c = ta.connectors[j];
        int lo_seg = c.seg_lo, hi_seg = c.seg_hi;
        int t_lo_seg = ta.segment_time[lo_seg], t_hi_seg = ta.segment_time[hi_seg];
        int first_seg = t_lo_seg <= t_hi_seg ? lo_seg : hi_seg;
        int last_seg = t_lo_seg <= t_hi_seg ? hi_seg : lo_seg;
        char first_contrib = parity[first_seg] == Parity::Even ? basis : conj;
        char last_contrib = parity[last_seg] == Parity::Even ? basis : conj;
        MeasProgram::Step init{MeasProgram::Step::Init, std::min(t_lo_seg, t_hi_seg), int(j),
                               prog.n_data + int(j), first_contrib == 'Z', 'Z', {}};
        MeasProgram::Step destroy{MeasProgram::Step::Destroy, std::max(t_lo_seg, t_hi_seg), int(j),
                                  prog.n_data + int(j), false,
                                  last_contrib == 'X' ? 'Z' : 'X', {}};
        prog.steps.push_back(init);
        prog.steps.push_back(destroy);
    }
    (void)plane;
    prog.sort_steps();
    return prog;
}

bool verify_tree_action(const RoutingTree& tree, const QubitPlane& plane, char basis, int n_seeds) {
    MeasProgram prog = tree_to_program(tree, plane, basis);
    for (int seed = 0; seed < n_seeds; ++seed) {
        StabilizerState st = simulate_program(prog, 0xabcd0000 + uint64_t(seed));
        if (!certify_measurement(st, basis).ok) return false;
    }
    return true;
}

}  // namespace lsr
