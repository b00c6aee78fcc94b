#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsr/chain.hpp"
#include "lsr/instruction.hpp"
#include "lsr/kink.hpp"
#include "lsr/path.hpp"
#include "lsr/plane.hpp"

namespace lsr {

/// Voxel network connecting m >= 2 target cells. Adjacency is face-sharing
/// within the voxel set.
struct RoutingTree {
    std::vector<VoxelCoord> voxels;
    std::vector<CellCoord> targets;  // Q1..Qm cells
};

/// Derived structure: leaves, forks, horizontal segments and the vertical
/// connectors (ancilla runs) bridging them.
struct TreeAnalysis {
    std::vector<VoxelCoord> voxels;
    std::vector<std::vector<int>> adj;   // face-sharing neighbour ids
    std::vector<int> leaves;             // voxel ids with degree 1
    std::vector<int> forks;              // voxel ids with degree > 2
    std::vector<int> segment_of;         // voxel id -> segment id, -1 for idle run interiors
    int n_segments = 0;
    std::vector<int> segment_time;       // beat of each segment

    struct Connector {
        CellCoord cell;
        int t_lo = 0, t_hi = 0;
        int seg_lo = -1, seg_hi = -1;
        bool kink = false;
    };
    std::vector<Connector> connectors;

    int voxel_id(const VoxelCoord& v) const;
    bool connected() const;
    bool acyclic() const;
};

TreeAnalysis analyze_tree(const RoutingTree& tree);

struct TreeConditionReport {
    bool tree_shaped = true;        // Condition 1
    bool no_temporal_fork = true;   // Condition 2
    bool no_leaf_in_odd = true;     // Condition 3
    bool no_fork_in_odd = true;     // Condition 4
    std::optional<VoxelCoord> witness;
    std::string detail;

    bool pass() const { return tree_shaped && no_temporal_fork && no_leaf_in_odd && no_fork_in_odd; }
    std::string describe() const;
};

/// Evaluates the four validity conditions. Conditions 3-4 use an arbitrary
/// (lexicographically smallest) pivot leaf; validity is pivot-independent.
TreeConditionReport check_tree_conditions(const RoutingTree& tree);

/// Per-segment parity from a pivot leaf: the pivot's segment is even and
/// parity flips across kink connectors. Requires Conditions 1-2.
std::vector<Parity> classify_segments(const TreeAnalysis& ta, int pivot_leaf_voxel);

/// Grows a routing tree for an m-body measurement: a two-body projection
/// between Q1 and Q2, then for each further qubit a weighted route to the
/// nearest attachable cell of the current even-segment set, kink-fixed to even
/// parity. Raises H over all tree voxels on success.
RoutingTree route_manybody_projection(const std::vector<std::string>& qubits,
                                      const QubitPlane& plane, HeightMap& H,
                                      Basis basis = Basis::ZZ);

/// Converts the tree to its per-segment measurement program (terminal data
/// qubits plus bridging ancillas, oriented by segment parity).
MeasProgram tree_to_program(const RoutingTree& tree, const QubitPlane& plane, char basis);

/// Certifies that the tree implements the m-body Pauli measurement via the
/// stabilizer oracle on Choi pairs.
bool verify_tree_action(const RoutingTree& tree, const QubitPlane& plane, char basis, int n_seeds);

}  // namespace lsr
