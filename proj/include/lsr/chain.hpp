#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsr/instruction.hpp"
#include "lsr/path.hpp"
#include "lsr/plane.hpp"

namespace lsr {

enum class Basis2 : uint8_t { XX, ZZ };

inline Basis2 basis2_of(BoundaryType b) { return b == BoundaryType::X ? Basis2::XX : Basis2::ZZ; }
inline Basis2 flip(Basis2 b) { return b == Basis2::XX ? Basis2::ZZ : Basis2::XX; }

/// The measurement-circuit image of a path: a chain of two-body measurements
/// between the data endpoints with one ancilla per vertical segment.
/// Node ids: 0 is the q1 endpoint, 1..n_anc the ancillas in chain order,
/// n_anc+1 the q2 endpoint. Measurement j joins nodes j and j+1.
struct MeasChain {
    struct TwoBody {
        Basis2 basis;
        int time;  // code beat of the horizontal segment
    };
    struct Ancilla {
        CellCoord cell;
        bool init_plus;    // |+> when true, |0> otherwise
        char meas_basis;   // 'X' or 'Z' destructive measurement
        int t_init, t_meas;
    };

    std::vector<TwoBody> meas;   // empty chain allowed (identity)
    std::vector<Ancilla> ancillas;
    BoundaryType start_boundary = BoundaryType::Z;
    BoundaryType end_boundary = BoundaryType::Z;

    int n_anc() const { return int(ancillas.size()); }
};

struct LogicalOp {
    enum Kind : uint8_t { MXX, MZZ, CNOT } kind;
    /// For CNOT: which chain end is the control (0 = the q1 end).
    int control_end = 0;

    bool operator==(const LogicalOp&) const = default;
    std::string str() const;
};

/// Converts a structurally valid path into its measurement chain. The basis of
/// the first horizontal segment comes from the start endpoint's boundary type
/// and flips at every kink; a mismatch at the far endpoint raises
/// SemanticError.
MeasChain path_to_chain(const Path3D& path, const QubitPlane& plane);

/// Reduces a chain to its logical action: merge same-basis runs, collapse
/// alternating triples, and read off the measurement or CNOT at the end.
LogicalOp simplify_chain(const MeasChain& chain);

/// Time-ordered Pauli-measurement program over data qubits 0..n_data-1 and
/// ancilla qubits n_data..n_data+n_anc-1. Shared by the chain and tree
/// simulators and the rewrite-rule checks.
struct MeasProgram {
    struct Step {
        enum Kind : uint8_t { Init, Measure, Destroy } kind;
        int time = 0;
        int seq = 0;                              // tie-break within a beat
        int anc = -1;                             // Init/Destroy target
        bool init_plus = false;                   // Init
        char destroy_basis = 'Z';                 // Destroy
        std::vector<std::pair<int, char>> ops;    // Measure: (qubit, 'X'/'Z')
    };
    int n_data = 0;
    int n_anc = 0;
    std::vector<Step> steps;  // kept sorted by (time, phase, seq)

    void sort_steps();
};

/// Chain as an executable program: data qubits {0, 1} = {q1 end, q2 end}.
MeasProgram chain_to_program(const MeasChain& chain);

}  // namespace lsr
