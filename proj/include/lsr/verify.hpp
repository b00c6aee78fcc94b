#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lsr/chain.hpp"
#include "lsr/tableau.hpp"

namespace lsr {

/// Post-simulation state: the data (and reference) qubits' stabilizer group,
/// the recorded measurement outcomes, and bookkeeping for frame correction.
struct StabilizerState {
    CanonicalGroup group;        // over [data qubits..., reference qubits...]
    std::vector<int> outcomes;   // one per program step that measured
    int n_data = 0;
};

/// Runs a measurement program on data qubits entangled with reference qubits
/// (Choi setup). Qubit order of the reduced group: data 0..n_data-1 then their
/// references. Outcomes are drawn from the seed; `forced` pins them instead
/// when given (per measurement-step, in step order).
StabilizerState simulate_program(const MeasProgram& prog, uint64_t seed,
                                 const std::vector<int>* forced = nullptr);

/// Convenience wrapper for two-body chains.
StabilizerState simulate_chain(const MeasChain& chain, uint64_t seed,
                               const std::vector<int>* forced = nullptr);

/// Ideal instrument groups on the Choi setup.
CanonicalGroup ideal_measurement_group(int n_data, char basis, int outcome = 0);
CanonicalGroup ideal_cnot_group(int control, int target);  // 2 data qubits

/// Measurement certification: extracts the recorded logical outcome (the sign
/// of the basis^n operator in the group) and searches for a Pauli frame on
/// the data qubits equating the state with the ideal instrument branch for
/// that outcome. Returns the frame on success.
struct MeasCertification {
    bool ok = false;
    int logical_outcome = 0;
    Pauli frame;  // over data+ref qubits (support on data only)
};
MeasCertification certify_measurement(const StabilizerState& st, char basis);

/// CNOT certification: Pauli-frame equality against the ideal CNOT channel.
struct CnotCertification {
    bool ok = false;
    Pauli frame;
};
CnotCertification certify_cnot(const StabilizerState& st, int control, int target);

/// End-to-end check of a routed path: converts to a chain, simulates with
/// n_seeds outcome draws, and certifies each run against the expected logical
/// operation. Propagates SemanticError from the conversion.
bool verify_path_action(const Path3D& path, const QubitPlane& plane, const LogicalOp& expected,
                        int n_seeds);

/// Enumerates every branch of the program's random measurement outcomes and
/// calls the visitor with each resulting state. Used by the rewrite-rule
/// soundness checks.
void enumerate_branches(const MeasProgram& prog,
                        const std::function<void(const StabilizerState&)>& visit);

}  // namespace lsr
