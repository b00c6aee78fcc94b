#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lsr/instruction.hpp"
#include "lsr/plane.hpp"

namespace lsr {

enum class GateKind : uint8_t { X, Y, Z, H, S, T, Tdg, CX, CCX };

struct Gate {
    GateKind kind;
    std::vector<std::string> qubits;
};

struct DroppedGate {
    std::string name;
    std::string qubit;
};

struct LoweredProgram {
    InstructionList instructions;
    std::vector<std::string> data_symbols;     // placement order
    std::vector<std::string> factory_symbols;  // cyclically assigned
    std::vector<DroppedGate> dropped;          // H/S/Pauli gates removed

    /// Row-major placement (qubits first, then factories by default).
    std::map<std::string, CellCoord> place(int plane_size_hint, bool factories_first = false) const;

    int plane_size_needed() const;
};

enum class LowerMode : uint8_t { Measurements, Cnot };

std::vector<Gate> parse_circuit(std::istream& in);
std::vector<Gate> parse_circuit_file(const std::string& path);

/// Lowers a Clifford+T circuit to lattice-surgery instructions.
/// measurements mode: CX becomes the MZZ/MXX pair through the control's
/// dedicated ancilla qubit; cnot mode keeps CX as a CNOT instruction. T gates
/// consume a magic state as an MZZ against a factory, assigned cyclically.
/// H, S and Pauli gates are dropped from the stream and logged.
LoweredProgram lower(const std::vector<Gate>& circuit, LowerMode mode, int n_factories);

/// Standalone placement helper matching LoweredProgram::place.
std::map<std::string, CellCoord> place_symbols(const std::vector<std::string>& data_symbols,
                                               const std::vector<std::string>& factory_symbols,
                                               int plane_size_hint, bool factories_first = false);

}  // namespace lsr
