#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lsr/geometry.hpp"

namespace lsr {

/// Measurement basis / operation of a lattice-surgery instruction. XX and ZZ
/// operands are unordered; CNOT carries (control, target) in that order.
enum class Basis : uint8_t { XX, ZZ, CNOT };

struct Instruction {
    std::vector<std::string> qubits;  // 2 operands, or 3+ for many-body MZZ..Z / MXX..X
    Basis basis = Basis::ZZ;
    int index = 0;

    Instruction() = default;
    Instruction(std::string a, std::string b, Basis bs, int idx = 0)
        : qubits{std::move(a), std::move(b)}, basis(bs), index(idx) {}

    const std::string& q1() const { return qubits.front(); }
    const std::string& q2() const { return qubits.back(); }
    bool many_body() const { return qubits.size() > 2; }

    /// Required boundary type at operand k. CNOT attaches the control through
    /// a Z boundary and the target through an X boundary.
    BoundaryType boundary_at(size_t k) const;

    std::string op_name() const;
};

struct InstructionList {
    std::vector<Instruction> instructions;

    size_t size() const { return instructions.size(); }
    bool empty() const { return instructions.empty(); }
    const Instruction& operator[](size_t i) const { return instructions[i]; }

    void push(Instruction in) {
        in.index = int(instructions.size());
        instructions.push_back(std::move(in));
    }

    /// Distinct qubit symbols in order of first appearance.
    std::vector<std::string> symbols_in_order() const;
};

/// Optional header line of an instruction file.
struct PlaneSpec {
    int plane_size = 0;
    int factories = 0;
};

struct ProgramFile {
    std::optional<PlaneSpec> header;
    InstructionList instructions;
};

ProgramFile read_instructions(std::istream& in);
ProgramFile read_instructions_file(const std::string& path);
void write_instructions(const ProgramFile& prog, std::ostream& out);
void write_instructions_file(const ProgramFile& prog, const std::string& path);

Instruction parse_instruction_line(const std::string& line, int lineno, int index);
std::string instruction_to_json_line(const Instruction& in);

}  // namespace lsr
