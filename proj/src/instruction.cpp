#include "lsr/instruction.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "lsr/errors.hpp"

namespace lsr {

BoundaryType Instruction::boundary_at(size_t k) const {
    switch (basis) {
        case Basis::XX: return BoundaryType::X;
        case Basis::ZZ: return BoundaryType::Z;
        case Basis::CNOT: return k == 0 ? BoundaryType::Z : BoundaryType::X;
    }
    return BoundaryType::Z;
}

std::string Instruction::op_name() const {
    if (basis == Basis::CNOT) return "CX";
    std::string letter = basis == Basis::XX ? "X" : "Z";
    std::string name = "M";
    for (size_t i = 0; i < qubits.size(); ++i) name += letter;
    return name;
}

std::vector<std::string> InstructionList::symbols_in_order() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& in : instructions)
        for (const auto& q : in.qubits)
            if (seen.insert(q).second) out.push_back(q);
    return out;
}

Instruction parse_instruction_line(const std::string& line, int lineno, int index) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("op") || !j.contains("q"))
        throw ParseError(lineno, "instruction needs \"op\" and \"q\" fields");
    std::string op = j["op"].get<std::string>();
    if (!j["q"].is_array()) throw ParseError(lineno, "\"q\" must be an array");
    std::vector<std::string> qs;
    for (const auto& e : j["q"]) {
        if (!e.is_string()) throw ParseError(lineno, "qubit symbols must be strings");
        qs.push_back(e.get<std::string>());
    }
    Instruction in;
    in.qubits = std::move(qs);
    in.index = index;
    if (op == "CX") {
        in.basis = Basis::CNOT;
        if (in.qubits.size() != 2) throw ParseError(lineno, "CX takes exactly 2 operands");
    } else if (op.size() >= 3 && op[0] == 'M') {
        char letter = op[1];
        if (letter != 'X' && letter != 'Z') throw ParseError(lineno, "unknown op: " + op);
        for (size_t i = 1; i < op.size(); ++i)
            if (op[i] != letter) throw ParseError(lineno, "unknown op: " + op);
        if (op.size() - 1 != in.qubits.size())
            throw ParseError(lineno, "op " + op + " takes " + std::to_string(op.size() - 1) +
                                         " operands, got " + std::to_string(in.qubits.size()));
        if (in.qubits.size() < 2) throw ParseError(lineno, "measurements need >= 2 operands");
        in.basis = letter == 'X' ? Basis::XX : Basis::ZZ;
    } else {
        throw ParseError(lineno, "unknown op: " + op);
    }
    std::unordered_set<std::string> distinct(in.qubits.begin(), in.qubits.end());
    if (distinct.size() != in.qubits.size()) throw ParseError(lineno, "operands must be distinct");
    return in;
}

std::string instruction_to_json_line(const Instruction& in) {
    nlohmann::ordered_json j;
    j["op"] = in.op_name();
    j["q"] = in.qubits;
    return j.dump();
}

ProgramFile read_instructions(std::istream& in) {
    ProgramFile prog;
    std::string line;
    int lineno = 0;
    int index = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1) {
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_object() && j.contains("plane_size") && !j.contains("op")) {
                PlaneSpec spec;
                spec.plane_size = j["plane_size"].get<int>();
                spec.factories = j.value("factories", 0);
                prog.header = spec;
                continue;
            }
        }
        prog.instructions.push(parse_instruction_line(line, lineno, index));
        ++index;
    }
    return prog;
}

ProgramFile read_instructions_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_instructions(in);
}

void write_instructions(const ProgramFile& prog, std::ostream& out) {
    if (prog.header) {
        nlohmann::ordered_json j;
        j["plane_size"] = prog.header->plane_size;
        j["factories"] = prog.header->factories;
        out << j.dump() << '\n';
    }
    for (const auto& in : prog.instructions.instructions) out << instruction_to_json_line(in) << '\n';
}

void write_instructions_file(const ProgramFile& prog, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    write_instructions(prog, out);
}

}  // namespace lsr
