#include "lsr/frontend.hpp"

#include <cmath>
#include <functional>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "lsr/errors.hpp"

namespace lsr {

namespace {

struct GateSpec {
    GateKind kind;
    size_t arity;
};

const std::map<std::string, GateSpec>& gate_table() {
    static const std::map<std::string, GateSpec> table = {
        {"X", {GateKind::X, 1}},   {"Y", {GateKind::Y, 1}},     {"Z", {GateKind::Z, 1}},
        {"H", {GateKind::H, 1}},   {"S", {GateKind::S, 1}},     {"T", {GateKind::T, 1}},
        {"Tdg", {GateKind::Tdg, 1}}, {"CX", {GateKind::CX, 2}}, {"CCX", {GateKind::CCX, 3}},
    };
    return table;
}

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "Tdg";
        case GateKind::CX: return "CX";
        case GateKind::CCX: return "CCX";
    }
    return "?";
}

}  // namespace

std::vector<Gate> parse_circuit(std::istream& in) {
    std::vector<Gate> gates;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("g") || !j.contains("q"))
            throw ParseError(lineno, "gate needs \"g\" and \"q\" fields");
        std::string name = j["g"].get<std::string>();
        auto it = gate_table().find(name);
        if (it == gate_table().end())
            throw UnsupportedGateError("line " + std::to_string(lineno) + ": unsupported gate " +
                                       name + " (rotation synthesis is out of scope)");
        Gate g;
        g.kind = it->second.kind;
        for (const auto& e : j["q"]) g.qubits.push_back(e.get<std::string>());
        if (g.qubits.size() != it->second.arity)
            throw ParseError(lineno, "gate " + name + " takes " +
                                         std::to_string(it->second.arity) + " operands");
        gates.push_back(std::move(g));
    }
    return gates;
}

std::vector<Gate> parse_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_circuit(in);
}

namespace {

// Standard 7-T Toffoli expansion over {H, T, Tdg, CX}.
std::vector<Gate> expand_ccx(const std::string& a, const std::string& b, const std::string& c) {
    auto g = [](GateKind k, std::initializer_list<std::string> qs) {
        return Gate{k, std::vector<std::string>(qs)};
    };
    return {
        g(GateKind::H, {c}),      g(GateKind::CX, {b, c}),  g(GateKind::Tdg, {c}),
        g(GateKind::CX, {a, c}),  g(GateKind::T, {c}),      g(GateKind::CX, {b, c}),
        g(GateKind::Tdg, {c}),    g(GateKind::CX, {a, c}),  g(GateKind::T, {b}),
        g(GateKind::T, {c}),      g(GateKind::H, {c}),      g(GateKind::CX, {a, b}),
        g(GateKind::T, {a}),      g(GateKind::Tdg, {b}),    g(GateKind::CX, {a, b}),
    };
}

}  // namespace

LoweredProgram lower(const std::vector<Gate>& circuit, LowerMode mode, int n_factories) {
    if (n_factories < 0) throw DomainError("n_factories must be >= 0");
    LoweredProgram out;
    std::unordered_set<std::string> seen;
    auto note_symbol = [&](const std::string& q) {
        if (seen.insert(q).second) out.data_symbols.push_back(q);
    };
    for (int i = 0; i < n_factories; ++i) out.factory_symbols.push_back("f" + std::to_string(i));

    int next_factory = 0;
    auto factory_for = [&]() -> std::string {
        if (n_factories == 0)
            throw CapacityError("circuit contains T gates but no factories were allocated");
        std::string f = out.factory_symbols[next_factory];
        next_factory = (next_factory + 1) % n_factories;
        return f;
    };

    std::function<void(const Gate&)> emit = [&](const Gate& g) {
        switch (g.kind) {
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
            case GateKind::H:
            case GateKind::S:
                // Zero scheduling time; tracked via the Pauli frame or cell
                // deformation, never occupies routing voxels.
                out.dropped.push_back({gate_name(g.kind), g.qubits[0]});
                note_symbol(g.qubits[0]);
                break;
            case GateKind::T:
            case GateKind::Tdg: {
                note_symbol(g.qubits[0]);
                out.instructions.push(Instruction(g.qubits[0], factory_for(), Basis::ZZ));
                break;
            }
            case GateKind::CX: {
                const std::string& c = g.qubits[0];
                const std::string& t = g.qubits[1];
                note_symbol(c);
                note_symbol(t);
                if (mode == LowerMode::Cnot) {
                    out.instructions.push(Instruction(c, t, Basis::CNOT));
                } else {
                    std::string anc = c + ".a";
                    note_symbol(anc);
                    out.instructions.push(Instruction(c, anc, Basis::ZZ));
                    out.instructions.push(Instruction(anc, t, Basis::XX));
                }
                break;
            }
            case GateKind::CCX: {
                for (const Gate& sub : expand_ccx(g.qubits[0], g.qubits[1], g.qubits[2])) emit(sub);
                break;
            }
        }
    };
    for (const Gate& g : circuit) emit(g);
    return out;
}

std::map<std::string, CellCoord> place_symbols(const std::vector<std::string>& data_symbols,
                                               const std::vector<std::string>& factory_symbols,
                                               int plane_size_hint, bool factories_first) {
    const size_t need = data_symbols.size() + factory_symbols.size();
    int s = plane_size_hint;
    if (s <= 0) s = int(std::ceil(std::sqrt(double(need))));
    if (s * size_t(s) < need)
        throw CapacityError("plane_size " + std::to_string(s) + " holds " +
                            std::to_string(size_t(s) * s) + " symbols, need " +
                            std::to_string(need));
    std::vector<CellCoord> slots;
    const int side = 2 * s - 1;
    for (int y = 0; y < side; y += 2)
        for (int x = 0; x < side; x += 2) slots.push_back({x, y});
    std::map<std::string, CellCoord> placement;
    size_t i = 0;
    auto assign = [&](const std::vector<std::string>& syms) {
        for (const auto& sym : syms) placement[sym] = slots[i++];
    };
    if (factories_first) {
        assign(factory_symbols);
        assign(data_symbols);
    } else {
        assign(data_symbols);
        assign(factory_symbols);
    }
    return placement;
}

std::map<std::string, CellCoord> LoweredProgram::place(int plane_size_hint,
                                                       bool factories_first) const {
    return place_symbols(data_symbols, factory_symbols, plane_size_hint, factories_first);
}

int LoweredProgram::plane_size_needed() const {
    size_t need = data_symbols.size() + factory_symbols.size();
    int s = int(std::ceil(std::sqrt(double(need))));
    return std::max(s, 1);
}

}  // namespace lsr
