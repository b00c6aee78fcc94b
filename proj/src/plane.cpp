#include "lsr/plane.hpp"

#include "lsr/errors.hpp"

namespace lsr {

const char* to_string(Dir d) {
    switch (d) {
        case Dir::N: return "N";
        case Dir::E: return "E";
        case Dir::S: return "S";
        case Dir::W: return "W";
    }
    return "?";
}

const char* to_string(BoundaryType b) { return b == BoundaryType::X ? "X" : "Z"; }

const char* to_string(CellKind k) {
    switch (k) {
        case CellKind::Data: return "data";
        case CellKind::Ancilla: return "ancilla";
        case CellKind::Factory: return "factory";
    }
    return "?";
}

QubitPlane::QubitPlane(int width, int height)
    : width_(width),
      height_(height),
      kind_(size_t(width) * height, CellKind::Ancilla),
      symbol_idx_at_(size_t(width) * height, -1) {
    if (width < 1 || height < 1) throw DomainError("plane dimensions must be positive");
}

QubitPlane QubitPlane::build(int plane_size, int n_factories) {
    if (plane_size < 1) throw DomainError("plane_size must be >= 1");
    if (n_factories < 0) throw DomainError("n_factories must be >= 0");
    if (n_factories > plane_size * plane_size)
        throw CapacityError("requested " + std::to_string(n_factories) + " factories but only " +
                            std::to_string(plane_size * plane_size) + " data positions exist");
    const int side = 2 * plane_size - 1;
    QubitPlane plane(side, side);
    plane.plane_size_ = plane_size;
    plane.n_factories_ = n_factories;
    int remaining = n_factories;
    for (int y = 0; y < side; y += 2) {
        for (int x = 0; x < side; x += 2) {
            CellKind k = CellKind::Data;
            if (remaining > 0) {
                k = CellKind::Factory;
                --remaining;
            }
            plane.kind_[plane.cell_index({x, y})] = k;
        }
    }
    return plane;
}

void QubitPlane::set_kind(CellCoord c, CellKind k) {
    if (!in_bounds(c)) throw DomainError("cell out of bounds");
    kind_[cell_index(c)] = k;
}

BoundaryType QubitPlane::boundary_of_edge(CellCoord c, Dir d) const {
    if (!in_bounds(c)) throw DomainError("cell out of bounds");
    return boundary_of(d);
}

std::vector<CellCoord> QubitPlane::data_positions() const {
    std::vector<CellCoord> out;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x)
            if (kind_[y * width_ + x] != CellKind::Ancilla) out.push_back({x, y});
    return out;
}

void QubitPlane::place_symbol(const std::string& sym, CellCoord c) {
    if (!in_bounds(c)) throw DomainError("cell out of bounds");
    if (kind(c) == CellKind::Ancilla) throw DomainError("cannot place a symbol on an ancilla cell");
    if (qubit_at_.count(sym)) throw StateError("symbol already placed: " + sym);
    if (symbol_idx_at_[cell_index(c)] != -1)
        throw StateError("cell already holds a symbol");
    qubit_at_[sym] = c;
    symbol_idx_at_[cell_index(c)] = int(symbols_.size());
    symbols_.push_back(sym);
}

CellCoord QubitPlane::cell_of(const std::string& sym) const {
    auto it = qubit_at_.find(sym);
    if (it == qubit_at_.end()) throw StateError("symbol not placed: " + sym);
    return it->second;
}

const std::string* QubitPlane::symbol_at(CellCoord c) const {
    int idx = symbol_idx_at_[cell_index(c)];
    return idx < 0 ? nullptr : &symbols_[idx];
}

void assign_symbols_row_major(QubitPlane& plane, const std::vector<std::string>& data_symbols,
                              const std::vector<std::string>& factory_symbols) {
    auto positions = plane.data_positions();
    const size_t need = data_symbols.size() + factory_symbols.size();
    if (need > positions.size())
        throw CapacityError("program needs " + std::to_string(need) + " data positions, plane has " +
                            std::to_string(positions.size()));
    size_t i = 0;
    for (const auto& s : data_symbols) plane.place_symbol(s, positions[i++]);
    for (const auto& s : factory_symbols) {
        plane.set_kind(positions[i], CellKind::Factory);
        plane.place_symbol(s, positions[i]);
        ++i;
    }
}

}  // namespace lsr
