#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lsr/geometry.hpp"

namespace lsr {

/// The 2D grid of surface-code cells. Data cells sit at even-even coordinates;
/// everything else is routing workspace. Immutable once the symbols are placed.
class QubitPlane {
public:
    QubitPlane(int width, int height);

    /// Default layout: a (2s-1) x (2s-1) grid with s^2 data positions, the
    /// first n_factories of them (row-major) marked as factories.
    static QubitPlane build(int plane_size, int n_factories);

    int width() const { return width_; }
    int height() const { return height_; }
    int n_cells() const { return width_ * height_; }
    int plane_size() const { return plane_size_; }
    int n_factories() const { return n_factories_; }

    bool in_bounds(CellCoord c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    int cell_index(CellCoord c) const { return c.y * width_ + c.x; }
    CellCoord cell_at(int index) const { return {index % width_, index / width_}; }

    CellKind kind(CellCoord c) const { return kind_[cell_index(c)]; }
    void set_kind(CellCoord c, CellKind k);

    BoundaryType boundary_of_edge(CellCoord c, Dir d) const;

    /// Data positions (data or factory cells) in row-major order.
    std::vector<CellCoord> data_positions() const;

    void place_symbol(const std::string& sym, CellCoord c);
    bool has_symbol(const std::string& sym) const { return qubit_at_.count(sym) > 0; }
    CellCoord cell_of(const std::string& sym) const;
    const std::string* symbol_at(CellCoord c) const;
    const std::vector<std::string>& symbols() const { return symbols_; }

private:
    int width_;
    int height_;
    int plane_size_ = 0;
    int n_factories_ = 0;
    std::vector<CellKind> kind_;
    std::vector<int> symbol_idx_at_;  // cell index -> index into symbols_, or -1
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, CellCoord> qubit_at_;
};

/// Places symbols onto free data positions in row-major order. Factory symbols
/// (when given) are placed after the data symbols and their cells re-marked as
/// factories. Throws CapacityError when the plane is too small.
void assign_symbols_row_major(QubitPlane& plane, const std::vector<std::string>& data_symbols,
                              const std::vector<std::string>& factory_symbols = {});

}  // namespace lsr
