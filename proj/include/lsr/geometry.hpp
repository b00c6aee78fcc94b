#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace lsr {

/// Column/row position of a surface-code cell on the qubit plane.
struct CellCoord {
    int x{};
    int y{};
    auto operator<=>(const CellCoord&) const = default;
};

/// One (cell, code beat) unit of the space-time lattice.
struct VoxelCoord {
    CellCoord cell;
    int t{};
    auto operator<=>(const VoxelCoord&) const = default;
};

/// Grid edge directions. Screen convention: y grows downward, so N = (0,-1).
enum class Dir : uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline constexpr Dir kAllDirs[4] = {Dir::N, Dir::E, Dir::S, Dir::W};

enum class BoundaryType : uint8_t { X, Z };
enum class CellKind : uint8_t { Data, Ancilla, Factory };

constexpr CellCoord step(CellCoord c, Dir d) {
    switch (d) {
        case Dir::N: return {c.x, c.y - 1};
        case Dir::E: return {c.x + 1, c.y};
        case Dir::S: return {c.x, c.y + 1};
        case Dir::W: return {c.x - 1, c.y};
    }
    return c;
}

constexpr Dir opposite(Dir d) {
    return static_cast<Dir>((static_cast<int>(d) + 2) % 4);
}

constexpr bool vertical_axis(Dir d) { return d == Dir::N || d == Dir::S; }

constexpr bool perpendicular(Dir a, Dir b) { return vertical_axis(a) != vertical_axis(b); }

/// Lateral neighbours of a travel direction, used when twisting a path.
constexpr Dir left_of(Dir d) {
    switch (d) {
        case Dir::N: return Dir::W;
        case Dir::E: return Dir::N;
        case Dir::S: return Dir::E;
        case Dir::W: return Dir::S;
    }
    return d;
}

constexpr Dir right_of(Dir d) { return opposite(left_of(d)); }

/// Direction of the move between two 4-adjacent cells.
constexpr Dir dir_between(CellCoord a, CellCoord b) {
    if (b.x == a.x + 1) return Dir::E;
    if (b.x == a.x - 1) return Dir::W;
    if (b.y == a.y + 1) return Dir::S;
    return Dir::N;
}

/// Global boundary orientation: N/S edges are X-type, E/W edges are Z-type.
constexpr BoundaryType boundary_of(Dir d) {
    return vertical_axis(d) ? BoundaryType::X : BoundaryType::Z;
}

constexpr BoundaryType flip(BoundaryType b) {
    return b == BoundaryType::X ? BoundaryType::Z : BoundaryType::X;
}

const char* to_string(Dir d);
const char* to_string(BoundaryType b);
const char* to_string(CellKind k);

}  // namespace lsr

template <>
struct std::hash<lsr::CellCoord> {
    size_t operator()(const lsr::CellCoord& c) const {
        return std::hash<uint64_t>{}((uint64_t(uint32_t(c.x)) << 32) | uint32_t(c.y));
    }
};

template <>
struct std::hash<lsr::VoxelCoord> {
    size_t operator()(const lsr::VoxelCoord& v) const {
        size_t h = std::hash<lsr::CellCoord>{}(v.cell);
        return h ^ (std::hash<uint64_t>{}(uint64_t(v.t)) + 0x9e3779b97f4a7c15ull + (h << 6));
    }
};
