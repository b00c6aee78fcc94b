#pragma once

#include <functional>
#include <optional>

#include "lsr/instruction.hpp"
#include "lsr/occupancy.hpp"
#include "lsr/path.hpp"

namespace lsr {

enum class Parity : uint8_t { Even, Odd };

inline Parity parity_of(int count) { return count % 2 == 0 ? Parity::Even : Parity::Odd; }

struct KinkCount {
    int count = 0;
    Parity parity() const { return parity_of(count); }
};

/// Counts vertical segments whose adjacent horizontal directions differ by 90
/// degrees. Collinear and reversed bends are not kinks.
KinkCount count_kinks(const Path3D& path);

/// XX and ZZ need even kink parity, CNOT odd.
Parity required_parity(Basis b);

enum class FixScan : uint8_t { FromStart, FromEnd };

/// Flips the kink parity of a lifted projection path that has at least one
/// 90-degree corner in its footprint. Works on the first corner from the
/// chosen end: a non-kink corner is lifted to create a kink; a kink corner is
/// aligned, falling back to the lift when alignment cancels elsewhere. Adds at
/// most 4 voxels, never dips below the input terrain, never moves endpoint
/// cells. The default scans from the q2 end, which keeps the touch height of
/// a repeatedly used first operand (a hub qubit, a magic-state consumer)
/// untouched. Throws NotApplicableError for corner-free paths.
Path3D fix_kink_parity(const Path3D& path, const HeightMap& H,
                       FixScan scan = FixScan::FromEnd);

/// Inserts a sideways 4-voxel twist into a corner-free path, creating exactly
/// one kink. Scans interior cells in order, lateral offsets (left, right) at
/// the local move height; returns nullopt when no adjacent slot is free.
std::optional<Path3D> twist_straight_path(const Path3D& path, const HeightMap& H);
std::optional<Path3D> twist_straight_path(const Path3D& path, const Occupancy3D& occ);
std::optional<Path3D> twist_straight_path(const Path3D& path,
                                          const std::function<bool(VoxelCoord)>& is_free);

}  // namespace lsr
