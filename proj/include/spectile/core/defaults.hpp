#pragma once

#include <cstddef>

namespace spectile::defaults {

/// Zero test at points where 1_R^ vanishes exactly in theory (lattice points).
inline constexpr double kLatticeZeroTol = 1e-8;
/// Zero test at generic points.
inline constexpr double kGenericZeroTol = 1e-6;
/// Distance kept from discontinuity surfaces in a.e. grid checks.
inline constexpr double kMargin = 1e-3;
inline constexpr double kTruncationRadius = 500.0;
inline constexpr double kReportingRadius = 10.0;
inline constexpr double kOrthogonalityRadius = 5.0;
inline constexpr std::size_t kDualVectors = 100;
/// Atom positions closer than this are merged for irrational generators.
inline constexpr double kSnap = 1e-9;
inline constexpr double kResidualTol = 1e-2;
inline constexpr double kWeakTilingTol = 1e-6;
inline constexpr std::size_t kHoleSamples = 1000;

}  // namespace spectile::defaults
