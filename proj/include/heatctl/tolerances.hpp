#pragma once

namespace heatctl::tol {

// Central tolerance block. The CLI, the library defaults, and the
// acceptance suite all read these numbers; change them here or nowhere.

// An eigenvalue counts as real when |Im| <= kRealImagCut * (1 + |lambda|).
inline constexpr double kRealImagCut = 1e-9;

// Width of the diagnostic band around the critical window boundary.
inline constexpr double kWindowBoundaryBand = 1e-9;

// Reachability column spot-check and duality/pairing identity budget.
inline constexpr double kIdentityDefect = 1e-10;

// Full-domain null control: ||y(T)|| <= kNullControlRel * ||y0||.
inline constexpr double kNullControlRel = 1e-9;

// Generate-and-recover steering residual budget.
inline constexpr double kRecoverResidual = 1e-8;

// Slack subtracted from the unreachable-target lower bound.
inline constexpr double kBoundSlack = 1e-8;

// Residual budget for the contrast steering run inside the admissible window.
inline constexpr double kContrastResidual = 1e-6;

// Determinant law reproduction budget.
inline constexpr double kDetLaw = 1e-10;

// Companion-expansion reconstruction budget.
inline constexpr double kCompanion = 1e-9;

// Spectral vs finite-difference cross-check budget (L2).
inline constexpr double kFdCross = 1e-4;

// Absolute singular-value cutoff used when asserting exact degeneracies
// (rank drops that hold in exact arithmetic).
inline constexpr double kExactRankAbs = 1e-12;

// Fraction of reachability columns re-verified against the simulator.
inline constexpr double kSpotCheckFraction = 0.01;

}  // namespace heatctl::tol
