#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prerep/poly.hpp"

namespace prerep {

struct IdentityOptions {
  int trials = 5;
  std::uint64_t seed = 0;
  /// When set, an Equal verdict additionally requires the canonical
  /// difference polynomial to be identically zero.
  bool exact = false;
  int max_resamples = 64;
};

struct IdentityVerdict {
  bool equal = false;
  /// Point where the two sides differ (NotEqual only).
  std::optional<Point> witness;
  /// True when the verdict was confirmed by exact cancellation.
  bool exact_checked = false;
  int trials_run = 0;
};

/// Half-width of the integer sampling box used for random points.
inline constexpr std::int64_t kSampleRadius = 1'000'000;

/// Deterministic random point over `vars`, coordinates uniform in
/// [-kSampleRadius, kSampleRadius] (real integers).
Point random_point(const std::vector<VarId>& vars, std::uint64_t& state);

/// Randomized identity test (Schwartz-Zippel) with optional exact confirmation.
IdentityVerdict poly_identity_test(const PolyFunction& lhs, const PolyFunction& rhs, const IdentityOptions& opts = {});
/// Rational functions are compared through their cross-multiplied difference;
/// points where a denominator vanishes are resampled.
IdentityVerdict poly_identity_test(const RationalFunction& lhs, const RationalFunction& rhs,
                                   const IdentityOptions& opts = {});

}  // namespace prerep
