#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prerep/catalog.hpp"
#include "prerep/identity_test.hpp"

namespace prerep {

enum class Status { Pass, Fail, Deviates };
/// Controls are deliberately broken operators; their Fail is the expected outcome.
enum class CheckKind { Claim, Control };

struct CheckReport {
  std::string check_id;
  Status status = Status::Fail;
  CheckKind kind = CheckKind::Claim;
  std::string expected;
  std::string computed;
  std::size_t residual_terms = 0;
  std::vector<std::uint64_t> seeds;
  std::optional<double> elapsed_ms;
  std::string note;
};

std::string status_name(Status s);
nlohmann::json report_to_json(const CheckReport& r);

struct VerifyOptions {
  int set = 1;
  /// Seeds for the randomized identity tests run next to the exact verdict.
  std::vector<std::uint64_t> pit_seeds{1, 2, 3, 4, 5};
  int pit_trials = 5;
  /// Exact cancellation decides the verdict; turning it off leaves only PIT.
  bool exact = true;
  bool timings = false;
};

std::vector<CheckReport> check_lorentz_algebra(const GeneratorCatalog& cat, const VerifyOptions& opts = {});
/// [P,P], [J,P], [K,P] against the Kronecker-delta reading of the translation
/// relations; departures from the literal printed table are Deviates.
std::vector<CheckReport> check_poincare(const GeneratorCatalog& cat, const VerifyOptions& opts = {});
std::vector<CheckReport> check_O_invariance(const GeneratorCatalog& cat, const VerifyOptions& opts = {});
std::vector<CheckReport> check_su_invariance(const GeneratorCatalog& cat, const VerifyOptions& opts = {});
std::vector<CheckReport> check_hermiticity(const GeneratorCatalog& cat, const VerifyOptions& opts = {});
std::vector<CheckReport> check_x_commutators(const GeneratorCatalog& cat, const VerifyOptions& opts = {});
std::vector<CheckReport> check_interaction_invariance(const GeneratorCatalog& cat, const VerifyOptions& opts = {});

/// Extra requirement [G, X] = lambda' * Y on the scaling generator.
struct ScalingConstraint {
  std::string label;
  WeylOperator X;
  WeylOperator Y;
};

struct ScalingOptions {
  int set = 1;
  std::vector<ScalingConstraint> extra;
  std::size_t max_unknowns = 4096;
};

struct ScalingSolution {
  /// Particular solution at lambda' = 1 (when one exists) followed by the
  /// homogeneous (lambda' = 0) basis.
  std::vector<WeylOperator> basis;
  std::vector<ExactScalar> lambda_prime;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::size_t homogeneous_dimension = 0;
  bool scaling_sector_nonempty = false;
  /// Every basis element re-checked by direct commutators.
  bool verified = false;
};

/// Searches span{z_a d_b} + constants of one set for G with [G, P_mu] = i lambda' P_mu
/// and [G, O1] = 0, at lambda' = 0 and lambda' = 1. Throws CapExceeded when the
/// search space is larger than opts.max_unknowns.
ScalingSolution find_scaling_generator(const GeneratorCatalog& cat, const ScalingOptions& opts = {});

/// Exact membership of `op` in the linear span of `basis`.
bool in_span(const WeylOperator& op, const std::vector<WeylOperator>& basis);

}  // namespace prerep
