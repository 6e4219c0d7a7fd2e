#include <doctest.h>

#include <map>

#include "prerep/errors.hpp"
#include "prerep/verifier.hpp"

using namespace prerep;

namespace {

GeneratorCatalog catalog(int n, int sets = 1, InvariantPhase phase = InvariantPhase::Printed,
                         CatalogOptions opts = {}) {
  ModelConfig cfg;
  cfg.n = n;
  cfg.sets = sets;
  cfg.phase = phase;
  return build_catalog(cfg, opts);
}

std::map<std::string, Status> by_id(const std::vector<CheckReport>& reports) {
  std::map<std::string, Status> m;
  for (const auto& r : reports) m[r.check_id] = r.status;
  return m;
}

std::size_t count(const std::vector<CheckReport>& reports, Status s, CheckKind k = CheckKind::Claim) {
  std::size_t c = 0;
  for (const auto& r : reports) c += (r.status == s && r.kind == k) ? 1 : 0;
  return c;
}

}  // namespace

TEST_CASE("Lorentz algebra closes") {
  for (int n : {1, 2}) {
    const auto reports = check_lorentz_algebra(catalog(n));
    CHECK(reports.size() == 15);
    CHECK(count(reports, Status::Pass) == 15);
    const auto m = by_id(reports);
    CHECK(m.at("lorentz/[J2,J3]") == Status::Pass);
    CHECK(m.at("lorentz/[J1,K2]") == Status::Pass);
  }
}

TEST_CASE("Poincare table") {
  for (int n : {1, 2}) {
    const auto reports = check_poincare(catalog(n));
    CHECK(reports.size() == 30);
    CHECK(count(reports, Status::Pass) == 24);
    CHECK(count(reports, Status::Deviates) == 6);
    CHECK(count(reports, Status::Fail) == 0);
    const auto m = by_id(reports);
    CHECK(m.at("poincare/[P1,P2]") == Status::Pass);
    CHECK(m.at("poincare/[J1,P2]") == Status::Pass);
    CHECK(m.at("poincare/[K1,P1]") == Status::Pass);
    CHECK(m.at("poincare/[K1,P2]") == Status::Deviates);
    CHECK(m.at("poincare/[K3,P0]") == Status::Pass);
  }
}

TEST_CASE("O1 invariance with a failing control") {
  const auto reports = check_O_invariance(catalog(2));
  CHECK(reports.size() == 11);
  CHECK(count(reports, Status::Pass) == 10);
  CHECK(count(reports, Status::Fail, CheckKind::Control) == 1);
  CHECK(reports.back().residual_terms > 0);
}

TEST_CASE("SU(n) invariance and closure") {
  for (int n : {2, 3}) {
    const auto reports = check_su_invariance(catalog(n));
    const std::size_t dim = n * n - 1;
    CHECK(reports.size() == 11 * dim + dim * (dim - 1) / 2);
    CHECK(count(reports, Status::Pass) == reports.size());
  }
}

TEST_CASE("hermiticity") {
  const auto reports = check_hermiticity(catalog(2));
  CHECK(count(reports, Status::Pass) == 10 + 3);
  CHECK(count(reports, Status::Fail, CheckKind::Control) == 1);
}

TEST_CASE("x commutators under the printed invariant") {
  const auto reports = check_x_commutators(catalog(2));
  REQUIRE(reports.size() == 16);
  const auto m = by_id(reports);
  CHECK(count(reports, Status::Fail) == 0);
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const auto id = "x-functions/[P" + std::to_string(mu) + ",x" + std::to_string(nu) + "]";
      CHECK(m.at(id) == (mu == nu ? Status::Deviates : Status::Pass));
    }
  }
  for (const auto& r : reports) CHECK(r.seeds.size() == 5);
}

TEST_CASE("x commutators under the imaginary invariant") {
  const auto m = by_id(check_x_commutators(catalog(2, 1, InvariantPhase::Imaginary)));
  CHECK(m.at("x-functions/[P0,x0]") == Status::Pass);
  CHECK(m.at("x-functions/[P1,x1]") == Status::Deviates);
  CHECK(m.at("x-functions/[P1,x2]") == Status::Pass);
}

TEST_CASE("interaction invariance") {
  {
    const auto reports = check_interaction_invariance(catalog(2, 2));
    const auto m = by_id(reports);
    CHECK(m.at("interaction/nontrivial") == Status::Pass);
    CHECK(count(reports, Status::Deviates) >= 1);
    CHECK(count(reports, Status::Fail) == 0);
  }
  {
    const auto reports = check_interaction_invariance(catalog(2, 2, InvariantPhase::Imaginary));
    CHECK(count(reports, Status::Pass) == 5);
  }
  {
    CatalogOptions opts;
    opts.interaction_shape = {ExactScalar(3)};
    const auto m = by_id(check_interaction_invariance(catalog(2, 2, InvariantPhase::Printed, opts)));
    CHECK(m.at("interaction/(P0^1+P0^2)O2") == Status::Pass);
    CHECK(m.at("interaction/nontrivial") == Status::Fail);
  }
  CHECK_THROWS_AS(check_interaction_invariance(catalog(2, 1)), DomainError);
}

TEST_CASE("scaling generator") {
  for (int n : {1, 2}) {
    const auto cat = catalog(n);
    const auto sol = find_scaling_generator(cat);
    CHECK(sol.unknowns == static_cast<std::size_t>(64 * n * n + 1));
    CHECK(sol.verified);
    CHECK(sol.scaling_sector_nonempty);
    std::vector<WeylOperator> zero_sector;
    for (std::size_t k = 0; k < sol.basis.size(); ++k)
      if (sol.lambda_prime[k].is_zero()) zero_sector.push_back(sol.basis[k]);
    const auto& g = cat.set(1);
    for (const auto& P : g.P) CHECK(in_span(P, zero_sector));
    for (const auto& t : g.su) CHECK(in_span(t.op, zero_sector));
    CHECK_FALSE(in_span(g.J[2], zero_sector));
    CHECK_FALSE(in_span(g.K[0], zero_sector));
  }
}

TEST_CASE("scaling generator negative control") {
  const auto cat = catalog(1);
  const auto& g = cat.set(1);
  ScalingOptions opts;
  for (int k = 0; k < 3; ++k) opts.extra.push_back({"K" + std::to_string(k + 1), g.K[k], g.K[k] * ExactScalar::i()});
  const auto sol = find_scaling_generator(cat, opts);
  CHECK_FALSE(sol.scaling_sector_nonempty);
  CHECK(sol.verified);
}

TEST_CASE("scaling search cap") {
  ScalingOptions opts;
  opts.max_unknowns = 10;
  CHECK_THROWS_AS(find_scaling_generator(catalog(1), opts), CapExceeded);
}
