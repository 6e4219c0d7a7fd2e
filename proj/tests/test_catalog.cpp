#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include <nlohmann/json.hpp>

#include "prerep/catalog.hpp"
#include "prerep/errors.hpp"
#include "prerep/identity_test.hpp"

using namespace prerep;

namespace {

ModelConfig config(int n, int sets = 1) {
  ModelConfig cfg;
  cfg.n = n;
  cfg.sets = sets;
  cfg.validate();
  return cfg;
}

PolyFunction var(VarId z) { return PolyFunction::variable(z); }

}  // namespace

TEST_CASE("J3 transcription at n = 1") {
  const auto cfg = config(1);
  const auto g = build_lorentz(cfg, 1);
  WeylOperator expected;
  const ExactScalar h = ExactScalar::rational(1, 2);
  for (int b = 1; b <= 2; ++b) {
    expected += WeylOperator::bilinear(u(b, 1), u(b, 1), h);
    expected += WeylOperator::bilinear(v(b, 1), v(b, 1), -h);
    expected += WeylOperator::bilinear(ubar(b, 1), ubar(b, 1), -h);
    expected += WeylOperator::bilinear(vbar(b, 1), vbar(b, 1), h);
  }
  CHECK(g.J[2] == expected);
  CHECK(apply(g.J[2], var(v(2, 1))) == var(v(2, 1)) * -h);
  CHECK(apply(g.J[2], var(u(1, 1))) == var(u(1, 1)) * h);
}

TEST_CASE("O1 shape") {
  for (int n : {1, 2, 6}) CHECK(build_O1(config(n), 1).term_count() == static_cast<std::size_t>(8 * n));
  const auto cfg = config(2);
  PolyFunction expected;
  for (int i = 1; i <= 2; ++i) {
    expected += var(u(1, i)) * var(v(2, i)) - var(v(1, i)) * var(u(2, i));
    expected += var(ubar(1, i)) * var(vbar(2, i)) - var(vbar(1, i)) * var(ubar(2, i));
  }
  CHECK(apply(build_O1(cfg, 1), PolyFunction(1)) == expected);
}

TEST_CASE("invariant I matches an independent expansion") {
  const auto cfg = config(2);
  const auto x = build_x(cfg, 1);
  const PolyFunction a = (var(u(1, 1)) * var(v(1, 2)) - var(v(1, 1)) * var(u(1, 2))) * ExactScalar(2);
  const PolyFunction abar = (var(ubar(1, 1)) * var(vbar(1, 2)) - var(vbar(1, 1)) * var(ubar(1, 2))) * ExactScalar(2);
  CHECK(x.invariant == a + abar);

  // Termwise evaluation at a random rational point.
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> d(-50, 50);
  Point p;
  for (const auto& z : x.invariant.variables()) p[z] = ExactScalar(mpq_class(d(rng), 7), mpq_class(d(rng), 3));
  ExactScalar termwise;
  for (int k = 1; k <= 2; ++k) {
    for (int kp = 1; kp <= 2; ++kp) {
      const ExactScalar c(cfg.c[k - 1][kp - 1]);
      const ExactScalar t = c * (p[u(1, k)] * p[v(1, kp)] - p[v(1, k)] * p[u(1, kp)]);
      const ExactScalar tb = c * (p[ubar(1, k)] * p[vbar(1, kp)] - p[vbar(1, k)] * p[ubar(1, kp)]);
      termwise += t + tb;
    }
  }
  CHECK(x.invariant.eval(p) == termwise);

  for (const auto& [kk, z] : x.z) {
    for (const auto& zmu : z) CHECK(zmu.term_count() == 4);
  }
}

TEST_CASE("I is Lorentz invariant") {
  const auto cfg = config(2);
  const auto x = build_x(cfg, 1);
  const auto g = build_lorentz(cfg, 1);
  for (const auto& J : g.J) CHECK(apply(J, x.invariant).is_zero());
  for (const auto& K : g.K) CHECK(apply(K, x.invariant).is_zero());
}

TEST_CASE("total translations") {
  const auto one = config(2, 1);
  const auto two = config(2, 2);
  const auto P = build_translations(one, 1);
  const auto T1 = build_total_P(one);
  const auto T2 = build_total_P(two);
  for (int mu = 0; mu < 4; ++mu) {
    CHECK(T1[mu] == P[mu]);
    CHECK(T2[mu].term_count() == 2 * P[mu].term_count());
    for (int nu = 0; nu < 4; ++nu) CHECK(commutator(T2[mu], T2[nu]).is_zero());
  }
}

TEST_CASE("set locality") {
  const auto cat = build_catalog(config(1, 2));
  const auto& a = cat.set(1);
  const auto& b = cat.set(2);
  std::vector<WeylOperator> ga{a.O1}, gb{b.O1};
  for (int k = 0; k < 3; ++k) {
    ga.push_back(a.J[k]);
    ga.push_back(a.K[k]);
    gb.push_back(b.J[k]);
    gb.push_back(b.K[k]);
  }
  for (int mu = 0; mu < 4; ++mu) {
    ga.push_back(a.P[mu]);
    gb.push_back(b.P[mu]);
  }
  for (const auto& x : ga) {
    for (const auto& v : x.variables()) CHECK(v.set() == 1);
    for (const auto& y : gb) CHECK(commutator(x, y).is_zero());
  }
}

TEST_CASE("catalog determinism and dump") {
  const auto a = build_catalog(config(2, 2));
  const auto b = build_catalog(config(2, 2));
  CHECK(catalog_to_json(a).dump() == catalog_to_json(b).dump());
  CHECK(operator_from_json(operator_to_json(a.set(1).O1)) == a.set(1).O1);
  CHECK(operator_from_json(operator_to_json(a.set(2).su[0].op)) == b.set(2).su[0].op);
}

TEST_CASE("catalog cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "prerep_cache_test";
  std::filesystem::remove_all(dir);
  setenv("PREREP_CACHE_DIR", dir.c_str(), 1);
  const auto first = load_or_build_catalog(config(2, 2));
  CHECK(std::filesystem::exists(dir));
  const auto second = load_or_build_catalog(config(2, 2));
  unsetenv("PREREP_CACHE_DIR");
  CHECK(catalog_to_json(first).dump() == catalog_to_json(second).dump());
  std::filesystem::remove_all(dir);
}

TEST_CASE("configuration errors") {
  ModelConfig bad;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  ModelConfig sym;
  sym.n = 2;
  sym.c = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(sym.validate(), DomainError);
  CHECK_THROWS_AS(build_x(config(1), 1), DomainError);
  CHECK_THROWS_AS(build_lorentz(config(1), 2), DomainError);

  const auto cfg = config(2);
  ExactMatrix nonherm(2);
  nonherm(0, 1) = 1;
  CHECK_THROWS_AS(build_su_generator(cfg, 1, nonherm), DomainError);
  ExactMatrix traced(2);
  traced(0, 0) = 1;
  CHECK_THROWS_AS(build_su_generator(cfg, 1, traced), DomainError);
  CHECK_THROWS_AS(build_interaction(config(2, 2), build_x(cfg, 1), 1, build_x(cfg, 1), 1, {}), DomainError);
}

TEST_CASE("su basis") {
  for (int n : {2, 3, 4}) {
    const auto basis = su_basis(n);
    CHECK(basis.size() == static_cast<std::size_t>(n * n - 1));
    for (const auto& [label, T] : basis) {
      CHECK(T.is_hermitian());
      CHECK(T.trace().is_zero());
    }
  }
}

TEST_CASE("n = 6 build fits under the default cap") {
  const auto cat = build_catalog(config(6, 1));
  CHECK(cat.set(1).su.size() == 35);
  CHECK(cat.set(1).O1.term_count() == 48);
}
