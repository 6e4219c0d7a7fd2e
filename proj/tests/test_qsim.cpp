#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "prerep/qsim.hpp"

using namespace prerep;
using namespace prerep::qsim;

namespace {

ExactState two_df(const Label& a, const Label& b, ExactScalar amp = 1) { return ExactState({{1, a}, {2, b}}, amp); }

bool assertion(const ScenarioReport& r, const std::string& name) {
  for (const auto& a : r.assertions)
    if (a.name == name) return a.passed;
  FAIL("no assertion named " << name);
  return false;
}

}  // namespace

TEST_CASE("product kets ignore write order") {
  ProductKet a{{2, "x"}, {1, "y"}};
  ProductKet b{{1, "y"}, {2, "x"}};
  CHECK(a == b);
  CHECK(a.to_string() == "|y>_1|x>_2");
  CHECK_THROWS_AS(a.label(3), DomainError);
}

TEST_CASE("state vectors prune zeros and take inner products") {
  ExactState s = two_df("a", "b", ExactScalar::rational(3, 5));
  s.add({{1, "b"}, {2, "a"}}, ExactScalar(0, 1) * ExactScalar::rational(4, 5));
  CHECK(s.norm2() == ExactScalar(1));
  ExactState d = s - s;
  CHECK(d.is_zero());
  CHECK(s.inner(two_df("a", "c")).is_zero());
}

TEST_CASE("antisymmetrizer") {
  CHECK(antisymmetrize(two_df("a", "a"), {1, 2}).is_zero());

  ExactState once = antisymmetrize(two_df("a", "b"), {1, 2});
  CHECK(once == two_df("a", "b") - two_df("b", "a"));
  CHECK(antisymmetrize(once, {1, 2}) == ExactScalar(2) * once);
  // alternating under label swap
  CHECK(antisymmetrize(two_df("b", "a"), {1, 2}) == ExactScalar(-1) * once);
  // symmetric input
  CHECK(antisymmetrize(two_df("a", "b") + two_df("b", "a"), {1, 2}).is_zero());

  // sum over coefficient table, position bins and spin labels
  ExactState general;
  ExactState expected;
  const std::vector<Label> labels = {"r0,1/2", "r1,1/2", "r0,-1/2"};
  long c = 1;
  for (const auto& l1 : labels)
    for (const auto& l2 : labels) {
      general += two_df(l1, l2, c);
      expected += two_df(l1, l2, c) - two_df(l2, l1, c);
      ++c;
    }
  CHECK(antisymmetrize(general, {1, 2}) == expected);

  // two particles at distinct places with equal spin: two opposite-sign terms
  ExactState pair = antisymmetrize(two_df("rA,1/2", "rB,1/2"), {1, 2});
  REQUIRE(pair.size() == 2);
  CHECK(pair.amplitude({{1, "rA,1/2"}, {2, "rB,1/2"}}) == ExactScalar(1));
  CHECK(pair.amplitude({{1, "rB,1/2"}, {2, "rA,1/2"}}) == ExactScalar(-1));

  // three dfs: 6 terms, twice-applied scales by 3!
  ExactState three({{1, "a"}, {2, "b"}, {3, "c"}}, 1);
  ExactState a3 = antisymmetrize(three, {1, 2, 3});
  CHECK(a3.size() == 6);
  CHECK(antisymmetrize(a3, {1, 2, 3}) == ExactScalar(6) * a3);

  CHECK_THROWS_AS(antisymmetrize(two_df("a", "b"), {1, 3}), DomainError);
}

TEST_CASE("interaction rules are validated") {
  CHECK_THROWS_AS(InteractionRule({1}, {{{"a"}, {{"b"}, 1}}}), DomainError);  // b not in domain
  CHECK_THROWS_AS(InteractionRule({1}, {{{"a"}, {{"c"}, 1}}, {{"b"}, {{"c"}, 1}}}), DomainError);
  CHECK_THROWS_AS(InteractionRule({1}, {{{"a"}, {{"a"}, ExactScalar(2)}}}), DomainError);
  CHECK_THROWS_AS(InteractionRule({1, 1}, {}), DomainError);
  CHECK_THROWS_AS(InteractionRule({1, 2}, {{{"a"}, {{"a"}, 1}}}), DomainError);
  // 3-cycle with a phase is fine
  InteractionRule cyc({1}, {{{"a"}, {{"b"}, ExactScalar(0, 1)}}, {{"b"}, {{"c"}, 1}}, {{"c"}, {{"a"}, 1}}});
  ExactState s({{1, "a"}, {2, "z"}}, 1);
  ExactState out = evolve(s, cyc);
  CHECK(out == ExactState({{1, "b"}, {2, "z"}}, ExactScalar(0, 1)));
  CHECK(evolve(s, InteractionRule::identity({1})) == s);
  CHECK_THROWS_AS(evolve(s, InteractionRule::identity({3})), DomainError);
}

TEST_CASE("evolve is linear and norm preserving") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-9, 9);
  const std::vector<Label> labels = {"a", "b", "c"};
  InteractionRule r({1, 2}, {{{"a", "a"}, {{"b", "c"}, ExactScalar(0, -1)}},
                             {{"b", "c"}, {{"c", "b"}, 1}},
                             {{"c", "b"}, {{"a", "a"}, -1}}});
  for (int trial = 0; trial < 100; ++trial) {
    ExactState v1, v2;
    for (const auto& l1 : labels)
      for (const auto& l2 : labels) {
        v1.add({{1, l1}, {2, l2}}, ExactScalar(d(rng), d(rng)));
        v2.add({{1, l1}, {2, l2}}, ExactScalar(d(rng), d(rng)));
      }
    ExactScalar a(d(rng), d(rng)), b(d(rng), d(rng));
    CHECK(evolve(a * v1 + b * v2, r) == a * evolve(v1, r) + b * evolve(v2, r));
    CHECK(evolve(v1, r).norm2() == v1.norm2());
  }
  FloatState f({{1, "a"}, {2, "a"}}, cdouble(0.6, 0));
  f.add({{1, "b"}, {2, "b"}}, cdouble(0, 0.8));
  CHECK(std::abs(evolve(f, r).norm2() - 1.0) < 1e-12);
}

TEST_CASE("stern-gerlach scenario") {
  ScenarioReport r = stern_gerlach_scenario();
  CHECK(r.all_passed());
  REQUIRE(r.timeline.size() == 3);
  for (const auto& s : r.timeline) CHECK(s.size() == 2);
  REQUIRE(r.branches.size() == 2);
  for (const auto& b : r.branches) {
    const Label rec = b.records.at("Obs");
    if (b.labels.at("S") == "1") {
      CHECK(b.amplitude == ExactScalar::rational(3, 5));
      CHECK(rec == "yes,no");
    } else {
      CHECK(b.amplitude == ExactScalar::rational(4, 5));
      CHECK(rec == "no,yes");
    }
  }
  // intermediate stage matches detector-only readout
  CHECK(r.timeline[1].amplitude({{1, "1"}, {2, "yes"}, {3, "no"}, {4, "ready"}}) == ExactScalar::rational(3, 5));

  ScenarioReport one = stern_gerlach_scenario(ExactScalar::rational(3, 5), 0);
  CHECK(one.all_passed());
  REQUIRE(one.branches.size() == 1);
  CHECK(one.branches[0].records.at("Obs") == "yes,no");

  ScenarioReport two = stern_gerlach_scenario(ExactScalar::rational(3, 5), ExactScalar(0, 1) * ExactScalar::rational(4, 5), 2);
  CHECK(two.all_passed());
  CHECK(assertion(two, "observers_agree"));
  for (const auto& b : two.branches) CHECK(b.records.at("Obs1") == b.records.at("Obs2"));
  CHECK_THROWS_AS(stern_gerlach_scenario(1, 0, 3), DomainError);
}

TEST_CASE("detector arrays localize every branch") {
  ScenarioReport single = detector_array_scenario(3, {1, 0, 0});
  CHECK(single.all_passed());
  REQUIRE(single.branches.size() == 1);
  CHECK(single.branches[0].labels.at("D1") == "yes");

  std::uint64_t seed = 1;
  for (int count = 1; count <= 8; ++count)
    for (int trial = 0; trial < 100; ++trial) {
      auto amps = random_unit_amplitudes(count, seed++);
      mpq_class total = 0;
      for (const auto& a : amps) total += a.norm2();
      REQUIRE(total == 1);
      ScenarioReport r = detector_array_scenario(count, amps);
      REQUIRE(r.all_passed());
      for (const auto& [k, a] : r.timeline.back().terms()) {
        int yes = 0;
        for (int d = 2; d <= count + 1; ++d) yes += k.label(d) == "yes" ? 1 : 0;
        CHECK(yes == 1);
      }
    }
  CHECK(detector_array_scenario(5, random_unit_amplitudes(5, 7)).branches.size() == 5);
  CHECK_THROWS_AS(detector_array_scenario(2, {1, 1}), DomainError);
  CHECK_THROWS_AS(detector_array_scenario(3, {1, 0}), DomainError);
}

TEST_CASE("trajectory as repeated detector arrays") {
  auto a = random_unit_amplitudes(3, 11);
  ScenarioReport r = trajectory_scenario(3, 4, {{{1, 2, 3}, a[0]}, {{4, 4, 1}, a[1]}, {{2, 2, 2}, a[2]}});
  CHECK(r.all_passed());
  CHECK(r.branches.size() == 3);
  CHECK(r.timeline.size() == 4);
  CHECK_THROWS_AS(trajectory_scenario(2, 2, {{{1, 3}, 1}}), DomainError);
}

TEST_CASE("bell probabilities") {
  const double pi = std::numbers::pi;
  auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };
  auto p0 = bell_probabilities(0);
  CHECK(near(p0[0], 0));
  CHECK(near(p0[1], 0.5));
  CHECK(near(p0[2], 0.5));
  CHECK(near(p0[3], 0));
  for (double v : bell_probabilities(pi / 4)) CHECK(near(v, 0.25));
  auto p2 = bell_probabilities(pi / 2);
  CHECK(near(p2[0], 0.5));
  CHECK(near(p2[1], 0));
  CHECK(near(p2[2], 0));
  CHECK(near(p2[3], 0.5));
  auto p3 = bell_probabilities(pi / 3);
  CHECK(near(p3[0], 3.0 / 8));
  CHECK(near(p3[1], 1.0 / 8));
  CHECK(near(p3[2], 1.0 / 8));
  CHECK(near(p3[3], 3.0 / 8));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int k = 0; k < 100; ++k) {
    const double t = u(rng);
    auto p = bell_probabilities(t);
    const double s2 = std::sin(t) * std::sin(t), c2 = std::cos(t) * std::cos(t);
    CHECK(near(p[0], s2 / 2));
    CHECK(near(p[1], c2 / 2));
    CHECK(near(p[2], c2 / 2));
    CHECK(near(p[3], s2 / 2));
    CHECK(near(p[0] + p[1] + p[2] + p[3], 1));
    const double a = u(rng), b = u(rng);
    CHECK(near(singlet_correlation(a, b), -std::cos(2 * (a - b))));
  }
}

TEST_CASE("chsh") {
  const double pi = std::numbers::pi;
  CHECK(chsh_classical_bound() == 2);
  CHECK(std::abs(std::abs(chsh(0, pi / 4, pi / 8, 3 * pi / 8)) - 2 * std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(std::abs(chsh(0.3, 0.3, 0.3, 0.3)) - 2) < 1e-12);
}
