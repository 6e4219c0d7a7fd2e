// Acceptance run: one line per criterion, tolerances fixed here.
// Usage: acceptance [--expect-fail 6,...]
// Exit status is 0 when the failing set equals the expected one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "prerep/catalog.hpp"
#include "prerep/oscillator.hpp"
#include "prerep/qsim.hpp"
#include "prerep/verifier.hpp"

using namespace prerep;

namespace {

constexpr double kLorentzBudgetSec = 60;
constexpr double kXBudgetSec = 120;
constexpr double kSuiteBudgetSec = 300;
constexpr double kResidualTol = 1e-10;
constexpr double kAdjointTol = 1e-8;
constexpr double kSpinTol = 1e-10;
constexpr double kBellTol = 1e-12;
constexpr double kChshTol = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

GeneratorCatalog catalog(int n, int sets = 1, InvariantPhase phase = InvariantPhase::Printed) {
  ModelConfig cfg;
  cfg.n = n;
  cfg.sets = sets;
  cfg.phase = phase;
  CatalogOptions opts;
  opts.with_x = n >= 2;
  opts.with_interaction = n >= 2 && sets >= 2;
  return build_catalog(cfg, opts);
}

bool all_status(const std::vector<CheckReport>& rs, Status s) {
  for (const auto& r : rs)
    if (r.kind == CheckKind::Claim && r.status != s) return false;
  return true;
}

bool controls_caught(const std::vector<CheckReport>& rs) {
  for (const auto& r : rs)
    if (r.kind == CheckKind::Control && r.status != Status::Fail) return false;
  return true;
}

Outcome lorentz() {
  Outcome o{true, ""};
  for (int n : {1, 2, 6}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rs = check_lorentz_algebra(catalog(n));
    const double sec = seconds_since(t0);
    bool ok = rs.size() == 15 && all_status(rs, Status::Pass);
    for (const auto& r : rs) ok = ok && r.residual_terms == 0;
    if (n == 6) {
      ok = ok && sec < kLorentzBudgetSec;
      o.detail += "n=6 took " + fmt("%.2f", sec) + " s";
    }
    o.pass = o.pass && ok;
  }
  return o;
}

Outcome poincare() {
  Outcome o{true, ""};
  for (int n : {1, 2}) {
    const auto rs = check_poincare(catalog(n));
    int pass = 0, dev = 0;
    bool attached = true;
    for (const auto& r : rs) {
      pass += r.status == Status::Pass;
      dev += r.status == Status::Deviates;
      if (r.status == Status::Deviates) attached = attached && !r.computed.empty();
    }
    o.pass = o.pass && rs.size() == 30 && pass + dev == 30 && attached;
    o.detail = std::to_string(pass) + " exact, " + std::to_string(dev) + " Deviates from the literal table (per n)";
  }
  return o;
}

Outcome invariance() {
  Outcome o{true, ""};
  for (int n : {1, 2, 6}) {
    const auto rs = check_O_invariance(catalog(n));
    o.pass = o.pass && rs.size() == 11 && all_status(rs, Status::Pass) && controls_caught(rs);
  }
  o.detail = "10 generators, control nonzero, n=1,2,6";
  return o;
}

Outcome su() {
  Outcome o{true, ""};
  for (int n : {2, 3}) {
    const auto cat = catalog(n);
    const auto rs = check_su_invariance(cat);
    o.pass = o.pass && !rs.empty() && all_status(rs, Status::Pass);
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += "n=" + std::to_string(n) + ": " + std::to_string(cat.set(1).su.size()) + " generators, " +
                std::to_string(rs.size()) + " checks";
  }
  return o;
}

Outcome adjoints() {
  const auto cat = catalog(2);
  const auto rs = check_hermiticity(cat);
  bool ok = all_status(rs, Status::Pass) && controls_caught(rs);
  const auto& g = cat.set(1);
  const GaussianState st = solve_gaussian_ground(g.O1);
  std::vector<WeylOperator> gens(g.J.begin(), g.J.end());
  gens.insert(gens.end(), g.K.begin(), g.K.end());
  gens.insert(gens.end(), g.P.begin(), g.P.end());
  for (const auto& s : g.su) gens.push_back(s.op);
  double worst = 0;
  for (const auto& x : gens) worst = std::max(worst, adjoint_crosscheck(x, st, 2).max_deviation);
  ok = ok && worst < kAdjointTol;
  return {ok, "formal adjoints exact; Gram cross-check max deviation " + fmt("%.2e", worst)};
}

Outcome x_functions() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cat = catalog(2, 2);
  const auto a = check_x_commutators(cat);
  const auto b = check_x_commutators(cat);
  bool deterministic = a.size() == b.size();
  bool stable = true;
  int pattern = 0;
  for (std::size_t k = 0; k < a.size() && deterministic; ++k) {
    deterministic = a[k].status == b[k].status && a[k].computed == b[k].computed;
    stable = stable && a[k].seeds.size() == 5 && a[k].status != Status::Fail;
    pattern += a[k].status == Status::Pass;
  }
  const auto inter = check_interaction_invariance(cat);
  int annihilated = 0;
  bool nontrivial = false;
  for (const auto& r : inter) {
    if (r.check_id == "interaction/nontrivial") nontrivial = r.status == Status::Pass;
    else annihilated += r.status == Status::Pass;
  }
  // diagnostic only: the alternative reading of the invariant
  int alt = 0;
  for (const auto& r : check_interaction_invariance(catalog(2, 2, InvariantPhase::Imaginary)))
    if (r.check_id != "interaction/nontrivial") alt += r.status == Status::Pass;
  const double sec = seconds_since(t0);
  const bool ok = deterministic && stable && annihilated == 4 && nontrivial && sec < kXBudgetSec;
  return {ok, std::string("verdicts deterministic ") + (deterministic ? "yes" : "no") + ", seed-stable " +
                  (stable ? "yes" : "no") + "; " + std::to_string(pattern) +
                  "/16 match the printed x pattern; total P annihilates s in " + std::to_string(annihilated) +
                  "/4 (imaginary-phase reading: " + std::to_string(alt) + "/4); nontrivial " +
                  (nontrivial ? "yes" : "no") + "; " + fmt("%.1f", sec) + " s"};
}

Outcome oscillator() {
  const VarId X = u(1, 1), Y = v(1, 1);
  const WeylOperator toy = -(WeylOperator::derivative(X) * WeylOperator::derivative(Y)) +
                           WeylOperator::multiplication(X) * WeylOperator::multiplication(Y);
  const auto ts = solve_gaussian_ground(toy, GroundPolicy::Decaying);
  const double toy_res = ground_residual(toy, ts).max_residual;
  const bool toy_ok = std::abs(ts.eigenvalue - cdouble(1, 0)) < kResidualTol && std::abs(ts.M(0, 1) - 0.5) < kResidualTol &&
                      std::abs(ts.M(0, 0)) < kResidualTol && std::abs(ts.M(1, 1)) < kResidualTol && toy_res < kResidualTol;

  const auto cat = catalog(2);
  const auto st = solve_gaussian_ground(cat.set(1).O1);
  const double res = ground_residual(cat.set(1).O1, st).max_residual;
  const Eigen::MatrixXcd G = gram_matrix(st, 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues().minCoeff();
  const bool ok = toy_ok && st.normalizable && res < kResidualTol && min_ev > 0;
  return {ok, "toy lambda=1 residual " + fmt("%.1e", toy_res) + "; full residual " + fmt("%.1e", res) +
                  "; Gram " + std::to_string(G.rows()) + "x" + std::to_string(G.cols()) + " min eigenvalue " +
                  fmt("%.3e", min_ev)};
}

Outcome spin() {
  const int n = 2;
  const auto cat = catalog(n);
  const auto& J = cat.set(1).J;
  const auto st = solve_gaussian_ground(cat.set(1).O1);
  const auto ms = spectrum({casimir(J), J[2]}, st, 1);
  bool ok = ms.size() == 2;
  std::set<double> j3;
  for (const auto& m : ms) {
    ok = ok && m.multiplicity == static_cast<std::size_t>(4 * n) && std::abs(m.eigenvalues[0] - 0.75) < kSpinTol;
    j3.insert(std::round(m.eigenvalues[1] * 2) / 2);
    ok = ok && std::abs(std::abs(m.eigenvalues[1]) - 0.5) < kSpinTol;
  }
  ok = ok && j3 == std::set<double>{-0.5, 0.5};
  return {ok, "degree 1: J3 = +-1/2 with multiplicity 4n = 8 each, J^2 = 3/4"};
}

Outcome bell() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  double worst = 0, worst_sum = 0;
  for (int k = 0; k < 100; ++k) {
    const double t = u(rng);
    const auto p = qsim::bell_probabilities(t);
    const double s2 = std::sin(t) * std::sin(t) / 2, c2 = std::cos(t) * std::cos(t) / 2;
    worst = std::max({worst, std::abs(p[0] - s2), std::abs(p[1] - c2), std::abs(p[2] - c2), std::abs(p[3] - s2)});
    worst_sum = std::max(worst_sum, std::abs(p[0] + p[1] + p[2] + p[3] - 1));
  }
  const int classical = qsim::chsh_classical_bound();
  const double pi = std::numbers::pi;
  const double q = std::abs(qsim::chsh(0, pi / 4, pi / 8, 3 * pi / 8));
  const bool ok = worst < kBellTol && worst_sum < kBellTol && classical == 2 && std::abs(q - 2 * std::sqrt(2.0)) < kChshTol;
  return {ok, "max deviation " + fmt("%.1e", worst) + ", classical " + std::to_string(classical) + ", quantum " +
                  fmt("%.9f", q)};
}

Outcome branching() {
  bool ok = qsim::stern_gerlach_scenario().all_passed() &&
            qsim::stern_gerlach_scenario(ExactScalar::rational(3, 5), ExactScalar::rational(4, 5), 2).all_passed() &&
            qsim::stern_gerlach_scenario(1, 0).all_passed();
  int runs = 0;
  std::uint64_t seed = 1000;
  for (int count = 1; count <= 8; ++count)
    for (int trial = 0; trial < 100; ++trial, ++runs) {
      const auto r = qsim::detector_array_scenario(count, qsim::random_unit_amplitudes(count, seed++));
      ok = ok && r.all_passed();
    }
  return {ok, "stern-gerlach (1 and 2 observers) and " + std::to_string(runs) + " detector arrays, exact amplitudes"};
}

Outcome antisym() {
  using qsim::ExactState;
  auto two = [](const std::string& a, const std::string& b) { return ExactState({{1, a}, {2, b}}, 1); };
  const ExactState once = qsim::antisymmetrize(two("a", "b"), {1, 2});
  const ExactState pair = qsim::antisymmetrize(two("rA,1/2", "rB,1/2"), {1, 2});
  const bool ok = qsim::antisymmetrize(two("a", "a"), {1, 2}).is_zero() &&
                  qsim::antisymmetrize(once, {1, 2}) == ExactScalar(2) * once &&
                  qsim::antisymmetrize(two("b", "a"), {1, 2}) == ExactScalar(-1) * once && pair.size() == 2 &&
                  pair.amplitude({{1, "rA,1/2"}, {2, "rB,1/2"}}) == -pair.amplitude({{1, "rB,1/2"}, {2, "rA,1/2"}});
  return {ok, "vanishes, doubles, alternates; (rA,1/2)(rB,1/2) bracket has 2 terms"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome full_suite() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "prerep_acceptance";
  fs::create_directories(dir);
  const std::string cli = PREREP_CLI_PATH;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::vector<std::string> files[2];
  for (int run = 0; run < 2; ++run) {
    for (const char* cmd : {"check all", "solve ground", "sim chsh"}) {
      std::string name = std::string(cmd) + "-" + std::to_string(run) + ".json";
      for (auto& ch : name)
        if (ch == ' ') ch = '_';
      const fs::path out = dir / name;
      const std::string line = "\"" + cli + "\" " + cmd + " --n 2 --seed 1 --out \"" + out.string() + "\" > /dev/null";
      ok = ok && std::system(line.c_str()) == 0;
      files[run].push_back(slurp(out));
    }
  }
  const double sec = seconds_since(t0);
  const bool same = files[0] == files[1];
  return {ok && same && sec < kSuiteBudgetSec,
          std::string("two runs ") + fmt("%.1f", sec) + " s total, byte-identical " + (same ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_fail;
  for (int k = 1; k < argc; ++k) {
    if (std::string(argv[k]) == "--expect-fail" && k + 1 < argc) {
      std::stringstream ss(argv[++k]);
      std::string tok;
      while (std::getline(ss, tok, ',')) expect_fail.insert(std::stoi(tok));
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Lorentz algebra", lorentz},
      {"Poincare extension", poincare},
      {"invariance of O1", invariance},
      {"SU(n) invariance and closure", su},
      {"scalar-product invariance", adjoints},
      {"x_mu identities and interaction", x_functions},
      {"oscillator ground states", oscillator},
      {"spin content", spin},
      {"Bell and CHSH", bell},
      {"branching", branching},
      {"antisymmetrizer", antisym},
      {"full default suite", full_suite}};

  std::set<int> failed;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu passed\n", criteria.size() - failed.size(), criteria.size());
  if (failed != expect_fail) {
    std::printf("failing set differs from the expected one\n");
    return 1;
  }
  return 0;
}
