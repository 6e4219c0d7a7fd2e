#include "prerep/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "prerep/errors.hpp"
#include "prerep/oscillator.hpp"
#include "prerep/qsim.hpp"
#include "prerep/verifier.hpp"

namespace prerep::cli {

using json = nlohmann::json;

namespace {

constexpr double kAdjointTolerance = 1e-8;
constexpr double kBellTolerance = 1e-12;
constexpr double kChshTolerance = 1e-9;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Keeps floating output stable against last-bit noise.
double rounded(double x) {
  const double r = std::round(x * 1e9) / 1e9;
  return r == 0.0 ? 0.0 : r;
}

json complex_json(cdouble z) { return json::array({rounded(z.real()), rounded(z.imag())}); }

void validate(const RunConfig& cfg) {
  if (cfg.degree < 0 || cfg.degree > 4) throw DomainError("degree must be in 0..4");
  if (!(cfg.tolerance > 0)) throw DomainError("tolerance must be positive");
  if (cfg.pit_trials < 1) throw DomainError("pit-trials must be >= 1");
  if (cfg.count < 1 || cfg.count > 64) throw DomainError("count must be in 1..64");
  if (cfg.phase != "printed" && cfg.phase != "imaginary") throw DomainError("phase must be printed or imaginary");
  if (cfg.metric != "minkowski" && cfg.metric != "euclidean") throw DomainError("metric must be minkowski or euclidean");
}

void tally(SuiteResult& s, const CheckReport& r) {
  if (r.kind == CheckKind::Control) {
    (r.status == Status::Fail ? s.controls : s.failed) += 1;
  } else if (r.status == Status::Pass) {
    ++s.passed;
  } else if (r.status == Status::Deviates) {
    ++s.deviates;
  } else {
    ++s.failed;
  }
  s.reports.push_back(report_to_json(r));
}

void tally(SuiteResult& s, const std::vector<CheckReport>& rs) {
  for (const auto& r : rs) tally(s, r);
}

void tally_json(SuiteResult& s, json report, bool ok) {
  report["status"] = ok ? "Pass" : "Fail";
  (ok ? s.passed : s.failed) += 1;
  s.reports.push_back(std::move(report));
}

VerifyOptions verify_options(const RunConfig& cfg) {
  VerifyOptions o;
  o.pit_seeds.clear();
  for (std::uint64_t k = 0; k < 5; ++k) o.pit_seeds.push_back(cfg.seed + k);
  o.pit_trials = cfg.pit_trials;
  o.exact = cfg.exact;
  o.timings = cfg.timings;
  return o;
}

std::vector<std::pair<std::string, WeylOperator>> named_generators(const SetGenerators& g) {
  std::vector<std::pair<std::string, WeylOperator>> out;
  for (int k = 0; k < 3; ++k) out.emplace_back("J" + std::to_string(k + 1), g.J[k]);
  for (int k = 0; k < 3; ++k) out.emplace_back("K" + std::to_string(k + 1), g.K[k]);
  for (int k = 0; k < 4; ++k) out.emplace_back("P" + std::to_string(k), g.P[k]);
  for (const auto& s : g.su) out.emplace_back(s.label, s.op);
  return out;
}

json state_json(const qsim::ExactState& s) {
  json rows = json::array();
  for (const auto& [k, a] : s.terms()) rows.push_back({{"ket", k.to_string()}, {"amplitude", a.to_string()}});
  return rows;
}

json scenario_json(const qsim::ScenarioReport& r) {
  json j;
  j["check_id"] = "sim/" + r.scenario;
  j["scenario"] = r.scenario;
  json as = json::array();
  for (const auto& a : r.assertions) as.push_back({{"name", a.name}, {"passed", a.passed}});
  j["assertions"] = as;
  json bs = json::array();
  for (const auto& b : r.branches)
    bs.push_back({{"amplitude", b.amplitude.to_string()}, {"labels", b.labels}, {"records", b.records}});
  j["branches"] = bs;
  json tl = json::array();
  for (const auto& s : r.timeline) tl.push_back(state_json(s));
  j["timeline"] = tl;
  return j;
}

}  // namespace

json config_to_json(const RunConfig& cfg) {
  json c = json::array();
  for (const auto& row : cfg.c) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    c.push_back(r);
  }
  return {{"n", cfg.n},
          {"sets", cfg.sets},
          {"c", c},
          {"degree", cfg.degree},
          {"tolerance", cfg.tolerance},
          {"pit_trials", cfg.pit_trials},
          {"exact", cfg.exact},
          {"seed", cfg.seed},
          {"count", cfg.count},
          {"theta", cfg.theta},
          {"phase", cfg.phase},
          {"metric", cfg.metric},
          {"timings", cfg.timings}};
}

RunConfig config_from_json(const json& j, RunConfig cfg) {
  if (!j.is_object()) throw DomainError("config must be a flat JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "n") cfg.n = v.get<int>();
      else if (key == "sets") cfg.sets = v.get<int>();
      else if (key == "c") {
        cfg.c.clear();
        for (const auto& row : v) {
          std::vector<mpq_class> r;
          for (const auto& x : row) {
            mpq_class q(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>()));
            q.canonicalize();
            r.push_back(q);
          }
          cfg.c.push_back(r);
        }
      } else if (key == "degree") cfg.degree = v.get<int>();
      else if (key == "tolerance") cfg.tolerance = v.get<double>();
      else if (key == "pit_trials") cfg.pit_trials = v.get<int>();
      else if (key == "exact") cfg.exact = v.get<bool>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "count") cfg.count = v.get<int>();
      else if (key == "theta") cfg.theta = v.get<double>();
      else if (key == "phase") cfg.phase = v.get<std::string>();
      else if (key == "metric") cfg.metric = v.get<std::string>();
      else if (key == "timings") cfg.timings = v.get<bool>();
      else throw DomainError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw DomainError(std::string("bad rational in c: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

std::vector<std::vector<mpq_class>> parse_c_matrix(const std::string& text) {
  const bool inline_form = text.find_first_not_of("0123456789/,; -+") == std::string::npos;
  if (!inline_form) {
    std::ifstream in(text);
    if (!in) throw DomainError("cannot open c matrix file '" + text + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw DomainError("c matrix file is not JSON: " + std::string(e.what()));
    }
    return config_from_json(json{{"c", j}}).c;
  }
  std::vector<std::vector<mpq_class>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<mpq_class> r;
    std::stringstream es(row);
    std::string e;
    while (std::getline(es, e, ',')) {
      const auto b = e.find_first_not_of(' '), t = e.find_last_not_of(' ');
      if (b == std::string::npos) throw DomainError("empty entry in c matrix");
      std::string tok = e.substr(b, t - b + 1);
      if (tok[0] == '+') tok.erase(0, 1);
      mpq_class q;
      if (q.set_str(tok, 10) != 0) throw DomainError("bad rational '" + tok + "' in c matrix");
      if (q.get_den() == 0) throw DomainError("zero denominator in c matrix");
      q.canonicalize();
      r.push_back(q);
    }
    rows.push_back(r);
  }
  return rows;
}

ModelConfig model_config(const RunConfig& cfg) {
  validate(cfg);
  ModelConfig m;
  m.n = cfg.n;
  m.sets = cfg.sets;
  m.c = cfg.c;
  m.metric = cfg.metric == "euclidean" ? Metric::Euclidean : Metric::Minkowski;
  m.phase = cfg.phase == "imaginary" ? InvariantPhase::Imaginary : InvariantPhase::Printed;
  m.validate();
  return m;
}

json suite_to_json(const SuiteResult& s) {
  json j{{"suite", s.suite},  {"passed", s.passed},     {"failed", s.failed},
         {"deviates", s.deviates}, {"controls", s.controls}, {"reports", s.reports}};
  if (!s.skipped.empty()) j["skipped"] = s.skipped;
  return j;
}

std::vector<SuiteResult> cmd_check(const std::string& suite, const RunConfig& cfg) {
  static const std::vector<std::string> kAll = {"algebra", "invariance", "su", "adjoints", "x-functions", "interaction"};
  std::vector<std::string> names;
  if (suite == "all") names = kAll;
  else if (std::find(kAll.begin(), kAll.end(), suite) != kAll.end()) names = {suite};
  else throw DomainError("unknown check suite '" + suite + "'");

  const ModelConfig mc = model_config(cfg);
  const bool have_x = mc.has_nonzero_c();
  const bool have_interaction = have_x && mc.sets >= 2;
  if (suite == "su" && mc.n < 2) throw DomainError("su needs n >= 2 (su(1) has no generators)");
  if (suite == "x-functions" && !have_x) throw DomainError("x-functions need a nonzero c (n >= 2)");
  if (suite == "interaction" && !have_interaction) throw DomainError("interaction needs sets >= 2 and a nonzero c");

  CatalogOptions copts;
  copts.with_x = have_x;
  copts.with_interaction = have_interaction;
  const GeneratorCatalog cat = load_or_build_catalog(mc, copts);
  const VerifyOptions vo = verify_options(cfg);

  std::vector<SuiteResult> out;
  for (const auto& name : names) {
    SuiteResult s;
    s.suite = name;
    if (name == "algebra") {
      tally(s, check_lorentz_algebra(cat, vo));
      tally(s, check_poincare(cat, vo));
    } else if (name == "invariance") {
      tally(s, check_O_invariance(cat, vo));
    } else if (name == "su") {
      if (mc.n < 2) {
        s.skipped.push_back("su: su(1) has no generators");
      } else {
        tally(s, check_su_invariance(cat, vo));
      }
    } else if (name == "adjoints") {
      tally(s, check_hermiticity(cat, vo));
      const auto& g = cat.set(1);
      const GaussianState st = solve_gaussian_ground(g.O1);
      for (const auto& [label, op] : named_generators(g)) {
        const auto r = adjoint_crosscheck(op, st, cfg.degree);
        CheckReport rep;
        rep.check_id = "adjoints/gram/" + label;
        rep.status = r.max_deviation < kAdjointTolerance ? Status::Pass : Status::Fail;
        rep.expected = "max deviation < " + sci(kAdjointTolerance);
        rep.computed = sci(r.max_deviation) + " over " + std::to_string(r.pairs_compared) + " pairs";
        tally(s, rep);
      }
    } else if (name == "x-functions") {
      if (!have_x) {
        s.skipped.push_back("x-functions: c is zero");
      } else {
        tally(s, check_x_commutators(cat, vo));
      }
    } else if (name == "interaction") {
      if (!have_interaction) {
        s.skipped.push_back("interaction: needs sets >= 2 and a nonzero c");
      } else {
        tally(s, check_interaction_invariance(cat, vo));
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SuiteResult> cmd_solve(const std::string& what, const RunConfig& cfg) {
  if (what != "ground" && what != "spectrum" && what != "scaling") throw DomainError("unknown solve target '" + what + "'");
  const ModelConfig mc = model_config(cfg);
  CatalogOptions copts;
  copts.with_x = false;
  copts.with_interaction = false;
  copts.with_su = what == "scaling";
  const GeneratorCatalog cat = load_or_build_catalog(mc, copts);
  const auto& g = cat.set(1);

  SuiteResult s;
  s.suite = what;
  if (what == "ground") {
    const GaussianState st = solve_gaussian_ground(g.O1, GroundPolicy::Normalizable);
    const ResidualReport res = ground_residual(g.O1, st);
    json r{{"check_id", "ground/residual"},
           {"policy", "normalizable"},
           {"eigenvalue", complex_json(st.eigenvalue)},
           {"normalizable", st.normalizable},
           {"min_real_eigenvalue", rounded(st.min_real_eigenvalue)},
           {"riccati_residual", sci(st.riccati_residual)},
           {"max_residual", sci(res.max_residual)},
           {"residual_terms", res.residual_terms},
           {"tolerance", cfg.tolerance}};
    json M = json::array();
    for (Eigen::Index a = 0; a < st.M.rows(); ++a)
      for (Eigen::Index b = a; b < st.M.cols(); ++b)
        if (std::abs(st.M(a, b)) > 1e-12)
          M.push_back({{"row", st.vars[a].name()}, {"col", st.vars[b].name()}, {"value", complex_json(st.M(a, b))}});
    r["M_nonzero"] = M;
    try {
      const GaussianState dec = solve_gaussian_ground(g.O1, GroundPolicy::Decaying);
      r["decaying_branch"] = {{"eigenvalue", complex_json(dec.eigenvalue)}, {"normalizable", dec.normalizable}};
    } catch (const NumericalError& e) {
      r["decaying_branch"] = {{"error", e.what()}};
    }
    tally_json(s, r, st.normalizable && res.max_residual < cfg.tolerance);
  } else if (what == "spectrum") {
    const GaussianState st = solve_gaussian_ground(g.O1);
    const std::vector<WeylOperator> ops{casimir(g.J), g.J[2]};
    for (int d = 0; d <= cfg.degree; ++d) {
      const auto mlts = spectrum(ops, st, d);
      json rows = json::array();
      bool labelled = true;
      for (const auto& m : mlts) {
        labelled = labelled && m.spin >= 0 && std::abs(m.eigenvalues[0] - m.spin * (m.spin + 1)) < 1e-8;
        rows.push_back({{"spin", m.spin},
                        {"J2", rounded(m.eigenvalues[0])},
                        {"J3", rounded(m.eigenvalues[1])},
                        {"multiplicity", m.multiplicity}});
      }
      tally_json(s, {{"check_id", "spectrum/degree-" + std::to_string(d)}, {"multiplets", rows}}, labelled);
    }
  } else {
    const ScalingSolution sol = find_scaling_generator(cat);
    json basis = json::array();
    for (std::size_t k = 0; k < sol.basis.size(); ++k)
      basis.push_back({{"lambda_prime", sol.lambda_prime[k].to_string()}, {"operator", sol.basis[k].to_string()}});
    json r{{"check_id", "scaling/search"},
           {"unknowns", sol.unknowns},
           {"equations", sol.equations},
           {"rank", sol.rank},
           {"homogeneous_dimension", sol.homogeneous_dimension},
           {"scaling_sector", sol.scaling_sector_nonempty ? "nonempty" : "empty"},
           {"verified", sol.verified},
           {"basis", basis}};
    tally_json(s, r, sol.verified);
  }
  return {s};
}

std::vector<SuiteResult> cmd_sim(const std::string& what, const RunConfig& cfg) {
  validate(cfg);
  using namespace qsim;
  SuiteResult s;
  s.suite = what;
  if (what == "stern-gerlach") {
    for (int obs : {1, 2}) {
      const auto r = stern_gerlach_scenario(ExactScalar::rational(3, 5), ExactScalar::rational(4, 5), obs);
      tally_json(s, scenario_json(r), r.all_passed());
    }
  } else if (what == "detectors") {
    const auto amps = random_unit_amplitudes(cfg.count, cfg.seed);
    const auto r = detector_array_scenario(cfg.count, amps);
    tally_json(s, scenario_json(r), r.all_passed() && r.branches.size() == static_cast<std::size_t>(cfg.count));
  } else if (what == "bell") {
    const auto p = bell_probabilities(cfg.theta);
    const double s2 = std::sin(cfg.theta) * std::sin(cfg.theta) / 2, c2 = std::cos(cfg.theta) * std::cos(cfg.theta) / 2;
    const std::array<double, 4> closed{s2, c2, c2, s2};
    double dev = 0, sum = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      dev = std::max(dev, std::abs(p[k] - closed[k]));
      sum += p[k];
    }
    json r{{"check_id", "bell/probabilities"},
           {"theta", cfg.theta},
           {"probabilities", {{"++", rounded(p[0])}, {"+-", rounded(p[1])}, {"-+", rounded(p[2])}, {"--", rounded(p[3])}}},
           {"sum", rounded(sum)},
           {"max_deviation_from_closed_form", sci(dev)}};
    tally_json(s, r, dev < kBellTolerance && std::abs(sum - 1) < kBellTolerance);
  } else if (what == "chsh") {
    const double pi = std::numbers::pi;
    const int classical = chsh_classical_bound();
    tally_json(s, {{"check_id", "chsh/classical-bound"}, {"value", classical}, {"strategies", 16}}, classical == 2);
    const double q = chsh(0, pi / 4, pi / 8, 3 * pi / 8);
    tally_json(s,
               {{"check_id", "chsh/quantum-optimal"},
                {"angles", {"0", "pi/4", "pi/8", "3pi/8"}},
                {"value", rounded(q)},
                {"abs_value", rounded(std::abs(q))}},
               std::abs(std::abs(q) - 2 * std::sqrt(2.0)) < kChshTolerance);
    const double d = chsh(0, 0, 0, 0);
    tally_json(s, {{"check_id", "chsh/equal-angles"}, {"value", rounded(d)}}, std::abs(std::abs(d) - 2) < kChshTolerance);
  } else if (what == "antisym") {
    auto two = [](const Label& a, const Label& b) { return ExactState({{1, a}, {2, b}}, 1); };
    const ExactState once = antisymmetrize(two("a", "b"), {1, 2});
    const ExactState pair = antisymmetrize(two("rA,1/2", "rB,1/2"), {1, 2});
    const std::vector<std::pair<std::string, bool>> asserts = {
        {"identical_labels_vanish", antisymmetrize(two("a", "a"), {1, 2}).is_zero()},
        {"reapplication_doubles", antisymmetrize(once, {1, 2}) == ExactScalar(2) * once},
        {"alternates_under_swap", antisymmetrize(two("b", "a"), {1, 2}) == ExactScalar(-1) * once},
        {"symmetric_input_vanishes", antisymmetrize(two("a", "b") + two("b", "a"), {1, 2}).is_zero()},
        {"distinct_position_spin_nonzero",
         pair.size() == 2 && pair.amplitude({{1, "rA,1/2"}, {2, "rB,1/2"}}) == ExactScalar(1) &&
             pair.amplitude({{1, "rB,1/2"}, {2, "rA,1/2"}}) == ExactScalar(-1)}};
    json as = json::array();
    bool ok = true;
    for (const auto& [name, passed] : asserts) {
      as.push_back({{"name", name}, {"passed", passed}});
      ok = ok && passed;
    }
    tally_json(s, {{"check_id", "sim/antisym"}, {"assertions", as}, {"example", state_json(pair)}}, ok);
  } else {
    throw DomainError("unknown sim scenario '" + what + "'");
  }
  return {s};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification workbench for the pre-representational operator model", "prerep"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string c_text, config_path, what;
  struct Bound {
    CLI::Option* opt;
    void (*apply)(RunConfig&, const RunConfig&);
  };
  std::vector<std::pair<CLI::App*, std::vector<Bound>>> bound;

  auto add_common = [&](CLI::App* sub) {
    std::vector<Bound> b;
    b.push_back({sub->add_option("--n", flags.n, "Internal symmetry dimension n (default 2)"),
                 [](RunConfig& c, const RunConfig& f) { c.n = f.n; }});
    b.push_back({sub->add_option("--sets", flags.sets, "Number of variable sets N (default 2)"),
                 [](RunConfig& c, const RunConfig& f) { c.sets = f.sets; }});
    sub->add_option("--c", c_text, "Antisymmetric c matrix: inline \"0,1;-1,0\" or a JSON file of rows");
    b.push_back({sub->add_option("--degree", flags.degree, "Truncation / sector degree (default 2)"),
                 [](RunConfig& c, const RunConfig& f) { c.degree = f.degree; }});
    b.push_back({sub->add_option("--tolerance", flags.tolerance, "Numerical tolerance (default 1e-10)"),
                 [](RunConfig& c, const RunConfig& f) { c.tolerance = f.tolerance; }});
    b.push_back({sub->add_option("--pit-trials", flags.pit_trials, "Random evaluations per identity-test seed (default 5)"),
                 [](RunConfig& c, const RunConfig& f) { c.pit_trials = f.pit_trials; }});
    b.push_back({sub->add_flag("--exact,!--no-exact", flags.exact, "Decide verdicts by exact cancellation (default on)"),
                 [](RunConfig& c, const RunConfig& f) { c.exact = f.exact; }});
    b.push_back({sub->add_option("--seed", flags.seed, "Base random seed (default 1)"),
                 [](RunConfig& c, const RunConfig& f) { c.seed = f.seed; }});
    sub->add_option("--out", flags.out, "Write the JSON report to this file");
    b.push_back({sub->add_option("--count", flags.count, "Detector count for sim detectors (default 5)"),
                 [](RunConfig& c, const RunConfig& f) { c.count = f.count; }});
    b.push_back({sub->add_option("--theta", flags.theta, "Analyzer angle in radians for sim bell (default pi/3)"),
                 [](RunConfig& c, const RunConfig& f) { c.theta = f.theta; }});
    b.push_back({sub->add_option("--phase", flags.phase, "Reading of the invariant in x_mu: printed or imaginary")
                     ->check(CLI::IsMember({"printed", "imaginary"})),
                 [](RunConfig& c, const RunConfig& f) { c.phase = f.phase; }});
    b.push_back({sub->add_option("--metric", flags.metric, "Sign convention for s: minkowski or euclidean")
                     ->check(CLI::IsMember({"minkowski", "euclidean"})),
                 [](RunConfig& c, const RunConfig& f) { c.metric = f.metric; }});
    b.push_back({sub->add_flag("--timings", flags.timings, "Record elapsed_ms per check (breaks byte-identical output)"),
                 [](RunConfig& c, const RunConfig& f) { c.timings = f.timings; }});
    sub->add_option("--config", config_path, "Flat JSON config file; flags given on the command line win");
    bound.emplace_back(sub, std::move(b));
  };

  auto* check = app.add_subcommand("check", "Run exact verification suites");
  check->add_option("suite", what, "algebra | invariance | su | adjoints | x-functions | interaction | all")
      ->required()
      ->check(CLI::IsMember({"algebra", "invariance", "su", "adjoints", "x-functions", "interaction", "all"}));
  add_common(check);
  auto* solve = app.add_subcommand("solve", "Oscillator and scaling-generator solvers");
  solve->add_option("target", what, "ground | spectrum | scaling")
      ->required()
      ->check(CLI::IsMember({"ground", "spectrum", "scaling"}));
  add_common(solve);
  auto* sim = app.add_subcommand("sim", "Finite-label state simulations");
  sim->add_option("scenario", what, "stern-gerlach | detectors | bell | chsh | antisym")
      ->required()
      ->check(CLI::IsMember({"stern-gerlach", "detectors", "bell", "chsh", "antisym"}));
  add_common(sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* used = check->parsed() ? check : solve->parsed() ? solve : sim;
  std::vector<SuiteResult> suites;
  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw DomainError("cannot open config '" + config_path + "'");
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw DomainError("config is not JSON: " + std::string(e.what()));
      }
      cfg = config_from_json(j);
    }
    for (const auto& [sub, bs] : bound)
      if (sub == used)
        for (const auto& b : bs)
          if (b.opt->count() > 0) b.apply(cfg, flags);
    if (!c_text.empty()) cfg.c = parse_c_matrix(c_text);
    cfg.out = flags.out;
    validate(cfg);

    if (used == check) suites = cmd_check(what, cfg);
    else if (used == solve) suites = cmd_solve(what, cfg);
    else suites = cmd_sim(what, cfg);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kCheckFailed;
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = used->get_name() + " " + what;
  doc["config"] = config_to_json(cfg);
  json arr = json::array();
  int passed = 0, failed = 0, deviates = 0, controls = 0;
  for (const auto& s : suites) {
    arr.push_back(suite_to_json(s));
    passed += s.passed;
    failed += s.failed;
    deviates += s.deviates;
    controls += s.controls;
  }
  doc["suites"] = arr;
  doc["totals"] = {{"passed", passed}, {"failed", failed}, {"deviates", deviates}, {"controls", controls}};

  std::ostream* table = &err;
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kUsage;
    }
    f << doc.dump(2) << "\n";
    table = &out;
  } else {
    out << doc.dump(2) << "\n";
  }
  char line[160];
  for (const auto& s : suites) {
    std::snprintf(line, sizeof line, "%-14s passed %4d  failed %3d  deviates %3d  controls %2d\n", s.suite.c_str(),
                  s.passed, s.failed, s.deviates, s.controls);
    *table << line;
    for (const auto& sk : s.skipped) *table << "  skipped " << sk << "\n";
  }
  return failed == 0 ? kOk : kCheckFailed;
}

}  // namespace prerep::cli
