#include "prerep/qsim.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace prerep::qsim {

const Label& ProductKet::label(int df) const {
  auto it = factors_.find(df);
  if (it == factors_.end()) throw DomainError("ket " + to_string() + " has no df " + std::to_string(df));
  return it->second;
}

ProductKet ProductKet::with(int df, Label label) const {
  if (df < 1) throw DomainError("df index must be >= 1");
  ProductKet out = *this;
  out.factors_[df] = std::move(label);
  return out;
}

std::string ProductKet::to_string() const {
  std::string s;
  for (const auto& [df, l] : factors_) s += "|" + l + ">_" + std::to_string(df);
  return s;
}

InteractionRule::InteractionRule(std::vector<int> touched, std::map<Assignment, Image> mapping)
    : touched_(std::move(touched)), mapping_(std::move(mapping)) {
  std::set<int> seen;
  for (int df : touched_) {
    if (df < 1) throw DomainError("df index must be >= 1");
    if (!seen.insert(df).second) throw DomainError("df " + std::to_string(df) + " listed twice in rule");
  }
  // a bijection on the full label space that fixes everything unlisted must
  // permute the listed assignments among themselves
  std::set<Assignment> images;
  for (const auto& [in, img] : mapping_) {
    if (in.size() != touched_.size() || img.labels.size() != touched_.size())
      throw DomainError("rule assignment arity does not match touched dfs");
    if (img.phase.norm2() != 1) throw DomainError("rule phase " + img.phase.to_string() + " is not unit modulus");
    if (!images.insert(img.labels).second) throw DomainError("rule is not injective");
  }
  for (const auto& img : images)
    if (!mapping_.count(img)) throw DomainError("rule is not a bijection: image not in domain");
}

InteractionRule InteractionRule::swap(std::vector<int> touched,
                                      const std::vector<std::pair<Assignment, Assignment>>& pairs) {
  std::map<Assignment, Image> m;
  for (const auto& [a, b] : pairs) {
    if (m.count(a) || m.count(b)) throw DomainError("assignment swapped twice");
    m[a] = {b, 1};
    m[b] = {a, 1};
  }
  return {std::move(touched), std::move(m)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Stage = std::vector<InteractionRule>;

ExactState run_stage(ExactState s, const Stage& st) {
  for (const auto& r : st) s = evolve(s, r);
  return s;
}

void add_assert(ScenarioReport& r, std::string name, bool ok) { r.assertions.push_back({std::move(name), ok}); }

// Builds the timeline and the checks shared by all scenarios: norm
// conservation, branch isolation and orthogonality of isolated branches.
void run_scenario(ScenarioReport& rep, const ExactState& initial, const std::vector<Stage>& stages) {
  rep.timeline.push_back(initial);
  for (const auto& st : stages) rep.timeline.push_back(run_stage(rep.timeline.back(), st));

  const ExactScalar n0 = initial.norm2();
  bool norm_ok = true;
  for (const auto& s : rep.timeline) norm_ok = norm_ok && s.norm2() == n0;
  add_assert(rep, "norm_conserved", norm_ok);

  std::vector<ExactState> isolated;
  for (const auto& [k, a] : initial.terms()) isolated.emplace_back(k, a);
  bool orth_ok = true;
  auto check_orth = [&] {
    for (std::size_t i = 0; i < isolated.size(); ++i)
      for (std::size_t j = i + 1; j < isolated.size(); ++j) orth_ok = orth_ok && isolated[i].inner(isolated[j]).is_zero();
  };
  check_orth();
  for (const auto& st : stages) {
    for (auto& s : isolated) s = run_stage(s, st);
    check_orth();
  }
  add_assert(rep, "branches_stay_orthogonal", orth_ok);

  const ExactState& fin = rep.timeline.back();
  bool iso_ok = true;
  ExactState sum;
  for (const auto& s : isolated) {
    iso_ok = iso_ok && s.size() == 1 && fin.amplitude(s.terms().begin()->first) == s.terms().begin()->second;
    sum += s;
  }
  add_assert(rep, "branch_isolation", iso_ok && sum == fin);

  std::set<int> obs(rep.observer_dfs.begin(), rep.observer_dfs.end());
  for (const auto& [k, a] : fin.terms()) {
    Branch b{a, {}, {}};
    for (const auto& [df, l] : k.factors()) {
      const std::string& name = rep.df_names.at(static_cast<std::size_t>(df - 1));
      (obs.count(df) ? b.records : b.labels)[name] = l;
    }
    rep.branches.push_back(std::move(b));
  }
}

std::size_t nonzero_count(const std::vector<ExactScalar>& v) {
  std::size_t n = 0;
  for (const auto& a : v) n += a.is_zero() ? 0 : 1;
  return n;
}

}  // namespace

bool ScenarioReport::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

ScenarioReport stern_gerlach_scenario(const ExactScalar& a1, const ExactScalar& a2, int observers) {
  if (observers < 1 || observers > 2) throw DomainError("stern-gerlach supports one or two observers");
  ScenarioReport rep;
  rep.scenario = observers == 1 ? "stern-gerlach" : "stern-gerlach-two-observers";
  rep.df_names = {"S", "D1", "D2", "Obs"};
  rep.observer_dfs = {4};
  if (observers == 2) {
    rep.df_names = {"S", "D1", "D2", "Obs1", "Obs2"};
    rep.observer_dfs = {4, 5};
  }

  ExactState t1;
  for (int path = 1; path <= 2; ++path) {
    ProductKet k{{1, std::to_string(path)}, {2, "no"}, {3, "no"}};
    for (int o : rep.observer_dfs) k = k.with(o, "ready");
    t1.add(k, path == 1 ? a1 : a2);
  }
  Stage detect{InteractionRule::swap({1, 2}, {{{"1", "no"}, {"1", "yes"}}}),
               InteractionRule::swap({1, 3}, {{{"2", "no"}, {"2", "yes"}}})};
  Stage perceive;
  for (int o : rep.observer_dfs)
    perceive.push_back(InteractionRule::swap({2, 3, o}, {{{"yes", "no", "ready"}, {"yes", "no", "yes,no"}},
                                                         {{"no", "yes", "ready"}, {"no", "yes", "no,yes"}}}));
  run_scenario(rep, t1, {detect, perceive});

  const std::size_t expected = nonzero_count({a1, a2});
  bool count_ok = true;
  for (const auto& s : rep.timeline) count_ok = count_ok && s.size() == expected;
  add_assert(rep, "branch_count_each_stage", count_ok);

  bool match = true, exclusive = true, agree = true;
  for (std::size_t i = 0; i < rep.branches.size(); ++i) {
    const auto& b = rep.branches[i];
    const std::string reading = b.labels.at("D1") + "," + b.labels.at("D2");
    for (const auto& [name, rec] : b.records) {
      match = match && rec == reading;
      for (std::size_t j = 0; j < rep.branches.size(); ++j) {
        if (j == i) continue;
        const auto& o = rep.branches[j];
        exclusive = exclusive && rec != o.labels.at("D1") + "," + o.labels.at("D2");
      }
      agree = agree && rec == b.records.begin()->second;
    }
  }
  add_assert(rep, "records_match_readings", match);
  add_assert(rep, "records_exclude_other_branches", exclusive);
  if (observers == 2) add_assert(rep, "observers_agree", agree);
  return rep;
}

ScenarioReport detector_array_scenario(int count, const std::vector<ExactScalar>& amplitudes) {
  if (count < 1) throw DomainError("detector count must be >= 1");
  if (amplitudes.size() != static_cast<std::size_t>(count))
    throw DomainError("expected " + std::to_string(count) + " amplitudes, got " + std::to_string(amplitudes.size()));
  mpq_class total = 0;
  for (const auto& a : amplitudes) total += a.norm2();
  if (std::abs(mpq_class(total - 1).get_d()) > 1e-12)
    throw DomainError("amplitudes are not normalized: sum |a|^2 = " + total.get_str());

  ScenarioReport rep;
  rep.scenario = "detectors";
  rep.df_names = {"S"};
  for (int j = 1; j <= count; ++j) rep.df_names.push_back("D" + std::to_string(j));

  ExactState init;
  for (int j = 1; j <= count; ++j) {
    ProductKet k{{1, std::to_string(j)}};
    for (int d = 1; d <= count; ++d) k = k.with(d + 1, "no");
    init.add(k, amplitudes[j - 1]);
  }
  Stage detect;
  for (int j = 1; j <= count; ++j)
    detect.push_back(InteractionRule::swap({1, j + 1}, {{{std::to_string(j), "no"}, {std::to_string(j), "yes"}}}));
  run_scenario(rep, init, {detect});

  add_assert(rep, "branch_count", rep.branches.size() == nonzero_count(amplitudes));
  bool one_yes = true, at_source = true, amps = true;
  for (const auto& b : rep.branches) {
    int yes = 0;
    const std::string src = b.labels.at("S");
    for (int d = 1; d <= count; ++d) {
      const bool y = b.labels.at("D" + std::to_string(d)) == "yes";
      yes += y ? 1 : 0;
      if (y) at_source = at_source && std::to_string(d) == src;
    }
    one_yes = one_yes && yes == 1;
    amps = amps && b.amplitude == amplitudes[std::stoul(src) - 1];
  }
  add_assert(rep, "one_yes_per_branch", one_yes);
  add_assert(rep, "yes_at_source_position", at_source);
  add_assert(rep, "amplitudes_preserved", amps);
  return rep;
}

ScenarioReport trajectory_scenario(int layers, int count,
                                   const std::vector<std::pair<std::vector<int>, ExactScalar>>& paths) {
  if (layers < 1 || count < 1) throw DomainError("layers and count must be >= 1");
  auto path_label = [](const std::vector<int>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + std::to_string(p[i]);
    return s;
  };
  auto det_df = [&](int layer, int k) { return 2 + layer * count + (k - 1); };

  ScenarioReport rep;
  rep.scenario = "trajectory";
  rep.df_names = {"S"};
  for (int l = 0; l < layers; ++l)
    for (int k = 1; k <= count; ++k) rep.df_names.push_back("L" + std::to_string(l + 1) + "D" + std::to_string(k));

  ExactState init;
  for (const auto& [p, a] : paths) {
    if (p.size() != static_cast<std::size_t>(layers)) throw DomainError("path length must equal the layer count");
    for (int k : p)
      if (k < 1 || k > count) throw DomainError("path visits detector " + std::to_string(k) + " out of range");
    ProductKet ket{{1, path_label(p)}};
    for (int l = 0; l < layers; ++l)
      for (int k = 1; k <= count; ++k) ket = ket.with(det_df(l, k), "no");
    init.add(ket, a);
  }
  std::vector<Stage> stages;
  for (int l = 0; l < layers; ++l) {
    Stage st;
    for (int k = 1; k <= count; ++k) {
      std::vector<std::pair<InteractionRule::Assignment, InteractionRule::Assignment>> pairs;
      for (const auto& [p, a] : paths)
        if (p[l] == k) pairs.push_back({{path_label(p), "no"}, {path_label(p), "yes"}});
      st.push_back(InteractionRule::swap({1, det_df(l, k)}, pairs));
    }
    stages.push_back(std::move(st));
  }
  run_scenario(rep, init, stages);

  bool ok = true;
  for (const auto& b : rep.branches) {
    const std::string path = b.labels.at("S");
    std::string seen;
    for (int l = 0; l < layers; ++l) {
      int yes = 0, where = 0;
      for (int k = 1; k <= count; ++k)
        if (b.labels.at(rep.df_names[static_cast<std::size_t>(det_df(l, k) - 1)]) == "yes") ++yes, where = k;
      ok = ok && yes == 1;
      seen += (l ? "." : "") + std::to_string(where);
    }
    ok = ok && seen == path;
  }
  add_assert(rep, "one_yes_per_layer_along_path", ok);
  return rep;
}

std::vector<ExactScalar> random_unit_amplitudes(int count, std::uint64_t seed) {
  if (count < 1) throw DomainError("count must be >= 1");
  const int dim = 2 * count;
  std::uint64_t st = seed;
  std::vector<mpq_class> t(static_cast<std::size_t>(dim - 1));
  mpq_class r2 = 0;
  for (auto& v : t) {
    const long num = static_cast<long>(splitmix64(st) % 41) - 20;
    const long den = static_cast<long>(splitmix64(st) % 20) + 1;
    v = mpq_class(num, den);
    v.canonicalize();
    r2 += v * v;
  }
  // inverse stereographic projection onto the unit sphere in R^dim
  std::vector<mpq_class> x;
  for (const auto& v : t) x.push_back(2 * v / (r2 + 1));
  x.push_back((r2 - 1) / (r2 + 1));
  std::vector<ExactScalar> out;
  for (int j = 0; j < count; ++j) out.emplace_back(x[2 * j], x[2 * j + 1]);
  return out;
}

namespace {

FloatState polarization_singlet() {
  const double s = 1.0 / std::sqrt(2.0);
  FloatState psi({{1, "H"}, {2, "V"}}, s);
  psi.add({{1, "V"}, {2, "H"}}, -s);
  return psi;
}

FloatState analyzer_outcome(int df, double angle, bool plus) {
  FloatState v({{df, "H"}}, plus ? std::cos(angle) : -std::sin(angle));
  v.add({{df, "V"}}, plus ? std::sin(angle) : std::cos(angle));
  return v;
}

FloatState tensor(const FloatState& a, const FloatState& b) {
  FloatState out;
  for (const auto& [ka, xa] : a.terms())
    for (const auto& [kb, xb] : b.terms()) {
      ProductKet k = ka;
      for (const auto& [df, l] : kb.factors()) k = k.with(df, l);
      out.add(k, xa * xb);
    }
  return out;
}

std::array<double, 4> joint_probabilities(double a, double b) {
  const FloatState psi = polarization_singlet();
  std::array<double, 4> p{};
  int i = 0;
  for (bool pa : {true, false})
    for (bool pb : {true, false})
      p[static_cast<std::size_t>(i++)] = std::norm(tensor(analyzer_outcome(1, a, pa), analyzer_outcome(2, b, pb)).inner(psi));
  return p;
}

}  // namespace

std::array<double, 4> bell_probabilities(double theta) { return joint_probabilities(0.0, theta); }

double singlet_correlation(double a, double b) {
  const auto p = joint_probabilities(a, b);
  return p[0] - p[1] - p[2] + p[3];
}

double chsh(double a, double a_prime, double b, double b_prime) {
  return singlet_correlation(a, b) - singlet_correlation(a, b_prime) + singlet_correlation(a_prime, b) +
         singlet_correlation(a_prime, b_prime);
}

int chsh_classical_bound() {
  int best = 0;
  for (int mask = 0; mask < 16; ++mask) {
    auto val = [&](int bit) { return (mask >> bit) & 1 ? 1 : -1; };
    const int A = val(0), Ap = val(1), B = val(2), Bp = val(3);
    best = std::max(best, std::abs(A * B - A * Bp + Ap * B + Ap * Bp));
  }
  return best;
}

}  // namespace prerep::qsim
