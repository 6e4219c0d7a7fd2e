#include "prerep/catalog.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prerep/errors.hpp"

namespace prerep {

namespace {

using json = nlohmann::json;

constexpr int kMaxN = 32;
constexpr int kMaxSets = 16;

ExactScalar half() { return ExactScalar::rational(1, 2); }
ExactScalar ihalf() { return {0, mpq_class(1, 2)}; }

void add_bilinear(WeylOperator& op, VarId z, VarId w, const ExactScalar& c) {
  op.add_term({Monomial(z), Monomial(w)}, c);
}

void check_set(const ModelConfig& cfg, int set) {
  if (set < 1 || set > cfg.sets) {
    throw DomainError("set index " + std::to_string(set) + " outside 1.." + std::to_string(cfg.sets));
  }
}

PolyFunction pair_product(VarId a, VarId b, const ExactScalar& c) {
  return PolyFunction(Monomial::from_entries({{a, 1}, {b, 1}}), c);
}

PolyFunction plus_conjugate(const PolyFunction& p) { return p + p.conjugate(); }

}  // namespace

// ---- ExactMatrix ----

ExactScalar ExactMatrix::trace() const {
  ExactScalar t;
  for (int k = 0; k < n_; ++k) t += (*this)(k, k);
  return t;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix r(n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) r(a, b) = (*this)(b, a).conj();
  return r;
}

bool ExactMatrix::is_hermitian() const { return adjoint() == *this; }

bool ExactMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  ExactMatrix r(n_);
  for (int a = 0; a < n_; ++a)
    for (int k = 0; k < n_; ++k) {
      if ((*this)(a, k).is_zero()) continue;
      for (int b = 0; b < n_; ++b) r(a, b) += (*this)(a, k) * o(k, b);
    }
  return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  ExactMatrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

ExactMatrix ExactMatrix::scaled(const ExactScalar& s) const {
  ExactMatrix r(*this);
  for (auto& x : r.data_) x *= s;
  return r;
}

// ---- ModelConfig ----

void ModelConfig::validate() {
  if (n < 1 || n > kMaxN) throw DomainError("n must be in 1.." + std::to_string(kMaxN) + ", got " + std::to_string(n));
  if (sets < 1 || sets > kMaxSets) {
    throw DomainError("sets must be in 1.." + std::to_string(kMaxSets) + ", got " + std::to_string(sets));
  }
  if (c.empty()) {
    c.assign(n, std::vector<mpq_class>(n, 0));
    if (n >= 2) {
      c[0][1] = 1;
      c[1][0] = -1;
    }
    return;
  }
  if (static_cast<int>(c.size()) != n) throw DomainError("c must be " + std::to_string(n) + "x" + std::to_string(n));
  for (const auto& row : c) {
    if (static_cast<int>(row.size()) != n) {
      throw DomainError("c must be " + std::to_string(n) + "x" + std::to_string(n));
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (c[a][b] != -c[b][a]) {
        throw DomainError("c is not antisymmetric at (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
      }
}

bool ModelConfig::has_nonzero_c() const {
  for (const auto& row : c)
    for (const auto& x : row)
      if (sgn(x) != 0) return true;
  return false;
}

const SetGenerators& GeneratorCatalog::set(int m) const {
  for (const auto& s : sets)
    if (s.set == m) return s;
  throw DomainError("catalog has no set " + std::to_string(m));
}

// ---- generators ----

LorentzGenerators build_lorentz(const ModelConfig& cfg, int set) {
  check_set(cfg, set);
  LorentzGenerators g;
  const ExactScalar h = half();
  const ExactScalar ih = ihalf();
  for (int b = 1; b <= 2; ++b) {
    for (int i = 1; i <= cfg.n; ++i) {
      const VarId U = u(b, i, set), V = v(b, i, set), Ub = ubar(b, i, set), Vb = vbar(b, i, set);
      auto& [J1, J2, J3] = g.J;
      auto& [K1, K2, K3] = g.K;
      add_bilinear(J1, U, V, h);
      add_bilinear(J1, V, U, h);
      add_bilinear(J1, Ub, Vb, -h);
      add_bilinear(J1, Vb, Ub, -h);

      add_bilinear(J2, U, V, -ih);
      add_bilinear(J2, V, U, ih);
      add_bilinear(J2, Ub, Vb, -ih);
      add_bilinear(J2, Vb, Ub, ih);

      add_bilinear(J3, U, U, h);
      add_bilinear(J3, V, V, -h);
      add_bilinear(J3, Ub, Ub, -h);
      add_bilinear(J3, Vb, Vb, h);

      add_bilinear(K1, U, V, ih);
      add_bilinear(K1, V, U, ih);
      add_bilinear(K1, Ub, Vb, ih);
      add_bilinear(K1, Vb, Ub, ih);

      add_bilinear(K2, U, V, h);
      add_bilinear(K2, V, U, -h);
      add_bilinear(K2, Ub, Vb, -h);
      add_bilinear(K2, Vb, Ub, h);

      add_bilinear(K3, U, U, ih);
      add_bilinear(K3, V, V, -ih);
      add_bilinear(K3, Ub, Ub, ih);
      add_bilinear(K3, Vb, Vb, -ih);
    }
  }
  return g;
}

std::array<WeylOperator, 4> build_translations(const ModelConfig& cfg, int set) {
  check_set(cfg, set);
  std::array<WeylOperator, 4> P;
  const ExactScalar one(1), m1(-1), i = ExactScalar::i();
  for (int c = 1; c <= cfg.n; ++c) {
    const VarId u1 = u(1, c, set), v1 = v(1, c, set), ub1 = ubar(1, c, set), vb1 = vbar(1, c, set);
    const VarId u2 = u(2, c, set), v2 = v(2, c, set), ub2 = ubar(2, c, set), vb2 = vbar(2, c, set);
    add_bilinear(P[0], u1, vb2, m1);
    add_bilinear(P[0], v1, ub2, one);
    add_bilinear(P[0], ub1, v2, one);
    add_bilinear(P[0], vb1, u2, m1);

    add_bilinear(P[1], u1, ub2, m1);
    add_bilinear(P[1], v1, vb2, one);
    add_bilinear(P[1], ub1, u2, one);
    add_bilinear(P[1], vb1, v2, m1);

    add_bilinear(P[2], u1, ub2, i);
    add_bilinear(P[2], v1, vb2, i);
    add_bilinear(P[2], ub1, u2, i);
    add_bilinear(P[2], vb1, v2, i);

    add_bilinear(P[3], u1, vb2, one);
    add_bilinear(P[3], v1, ub2, one);
    add_bilinear(P[3], ub1, v2, m1);
    add_bilinear(P[3], vb1, u2, m1);
  }
  return P;
}

WeylOperator build_O1(const ModelConfig& cfg, int set) {
  check_set(cfg, set);
  WeylOperator O;
  auto dd = [&O](VarId a, VarId b, long c) { O.add_term({{}, Monomial::from_entries({{a, 1}, {b, 1}})}, c); };
  auto zz = [&O](VarId a, VarId b, long c) { O.add_term({Monomial::from_entries({{a, 1}, {b, 1}}), {}}, c); };
  for (int c = 1; c <= cfg.n; ++c) {
    const VarId u1 = u(1, c, set), v1 = v(1, c, set), ub1 = ubar(1, c, set), vb1 = vbar(1, c, set);
    const VarId u2 = u(2, c, set), v2 = v(2, c, set), ub2 = ubar(2, c, set), vb2 = vbar(2, c, set);
    dd(u1, v2, -1);
    dd(v1, u2, 1);
    dd(ub1, vb2, -1);
    dd(vb1, ub2, 1);
    zz(u1, v2, 1);
    zz(v1, u2, -1);
    zz(ub1, vb2, 1);
    zz(vb1, ub2, -1);
  }
  return O;
}

WeylOperator su_generator_linear(int n, int set, const ExactMatrix& T) {
  if (T.size() != n) throw DomainError("SU(n) matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  // Slots transforming in the fundamental, then in the conjugate representation.
  struct Slot {
    Letter letter;
    int doublet;
    bool conj;
  };
  static constexpr Slot fundamental[] = {
      {Letter::u, 1, false}, {Letter::v, 1, false}, {Letter::u, 2, true}, {Letter::v, 2, true}};
  static constexpr Slot antifundamental[] = {
      {Letter::u, 2, false}, {Letter::v, 2, false}, {Letter::u, 1, true}, {Letter::v, 1, true}};
  WeylOperator G;
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const ExactScalar& tjk = T(j - 1, k - 1);
      const ExactScalar& tkj = T(k - 1, j - 1);
      if (!tjk.is_zero()) {
        for (const auto& s : fundamental) {
          add_bilinear(G, VarId(set, s.letter, s.doublet, k, s.conj), VarId(set, s.letter, s.doublet, j, s.conj), tjk);
        }
      }
      if (!tkj.is_zero()) {
        for (const auto& s : antifundamental) {
          add_bilinear(G, VarId(set, s.letter, s.doublet, k, s.conj), VarId(set, s.letter, s.doublet, j, s.conj), -tkj);
        }
      }
    }
  }
  return G;
}

WeylOperator build_su_generator(const ModelConfig& cfg, int set, const ExactMatrix& T) {
  check_set(cfg, set);
  if (T.size() != cfg.n) throw DomainError("SU(n) matrix must be " + std::to_string(cfg.n) + "x" + std::to_string(cfg.n));
  if (!T.is_hermitian()) throw DomainError("SU(n) generator matrix is not Hermitian");
  if (!T.trace().is_zero()) throw DomainError("SU(n) generator matrix is not traceless");
  return su_generator_linear(cfg.n, set, T);
}

std::vector<std::pair<std::string, ExactMatrix>> su_basis(int n) {
  std::vector<std::pair<std::string, ExactMatrix>> out;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ExactMatrix s(n), a(n);
      s(j, k) = 1;
      s(k, j) = 1;
      a(j, k) = ExactScalar(0, -1);
      a(k, j) = ExactScalar::i();
      const std::string idx = std::to_string(j + 1) + "_" + std::to_string(k + 1);
      out.emplace_back("S" + idx, std::move(s));
      out.emplace_back("A" + idx, std::move(a));
    }
  }
  for (int l = 1; l < n; ++l) {
    ExactMatrix d(n);
    for (int k = 0; k < l; ++k) d(k, k) = 1;
    d(l, l) = ExactScalar(-l);
    out.emplace_back("D" + std::to_string(l), std::move(d));
  }
  return out;
}

XFunctions build_x(const ModelConfig& cfg, int set) {
  check_set(cfg, set);
  if (!cfg.has_nonzero_c()) throw DomainError("x functions need a nonzero entry in c");
  XFunctions x;
  const ExactScalar i = ExactScalar::i();
  PolyFunction bracket;
  std::array<PolyFunction, 4> half_numerators;
  for (int k = 1; k <= cfg.n; ++k) {
    for (int kp = 1; kp <= cfg.n; ++kp) {
      const ExactScalar ckk(cfg.c[k - 1][kp - 1]);
      std::array<PolyFunction, 4> zh;
      zh[0] = pair_product(u(2, k, set), ubar(1, kp, set), 1) + pair_product(v(2, k, set), vbar(1, kp, set), 1);
      zh[3] = pair_product(u(2, k, set), ubar(1, kp, set), 1) - pair_product(v(2, k, set), vbar(1, kp, set), 1);
      zh[1] = pair_product(u(2, k, set), vbar(1, kp, set), 1) + pair_product(v(2, k, set), ubar(1, kp, set), 1);
      zh[2] = pair_product(u(2, k, set), vbar(1, kp, set), -i) + pair_product(v(2, k, set), ubar(1, kp, set), i);
      std::array<PolyFunction, 4> z;
      for (int mu = 0; mu < 4; ++mu) z[mu] = plus_conjugate(zh[mu]);
      x.z.emplace(std::make_pair(k, kp), z);
      if (ckk.is_zero()) continue;
      bracket += pair_product(u(1, k, set), v(1, kp, set), ckk) - pair_product(v(1, k, set), u(1, kp, set), ckk);
      for (int mu = 0; mu < 4; ++mu) half_numerators[mu] += zh[mu] * ckk;
    }
  }
  if (cfg.phase == InvariantPhase::Imaginary) bracket *= i;
  x.invariant = plus_conjugate(bracket);
  if (x.invariant.is_zero()) throw DomainError("the invariant I vanishes identically for this c");
  for (int mu = 0; mu < 4; ++mu) {
    x.numerators[mu] = plus_conjugate(half_numerators[mu]);
    x.x[mu] = RationalFunction(x.numerators[mu], x.invariant);
  }
  return x;
}

std::vector<ExactScalar> InteractionDescriptor::shape_derivative() const {
  std::vector<ExactScalar> d;
  for (std::size_t k = 1; k < shape.size(); ++k) d.push_back(shape[k] * ExactScalar(static_cast<long>(k)));
  return d;
}

bool InteractionDescriptor::is_constant_shape() const {
  for (const auto& c : shape_derivative())
    if (!c.is_zero()) return false;
  return true;
}

RationalFunction InteractionDescriptor::materialize() const {
  std::size_t top = 0;
  for (std::size_t k = 0; k < shape.size(); ++k)
    if (!shape[k].is_zero()) top = k;
  const PolyFunction& num = s.numerator();
  const PolyFunction& den = s.denominator();
  PolyFunction total;
  for (std::size_t k = 0; k <= top && k < shape.size(); ++k) {
    if (shape[k].is_zero()) continue;
    total += num.pow(static_cast<unsigned>(k)) * den.pow(static_cast<unsigned>(top - k)) * shape[k];
  }
  return {total, den.pow(static_cast<unsigned>(top))};
}

InteractionDescriptor build_interaction(const ModelConfig& cfg, const XFunctions& xa, int set_a, const XFunctions& xb,
                                        int set_b, std::vector<ExactScalar> shape) {
  check_set(cfg, set_a);
  check_set(cfg, set_b);
  if (set_a == set_b) throw DomainError("interaction needs two distinct sets");
  if (shape.empty()) shape.emplace_back(0);
  InteractionDescriptor d;
  d.set_a = set_a;
  d.set_b = set_b;
  d.shape = std::move(shape);
  d.metric = cfg.metric;
  static constexpr long kMinkowski[4] = {1, -1, -1, -1};
  // s = sum_mu g_mu (N_a I_b - N_b I_a)^2 / (I_a I_b)^2
  PolyFunction num;
  for (int mu = 0; mu < 4; ++mu) {
    const PolyFunction diff = xa.numerators[mu] * xb.invariant - xb.numerators[mu] * xa.invariant;
    const long g = cfg.metric == Metric::Minkowski ? kMinkowski[mu] : 1;
    num += diff * diff * ExactScalar(g);
  }
  const PolyFunction den = xa.invariant * xb.invariant;
  d.s = RationalFunction(num, den * den);
  return d;
}

std::array<WeylOperator, 4> build_total_P(const ModelConfig& cfg) {
  std::array<WeylOperator, 4> total;
  for (int m = 1; m <= cfg.sets; ++m) {
    const auto P = build_translations(cfg, m);
    for (int mu = 0; mu < 4; ++mu) total[mu] += P[mu];
  }
  return total;
}

namespace {

// Operators come from `cached` (one JSON entry per set) when given, else are built.
GeneratorCatalog assemble_catalog(const ModelConfig& cfg, const CatalogOptions& opts, const nlohmann::json* cached) {
  GeneratorCatalog cat;
  cat.config = cfg;
  const bool want_x = opts.with_x && cfg.has_nonzero_c();
  for (int m = 1; m <= cfg.sets; ++m) {
    SetGenerators g;
    g.set = m;
    const auto basis = opts.with_su ? su_basis(cfg.n) : std::vector<std::pair<std::string, ExactMatrix>>{};
    if (cached != nullptr) {
      const auto& s = cached->at(static_cast<std::size_t>(m - 1));
      if (s.at("set").get<int>() != m) throw DomainError("cache set mismatch");
      for (int a = 0; a < 3; ++a) {
        g.J[a] = operator_from_json(s.at("J").at(a));
        g.K[a] = operator_from_json(s.at("K").at(a));
      }
      for (int a = 0; a < 4; ++a) g.P[a] = operator_from_json(s.at("P").at(a));
      g.O1 = operator_from_json(s.at("O1"));
      const auto& su = s.at("su");
      if (su.size() != basis.size()) throw DomainError("cache su size mismatch");
      for (std::size_t t = 0; t < basis.size(); ++t) {
        if (su[t].at("label").get<std::string>() != basis[t].first) throw DomainError("cache su label mismatch");
        g.su.push_back({basis[t].first, basis[t].second, operator_from_json(su[t].at("op"))});
      }
    } else {
      auto lorentz = build_lorentz(cfg, m);
      g.J = std::move(lorentz.J);
      g.K = std::move(lorentz.K);
      g.P = build_translations(cfg, m);
      g.O1 = build_O1(cfg, m);
      for (const auto& [label, T] : basis) g.su.push_back({label, T, build_su_generator(cfg, m, T)});
    }
    if (want_x) g.x = build_x(cfg, m);
    cat.sets.push_back(std::move(g));
  }
  for (int mu = 0; mu < 4; ++mu)
    for (const auto& g : cat.sets) cat.P_total[mu] += g.P[mu];
  if (want_x && opts.with_interaction && cfg.sets >= 2) {
    cat.interaction = build_interaction(cfg, *cat.sets[0].x, 1, *cat.sets[1].x, 2, opts.interaction_shape);
  }
  return cat;
}

}  // namespace

GeneratorCatalog build_catalog(ModelConfig cfg, const CatalogOptions& opts) {
  cfg.validate();
  return assemble_catalog(cfg, opts, nullptr);
}

// ---- JSON ----

namespace {

json monomial_json(const Monomial& m) {
  json arr = json::array();
  for (const auto& [v, e] : m.entries()) arr.push_back(json::array({v.name(), e}));
  return arr;
}

Monomial monomial_from_json(const json& j) {
  std::vector<Monomial::Entry> entries;
  for (const auto& e : j) entries.emplace_back(VarId::parse(e.at(0).get<std::string>()), e.at(1).get<std::uint32_t>());
  return Monomial::from_entries(std::move(entries));
}

json poly_json(const PolyFunction& p) {
  json arr = json::array();
  for (const auto& [m, c] : p.terms()) arr.push_back({{"coef", c.to_string()}, {"mul", monomial_json(m)}});
  return arr;
}

std::string metric_name(Metric m) { return m == Metric::Minkowski ? "minkowski" : "euclidean"; }
std::string phase_name(InvariantPhase p) { return p == InvariantPhase::Printed ? "printed" : "imaginary"; }

}  // namespace

json operator_to_json(const WeylOperator& op) {
  json arr = json::array();
  for (const auto& [m, c] : op.terms()) {
    arr.push_back({{"coef", c.to_string()}, {"mul", monomial_json(m.mul)}, {"der", monomial_json(m.der)}});
  }
  return arr;
}

WeylOperator operator_from_json(const json& j) {
  WeylOperator op;
  for (const auto& t : j) {
    op.add_term({monomial_from_json(t.at("mul")), monomial_from_json(t.at("der"))},
                ExactScalar::parse(t.at("coef").get<std::string>()));
  }
  return op;
}

json config_to_json(const ModelConfig& cfg) {
  json c = json::array();
  for (const auto& row : cfg.c) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    c.push_back(r);
  }
  return {{"n", cfg.n}, {"sets", cfg.sets}, {"c", c}, {"metric", metric_name(cfg.metric)},
          {"invariant_phase", phase_name(cfg.phase)}};
}

json catalog_to_json(const GeneratorCatalog& cat) {
  json sets = json::array();
  for (const auto& g : cat.sets) {
    json s;
    s["set"] = g.set;
    s["J"] = json::array();
    s["K"] = json::array();
    s["P"] = json::array();
    for (const auto& x : g.J) s["J"].push_back(operator_to_json(x));
    for (const auto& x : g.K) s["K"].push_back(operator_to_json(x));
    for (const auto& x : g.P) s["P"].push_back(operator_to_json(x));
    s["O1"] = operator_to_json(g.O1);
    json su = json::array();
    for (const auto& t : g.su) su.push_back({{"label", t.label}, {"op", operator_to_json(t.op)}});
    s["su"] = su;
    if (g.x) {
      json xs = json::array();
      for (const auto& n : g.x->numerators) xs.push_back(poly_json(n));
      s["x"] = {{"invariant", poly_json(g.x->invariant)}, {"numerators", xs}};
    }
    sets.push_back(std::move(s));
  }
  json out = {{"schema_version", 1}, {"config", config_to_json(cat.config)}, {"sets", sets}};
  json pt = json::array();
  for (const auto& x : cat.P_total) pt.push_back(operator_to_json(x));
  out["P_total"] = pt;
  if (cat.interaction) {
    json shape = json::array();
    for (const auto& c : cat.interaction->shape) shape.push_back(c.to_string());
    out["interaction"] = {{"sets", {cat.interaction->set_a, cat.interaction->set_b}},
                          {"shape", shape},
                          {"metric", metric_name(cat.interaction->metric)},
                          {"s_numerator_terms", cat.interaction->s.numerator().term_count()},
                          {"s_denominator_terms", cat.interaction->s.denominator().term_count()}};
  }
  return out;
}

// ---- cache ----

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

GeneratorCatalog load_or_build_catalog(ModelConfig cfg, const CatalogOptions& opts) {
  cfg.validate();
  const char* dir = std::getenv("PREREP_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return build_catalog(cfg, opts);

  json key = config_to_json(cfg);
  key["with_su"] = opts.with_su;
  const std::string key_text = key.dump();
  std::ostringstream name;
  name << "catalog-" << std::hex << fnv1a(key_text) << ".json";
  const std::filesystem::path path = std::filesystem::path(dir) / name.str();

  if (std::filesystem::exists(path)) {
    try {
      std::ifstream in(path);
      const json stored = json::parse(in);
      if (stored.at("key").dump() == key_text) return assemble_catalog(cfg, opts, &stored.at("catalog").at("sets"));
    } catch (const std::exception&) {
      // unreadable or stale entries are rebuilt below
    }
  }
  GeneratorCatalog cat = build_catalog(cfg, opts);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(path);
  if (out) out << json{{"key", key}, {"catalog", catalog_to_json(cat)}}.dump() << '\n';
  return cat;
}

}  // namespace prerep
