#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prerep/errors.hpp"
#include "prerep/exact_scalar.hpp"

namespace prerep::qsim {

using cdouble = std::complex<double>;
using Label = std::string;

inline bool amp_is_zero(const ExactScalar& a) { return a.is_zero(); }
inline bool amp_is_zero(const cdouble& a) { return a == cdouble(0.0, 0.0); }
inline ExactScalar amp_conj(const ExactScalar& a) { return a.conj(); }
inline cdouble amp_conj(const cdouble& a) { return std::conj(a); }
inline cdouble to_complex(const ExactScalar& a) { return {a.real_double(), a.imag_double()}; }
inline cdouble to_complex(const cdouble& a) { return a; }

/// Product of single-df kets; the write order of factors is irrelevant.
class ProductKet {
 public:
  ProductKet() = default;
  ProductKet(std::initializer_list<std::pair<const int, Label>> f) : factors_(f) {}

  const std::map<int, Label>& factors() const { return factors_; }
  bool has(int df) const { return factors_.count(df) != 0; }
  const Label& label(int df) const;
  ProductKet with(int df, Label label) const;
  /// "|a>_1|b>_2"
  std::string to_string() const;

  friend bool operator==(const ProductKet&, const ProductKet&) = default;
  friend bool operator<(const ProductKet& a, const ProductKet& b) { return a.factors_ < b.factors_; }

 private:
  std::map<int, Label> factors_;
};

/// Sparse superposition of product kets; zero amplitudes are pruned.
template <class Amp>
class StateVector {
 public:
  using Terms = std::map<ProductKet, Amp>;

  StateVector() = default;
  StateVector(const ProductKet& k, Amp a) { add(k, std::move(a)); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add(const ProductKet& k, const Amp& a) {
    if (amp_is_zero(a)) return;
    auto [it, inserted] = terms_.try_emplace(k, a);
    if (!inserted) {
      it->second += a;
      if (amp_is_zero(it->second)) terms_.erase(it);
    }
  }
  Amp amplitude(const ProductKet& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Amp{} : it->second;
  }

  StateVector& operator+=(const StateVector& o) {
    for (const auto& [k, a] : o.terms_) add(k, a);
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    for (const auto& [k, a] : o.terms_) add(k, -a);
    return *this;
  }
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(const Amp& s, const StateVector& v) {
    StateVector out;
    for (const auto& [k, a] : v.terms_) out.add(k, s * a);
    return out;
  }
  friend bool operator==(const StateVector& a, const StateVector& b) { return a.terms_ == b.terms_; }

  /// <this|o>
  Amp inner(const StateVector& o) const {
    Amp total{};
    for (const auto& [k, a] : terms_) {
      auto it = o.terms_.find(k);
      if (it != o.terms_.end()) total += amp_conj(a) * it->second;
    }
    return total;
  }
  Amp norm2() const { return inner(*this); }

 private:
  Terms terms_;
};

using ExactState = StateVector<ExactScalar>;
using FloatState = StateVector<cdouble>;

/// Local interaction: a bijection on joint label assignments of the touched
/// dfs, each image carrying a unit-modulus phase. Assignments not listed are
/// left alone. Validated at construction.
class InteractionRule {
 public:
  using Assignment = std::vector<Label>;
  struct Image {
    Assignment labels;
    ExactScalar phase{1};
  };

  InteractionRule(std::vector<int> touched, std::map<Assignment, Image> mapping);
  /// Swaps the two assignments (a common way to write a measurement step).
  static InteractionRule swap(std::vector<int> touched, const std::vector<std::pair<Assignment, Assignment>>& pairs);
  static InteractionRule identity(std::vector<int> touched) { return {std::move(touched), {}}; }

  const std::vector<int>& touched() const { return touched_; }
  const std::map<Assignment, Image>& mapping() const { return mapping_; }

 private:
  std::vector<int> touched_;
  std::map<Assignment, Image> mapping_;
};

template <class Amp>
Amp phase_as(const ExactScalar& p);
template <>
inline ExactScalar phase_as<ExactScalar>(const ExactScalar& p) {
  return p;
}
template <>
inline cdouble phase_as<cdouble>(const ExactScalar& p) {
  return to_complex(p);
}

/// Linear extension of the rule. Throws DomainError if a term lacks a touched df.
template <class Amp>
StateVector<Amp> evolve(const StateVector<Amp>& state, const InteractionRule& rule) {
  StateVector<Amp> out;
  for (const auto& [ket, amp] : state.terms()) {
    InteractionRule::Assignment key;
    for (int df : rule.touched()) {
      if (!ket.has(df)) throw DomainError("term " + ket.to_string() + " has no df " + std::to_string(df));
      key.push_back(ket.label(df));
    }
    auto it = rule.mapping().find(key);
    if (it == rule.mapping().end()) {
      out.add(ket, amp);
      continue;
    }
    ProductKet next = ket;
    for (std::size_t k = 0; k < key.size(); ++k) next = next.with(rule.touched()[k], it->second.labels[k]);
    out.add(next, phase_as<Amp>(it->second.phase) * amp);
  }
  return out;
}

/// Sum over permutations of labels across `dfs` with the permutation sign; not normalized.
template <class Amp>
StateVector<Amp> antisymmetrize(const StateVector<Amp>& state, const std::vector<int>& dfs) {
  std::vector<std::size_t> perm(dfs.size());
  StateVector<Amp> out;
  for (const auto& [ket, amp] : state.terms()) {
    for (int df : dfs)
      if (!ket.has(df)) throw DomainError("term " + ket.to_string() + " has no df " + std::to_string(df));
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    do {
      // sign from the inversion count
      std::size_t inversions = 0;
      for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b] ? 1 : 0;
      ProductKet next = ket;
      for (std::size_t k = 0; k < dfs.size(); ++k) next = next.with(dfs[k], ket.label(dfs[perm[k]]));
      out.add(next, inversions % 2 == 0 ? amp : -amp);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

// ---- scenarios ----

struct Branch {
  ExactScalar amplitude;
  std::map<std::string, Label> labels;   // df name -> label, non-observer dfs
  std::map<std::string, Label> records;  // observer dfs
};

struct Assertion {
  std::string name;
  bool passed = false;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::string> df_names;  // index = df - 1
  std::vector<int> observer_dfs;
  std::vector<ExactState> timeline;
  std::vector<Branch> branches;
  std::vector<Assertion> assertions;
  bool all_passed() const;
};

/// Spin measured by two detectors and read by one observer (or two).
ScenarioReport stern_gerlach_scenario(const ExactScalar& a1 = ExactScalar::rational(3, 5),
                                      const ExactScalar& a2 = ExactScalar::rational(4, 5), int observers = 1);

/// One source spread over `count` detectors; amplitudes must have unit norm.
ScenarioReport detector_array_scenario(int count, const std::vector<ExactScalar>& amplitudes);

/// Detector arrays applied layer after layer along paths; each path is a list
/// of detector indices (one per layer) with its amplitude.
ScenarioReport trajectory_scenario(int layers, int count, const std::vector<std::pair<std::vector<int>, ExactScalar>>& paths);

/// Exact random unit vector of complex rationals (inverse stereographic projection).
std::vector<ExactScalar> random_unit_amplitudes(int count, std::uint64_t seed);

// ---- Bell ----

/// (P++, P+-, P-+, P--) for the polarization singlet, analyzers at relative angle theta.
std::array<double, 4> bell_probabilities(double theta);
/// E(a, b) for the singlet.
double singlet_correlation(double a, double b);
/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh(double a, double a_prime, double b, double b_prime);
/// max |S| over the 16 deterministic local strategies.
int chsh_classical_bound();

}  // namespace prerep::qsim
