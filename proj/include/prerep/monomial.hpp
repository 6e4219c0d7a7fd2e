#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "prerep/var_id.hpp"

namespace prerep {

/// Power product of variables, stored as a sorted list of (variable, exponent)
/// with strictly positive exponents. Ordered graded-first, then
/// lexicographically on the sorted entries.
class Monomial {
 public:
  using Entry = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(VarId v, std::uint32_t exp = 1);
  Monomial(std::initializer_list<Entry> entries);
  /// Entries in any order; duplicates are merged, zero exponents dropped.
  static Monomial from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(VarId v) const;

  Monomial operator*(const Monomial& o) const;
  /// Divides out `o`; requires o | this.
  Monomial divide(const Monomial& o) const;
  bool divisible_by(const Monomial& o) const;
  /// Each variable replaced by its conjugation partner.
  Monomial conjugated() const;

  /// "u(1,1;1)^2*v*(1,1;1)"; empty monomial renders as "1".
  std::string to_string() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.entries_ == b.entries_; }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.entries_ < b.entries_;
  }

 private:
  void recompute_degree();
  std::vector<Entry> entries_;
  std::uint32_t degree_ = 0;
};

/// Upper bound on the number of term products a single multiplication may
/// perform. Thread-local; adjust through ScopedTermCap.
std::size_t term_cap();

class ScopedTermCap {
 public:
  explicit ScopedTermCap(std::size_t cap);
  ~ScopedTermCap();
  ScopedTermCap(const ScopedTermCap&) = delete;
  ScopedTermCap& operator=(const ScopedTermCap&) = delete;

 private:
  std::size_t previous_;
};

inline constexpr std::size_t kDefaultTermCap = 10'000'000;

/// Throws CapExceeded when `projected` exceeds the current cap.
void enforce_term_cap(const char* what, std::size_t projected);

}  // namespace prerep
