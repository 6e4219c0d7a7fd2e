#include "prerep/monomial.hpp"

#include <algorithm>

#include "prerep/errors.hpp"

namespace prerep {

namespace {
thread_local std::size_t current_term_cap = kDefaultTermCap;
}

std::size_t term_cap() { return current_term_cap; }

ScopedTermCap::ScopedTermCap(std::size_t cap) : previous_(current_term_cap) { current_term_cap = cap; }
ScopedTermCap::~ScopedTermCap() { current_term_cap = previous_; }

void enforce_term_cap(const char* what, std::size_t projected) {
  if (projected > current_term_cap) throw CapExceeded(what, projected, current_term_cap);
}

Monomial::Monomial(VarId v, std::uint32_t exp) {
  if (exp > 0) entries_.emplace_back(v, exp);
  recompute_degree();
}

Monomial::Monomial(std::initializer_list<Entry> entries)
    : Monomial(from_entries(std::vector<Entry>(entries))) {}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [var, exp] : entries) {
    if (exp == 0) continue;
    if (!m.entries_.empty() && m.entries_.back().first == var) {
      m.entries_.back().second += exp;
    } else {
      m.entries_.emplace_back(var, exp);
    }
  }
  m.recompute_degree();
  return m;
}

void Monomial::recompute_degree() {
  degree_ = 0;
  for (const auto& e : entries_) degree_ += e.second;
}

std::uint32_t Monomial::exponent(VarId v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& e, VarId key) { return e.first < key; });
  return (it != entries_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.entries_.reserve(entries_.size() + o.entries_.size());
  auto a = entries_.begin();
  auto b = o.entries_.begin();
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      r.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      r.entries_.push_back(*b++);
    } else {
      r.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool Monomial::divisible_by(const Monomial& o) const {
  for (const auto& [var, exp] : o.entries_) {
    if (exponent(var) < exp) return false;
  }
  return true;
}

Monomial Monomial::divide(const Monomial& o) const {
  Monomial r;
  for (const auto& [var, exp] : entries_) {
    const std::uint32_t sub = o.exponent(var);
    if (sub > exp) throw DomainError("monomial division: not divisible");
    if (exp > sub) r.entries_.emplace_back(var, exp - sub);
  }
  if (!divisible_by(o)) throw DomainError("monomial division: not divisible");
  r.recompute_degree();
  return r;
}

Monomial Monomial::conjugated() const {
  std::vector<Entry> flipped;
  flipped.reserve(entries_.size());
  for (const auto& [var, exp] : entries_) flipped.emplace_back(var.partner(), exp);
  return from_entries(std::move(flipped));
}

std::string Monomial::to_string() const {
  if (entries_.empty()) return "1";
  std::string s;
  for (const auto& [var, exp] : entries_) {
    if (!s.empty()) s += '*';
    s += var.name();
    if (exp > 1) s += '^' + std::to_string(exp);
  }
  return s;
}

}  // namespace prerep
