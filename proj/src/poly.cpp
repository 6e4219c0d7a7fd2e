#include "prerep/poly.hpp"

#include "prerep/errors.hpp"

namespace prerep {

PolyFunction::PolyFunction(ExactScalar c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

PolyFunction::PolyFunction(const Monomial& m, ExactScalar c) {
  if (!c.is_zero()) terms_.emplace(m, std::move(c));
}

std::uint32_t PolyFunction::degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool PolyFunction::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

ExactScalar PolyFunction::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ExactScalar{} : it->second;
}

std::set<VarId> PolyFunction::variables() const {
  std::set<VarId> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& e : m.entries()) vars.insert(e.first);
  }
  return vars;
}

void PolyFunction::add_term(const Monomial& m, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyFunction& PolyFunction::operator+=(const PolyFunction& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolyFunction& PolyFunction::operator-=(const PolyFunction& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolyFunction& PolyFunction::operator*=(const ExactScalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

PolyFunction operator*(const PolyFunction& a, const PolyFunction& b) {
  enforce_term_cap("polynomial product", a.terms_.size() * b.terms_.size());
  PolyFunction r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

PolyFunction PolyFunction::operator-() const {
  PolyFunction r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

PolyFunction PolyFunction::pow(unsigned k) const {
  PolyFunction result(1);
  PolyFunction base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

PolyFunction PolyFunction::conjugate() const {
  PolyFunction r;
  for (const auto& [m, c] : terms_) r.add_term(m.conjugated(), c.conj());
  return r;
}

ExactScalar PolyFunction::eval(const Point& point) const {
  ExactScalar total;
  for (const auto& [m, c] : terms_) {
    ExactScalar value = c;
    for (const auto& [var, exp] : m.entries()) {
      auto it = point.find(var);
      if (it == point.end()) throw DomainError("no value assigned to variable " + var.name());
      for (std::uint32_t k = 0; k < exp; ++k) value *= it->second;
    }
    total += value;
  }
  return total;
}

std::string PolyFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coef = c.to_string();
    const bool compound = !c.is_real() && sgn(c.re()) != 0;
    bool negative = !compound && coef.front() == '-';
    if (negative) coef.erase(0, 1);
    if (compound) coef = "(" + coef + ")";
    if (first) {
      s += negative ? "-" : "";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (m.empty()) {
      s += coef;
    } else if (coef == "1") {
      s += m.to_string();
    } else {
      s += coef + "*" + m.to_string();
    }
  }
  return s;
}

RationalFunction::RationalFunction(PolyFunction num, PolyFunction den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArithmeticError("rational function with identically zero denominator");
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ = num_ * o.num_;
  if (!o.den_.is_constant() || !(o.den_ == PolyFunction(1))) den_ = den_ * o.den_;
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.num_.is_zero()) throw ArithmeticError("division by the zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  return *this;
}

ExactScalar RationalFunction::eval(const Point& point) const {
  ExactScalar d = den_.eval(point);
  if (d.is_zero()) throw ArithmeticError("denominator vanishes at the evaluation point");
  return num_.eval(point) / d;
}

PolyFunction RationalFunction::cross_difference(const RationalFunction& o) const {
  if (den_ == o.den_) return num_ - o.num_;
  return num_ * o.den_ - o.num_ * den_;
}

std::string RationalFunction::to_string() const {
  if (den_ == PolyFunction(1)) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

}  // namespace prerep
