#pragma once

#include <map>
#include <set>
#include <string>

#include "prerep/exact_scalar.hpp"
#include "prerep/monomial.hpp"

namespace prerep {

using Point = std::map<VarId, ExactScalar>;

/// Sparse multivariate polynomial with exact complex-rational coefficients.
/// Zero coefficients are never stored, so equal polynomials have equal term maps.
class PolyFunction {
 public:
  using Terms = std::map<Monomial, ExactScalar>;

  PolyFunction() = default;
  PolyFunction(ExactScalar c);  // NOLINT(google-explicit-constructor)
  PolyFunction(long c) : PolyFunction(ExactScalar(c)) {}  // NOLINT(google-explicit-constructor)
  explicit PolyFunction(const Monomial& m, ExactScalar c = 1);
  static PolyFunction variable(VarId v) { return PolyFunction(Monomial(v)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  std::uint32_t degree() const;
  bool is_constant() const;
  ExactScalar coefficient(const Monomial& m) const;
  std::set<VarId> variables() const;

  /// Adds c*m in place.
  void add_term(const Monomial& m, const ExactScalar& c);

  PolyFunction& operator+=(const PolyFunction& o);
  PolyFunction& operator-=(const PolyFunction& o);
  PolyFunction& operator*=(const ExactScalar& s);
  friend PolyFunction operator+(PolyFunction a, const PolyFunction& b) { return a += b; }
  friend PolyFunction operator-(PolyFunction a, const PolyFunction& b) { return a -= b; }
  friend PolyFunction operator*(PolyFunction a, const ExactScalar& s) { return a *= s; }
  friend PolyFunction operator*(const ExactScalar& s, PolyFunction a) { return a *= s; }
  friend PolyFunction operator*(const PolyFunction& a, const PolyFunction& b);
  PolyFunction operator-() const;

  PolyFunction pow(unsigned k) const;
  /// Complex conjugate: coefficients conjugated and every variable swapped for its partner.
  PolyFunction conjugate() const;

  /// Exact evaluation; throws DomainError naming the first unassigned variable.
  ExactScalar eval(const Point& point) const;

  friend bool operator==(const PolyFunction& a, const PolyFunction& b) { return a.terms_ == b.terms_; }

  /// Deterministic rendering in monomial order: "1/2*u(1,1;1) - i*v(2,1;1)".
  std::string to_string() const;

 private:
  Terms terms_;
};

/// Quotient of two polynomials. No cancellation is performed; equality is
/// decided by cross-multiplication.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(PolyFunction num) : num_(std::move(num)), den_(1) {}  // NOLINT
  RationalFunction(PolyFunction num, PolyFunction den);

  const PolyFunction& numerator() const { return num_; }
  const PolyFunction& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const { return {-num_, den_}; }

  /// Throws ArithmeticError when the denominator vanishes at the point.
  ExactScalar eval(const Point& point) const;

  /// num*o.den - o.num*den, whose vanishing decides equality.
  PolyFunction cross_difference(const RationalFunction& o) const;
  /// Exact equality by cross-multiplication.
  bool equals(const RationalFunction& o) const { return cross_difference(o).is_zero(); }

  std::string to_string() const;

 private:
  PolyFunction num_;
  PolyFunction den_;
};

}  // namespace prerep
