#pragma once

#include <map>
#include <set>
#include <string>

#include "prerep/poly.hpp"

namespace prerep {

/// z^mul * d^der, with every multiplication to the left of every derivative.
struct WeylMonomial {
  Monomial mul;
  Monomial der;

  std::uint32_t der_degree() const { return der.degree(); }
  std::uint32_t mul_degree() const { return mul.degree(); }

  friend bool operator==(const WeylMonomial& a, const WeylMonomial& b) { return a.mul == b.mul && a.der == b.der; }
  friend bool operator<(const WeylMonomial& a, const WeylMonomial& b) {
    if (a.der.degree() != b.der.degree()) return a.der.degree() < b.der.degree();
    if (!(a.der == b.der)) return a.der < b.der;
    return a.mul < b.mul;
  }
};

/// Linear differential operator with polynomial coefficients, held in
/// normal order. Two operators are equal iff their term maps are equal.
class WeylOperator {
 public:
  using Terms = std::map<WeylMonomial, ExactScalar>;

  WeylOperator() = default;
  WeylOperator(ExactScalar c);  // NOLINT(google-explicit-constructor)
  WeylOperator(long c) : WeylOperator(ExactScalar(c)) {}  // NOLINT(google-explicit-constructor)
  WeylOperator(const WeylMonomial& m, ExactScalar c);

  /// Multiplication by a polynomial.
  static WeylOperator multiplication(const PolyFunction& p);
  static WeylOperator multiplication(VarId z) { return {WeylMonomial{Monomial(z), {}}, 1}; }
  static WeylOperator derivative(VarId z) { return {WeylMonomial{{}, Monomial(z)}, 1}; }
  /// c * z d/dw
  static WeylOperator bilinear(VarId z, VarId w, ExactScalar c = 1) { return {WeylMonomial{Monomial(z), Monomial(w)}, c}; }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  std::uint32_t max_mul_degree() const;
  std::uint32_t max_der_degree() const;
  std::set<VarId> variables() const;

  void add_term(const WeylMonomial& m, const ExactScalar& c);

  WeylOperator& operator+=(const WeylOperator& o);
  WeylOperator& operator-=(const WeylOperator& o);
  WeylOperator& operator*=(const ExactScalar& s);
  friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
  friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
  friend WeylOperator operator*(WeylOperator a, const ExactScalar& s) { return a *= s; }
  friend WeylOperator operator*(const ExactScalar& s, WeylOperator a) { return a *= s; }
  /// Operator composition, renormalized.
  friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);
  WeylOperator operator-() const;

  friend bool operator==(const WeylOperator& a, const WeylOperator& b) { return a.terms_ == b.terms_; }

  /// Deterministic rendering, e.g. "1/2*u(1,1;1)*D[u(1,1;1)] - 1".
  std::string to_string() const;

 private:
  Terms terms_;
};

/// A*B in normal order, using d_z z = z d_z + 1 per variable.
WeylOperator normal_order_product(const WeylOperator& a, const WeylOperator& b);
/// [A, B] = AB - BA.
WeylOperator commutator(const WeylOperator& a, const WeylOperator& b);
/// Exact action on a polynomial.
PolyFunction apply(const WeylOperator& a, const PolyFunction& f);
/// Action of a first-order operator (derivation plus optional constant) on a
/// rational function via the quotient rule. Throws DomainError otherwise.
RationalFunction apply_derivation(const WeylOperator& a, const RationalFunction& f);
/// Adjoint under the flat L2 product over real and imaginary parts:
/// z -> conj(z), d_z -> -d_{conj z}, products reversed, coefficients conjugated.
WeylOperator formal_adjoint(const WeylOperator& a);

}  // namespace prerep
