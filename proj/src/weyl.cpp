#include "prerep/weyl.hpp"

#include <gmpxx.h>

#include <vector>

#include "prerep/errors.hpp"

namespace prerep {

namespace {

mpz_class falling_factorial(std::uint32_t n, std::uint32_t k) {
  mpz_class r = 1;
  for (std::uint32_t j = 0; j < k; ++j) r *= (n - j);
  return r;
}

mpz_class binomial(std::uint32_t n, std::uint32_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// (z^a d^b)(z^c d^d): for each variable x with b_x > 0 and c_x > 0, move k of
// the derivatives through the multiplication, weight C(b_x,k) c_x!/(c_x-k)!.
void multiply_monomials(const WeylMonomial& left, const WeylMonomial& right, const ExactScalar& coef,
                        WeylOperator& out) {
  struct Overlap {
    VarId var;
    std::uint32_t b;
    std::uint32_t c;
  };
  std::vector<Overlap> overlaps;
  for (const auto& [var, b] : left.der.entries()) {
    const std::uint32_t c = right.mul.exponent(var);
    if (c > 0) overlaps.push_back({var, b, c});
  }
  const Monomial base_mul = left.mul * right.mul;
  const Monomial base_der = left.der * right.der;
  if (overlaps.empty()) {
    out.add_term({base_mul, base_der}, coef);
    return;
  }
  std::vector<std::uint32_t> k(overlaps.size(), 0);
  while (true) {
    mpz_class weight = 1;
    std::vector<Monomial::Entry> removed;
    for (std::size_t j = 0; j < overlaps.size(); ++j) {
      if (k[j] == 0) continue;
      weight *= binomial(overlaps[j].b, k[j]) * falling_factorial(overlaps[j].c, k[j]);
      removed.emplace_back(overlaps[j].var, k[j]);
    }
    const Monomial cut = Monomial::from_entries(removed);
    out.add_term({base_mul.divide(cut), base_der.divide(cut)}, coef * ExactScalar(mpq_class(weight)));
    std::size_t j = 0;
    for (; j < overlaps.size(); ++j) {
      if (k[j] < std::min(overlaps[j].b, overlaps[j].c)) {
        ++k[j];
        break;
      }
      k[j] = 0;
    }
    if (j == overlaps.size()) break;
  }
}

}  // namespace

WeylOperator::WeylOperator(ExactScalar c) {
  if (!c.is_zero()) terms_.emplace(WeylMonomial{}, std::move(c));
}

WeylOperator::WeylOperator(const WeylMonomial& m, ExactScalar c) {
  if (!c.is_zero()) terms_.emplace(m, std::move(c));
}

WeylOperator WeylOperator::multiplication(const PolyFunction& p) {
  WeylOperator r;
  for (const auto& [m, c] : p.terms()) r.add_term({m, {}}, c);
  return r;
}

std::uint32_t WeylOperator::max_mul_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.mul_degree());
  return d;
}

std::uint32_t WeylOperator::max_der_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.der_degree());
  return d;
}

std::set<VarId> WeylOperator::variables() const {
  std::set<VarId> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& e : m.mul.entries()) vars.insert(e.first);
    for (const auto& e : m.der.entries()) vars.insert(e.first);
  }
  return vars;
}

void WeylOperator::add_term(const WeylMonomial& m, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeylOperator& WeylOperator::operator+=(const WeylOperator& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

WeylOperator& WeylOperator::operator*=(const ExactScalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

WeylOperator WeylOperator::operator-() const {
  WeylOperator r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) { return normal_order_product(a, b); }

WeylOperator normal_order_product(const WeylOperator& a, const WeylOperator& b) {
  enforce_term_cap("operator product", a.term_count() * b.term_count());
  WeylOperator out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) multiply_monomials(ma, mb, ca * cb, out);
  }
  return out;
}

WeylOperator commutator(const WeylOperator& a, const WeylOperator& b) {
  return normal_order_product(a, b) - normal_order_product(b, a);
}

PolyFunction apply(const WeylOperator& a, const PolyFunction& f) {
  enforce_term_cap("operator application", a.term_count() * f.term_count());
  PolyFunction out;
  for (const auto& [om, oc] : a.terms()) {
    for (const auto& [fm, fc] : f.terms()) {
      if (!fm.divisible_by(om.der)) continue;
      mpz_class weight = 1;
      for (const auto& [var, k] : om.der.entries()) weight *= falling_factorial(fm.exponent(var), k);
      out.add_term(om.mul * fm.divide(om.der), oc * fc * ExactScalar(mpq_class(weight)));
    }
  }
  return out;
}

RationalFunction apply_derivation(const WeylOperator& a, const RationalFunction& f) {
  if (a.max_der_degree() > 1) throw DomainError("apply_derivation: operator is not first order");
  WeylOperator derivation;
  ExactScalar constant;
  for (const auto& [m, c] : a.terms()) {
    if (m.der_degree() == 1) {
      derivation.add_term(m, c);
    } else if (m.mul.empty()) {
      constant = c;
    } else {
      throw DomainError("apply_derivation: operator has a non-constant multiplication term");
    }
  }
  const PolyFunction& p = f.numerator();
  const PolyFunction& q = f.denominator();
  const PolyFunction dq = apply(derivation, q);
  RationalFunction result;
  if (dq.is_zero()) {
    result = RationalFunction(apply(derivation, p), q);
  } else {
    result = RationalFunction(apply(derivation, p) * q - p * dq, q * q);
  }
  if (!constant.is_zero()) result += RationalFunction(p * constant, q);
  return result;
}

WeylOperator formal_adjoint(const WeylOperator& a) {
  WeylOperator out;
  for (const auto& [m, c] : a.terms()) {
    const ExactScalar sign = (m.der_degree() % 2 == 0) ? ExactScalar(1) : ExactScalar(-1);
    const WeylOperator der_part(WeylMonomial{{}, m.der.conjugated()}, sign);
    const WeylOperator mul_part(WeylMonomial{m.mul.conjugated(), {}}, 1);
    out += normal_order_product(der_part, mul_part) * c.conj();
  }
  return out;
}

std::string WeylOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coef = c.to_string();
    const bool compound = !c.is_real() && sgn(c.re()) != 0;
    const bool negative = !compound && coef.front() == '-';
    if (negative) coef.erase(0, 1);
    if (compound) coef = "(" + coef + ")";
    s += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string body;
    if (!m.mul.empty()) body = m.mul.to_string();
    for (const auto& [var, exp] : m.der.entries()) {
      if (!body.empty()) body += '*';
      body += "D[" + var.name() + "]";
      if (exp > 1) body += '^' + std::to_string(exp);
    }
    if (body.empty()) {
      s += coef;
    } else if (coef == "1") {
      s += body;
    } else {
      s += coef + "*" + body;
    }
  }
  return s;
}

}  // namespace prerep
