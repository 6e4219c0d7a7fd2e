#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace prerep {

/// Complex number with arbitrary-precision rational real and imaginary parts.
///
/// All arithmetic is exact. Values are kept in canonical form (reduced
/// fractions), so equality is structural.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(long re, long im) : re_(re), im_(im) {}
  ExactScalar(mpq_class re, mpq_class im = 0);

  static ExactScalar i() { return {0, 1}; }
  static ExactScalar rational(long num, long den);
  /// Parses "p/q", "p", "p/q+r/si", "r/si" style text (as produced by to_string).
  static ExactScalar parse(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  ExactScalar conj() const { return {re_, -im_}; }
  /// |s|^2 = s * conj(s), always real.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  ExactScalar operator-() const { return {-re_, -im_}; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Canonical text: "3/4", "-2i", "1/2-3/4i".
  std::string to_string() const;
  double real_double() const { return re_.get_d(); }
  double imag_double() const { return im_.get_d(); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

}  // namespace prerep
