#include "prerep/exact_scalar.hpp"

#include <ostream>

#include "prerep/errors.hpp"

namespace prerep {

namespace {

mpq_class parse_rational(std::string_view text) {
  if (text.empty()) throw DomainError("empty rational literal");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw DomainError("bad rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw ArithmeticError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

ExactScalar::ExactScalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ExactScalar ExactScalar::rational(long num, long den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q, 0};
}

ExactScalar ExactScalar::parse(std::string_view text) {
  if (text.empty()) throw DomainError("empty scalar literal");
  if (text.back() != 'i') return {parse_rational(text), 0};
  std::string_view body = text.substr(0, text.size() - 1);
  // split at the last sign that is not the leading character
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    if (body.empty() || body == "+") return {0, 1};
    if (body == "-") return {0, -1};
    return {0, parse_rational(body)};
  }
  std::string_view im_part = body.substr(split);
  mpq_class im = (im_part == "+") ? mpq_class(1) : (im_part == "-") ? mpq_class(-1) : parse_rational(im_part);
  return {parse_rational(body.substr(0, split)), im};
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const mpq_class d = o.norm2();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / d;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string ExactScalar::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_text;
  if (im_ == 1) {
    im_text = "i";
  } else if (im_ == -1) {
    im_text = "-i";
  } else {
    im_text = im_.get_str() + "i";
  }
  if (sgn(re_) == 0) return im_text;
  if (im_text.front() != '-') im_text.insert(0, "+");
  return re_.get_str() + im_text;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.to_string(); }

}  // namespace prerep
