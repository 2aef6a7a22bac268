#include "mbkdv/quadratic_surd.hpp"

#include <sstream>
#include <stdexcept>

namespace mbkdv {

namespace mp = boost::multiprecision;

QuadraticSurd::QuadraticSurd(Rational a) : a_(std::move(a)) {}

QuadraticSurd::QuadraticSurd(Rational a, Rational b, const BigInt& d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 0) throw std::domain_error("QuadraticSurd: negative radicand");
  canonicalize();
}

void QuadraticSurd::canonicalize() {
  if (b_ == 0 || d_ == 0) {
    b_ = 0;
    d_ = 0;
    return;
  }
  const auto [f, r] = square_free_split(d_);
  b_ *= Rational(f);
  d_ = r;
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
    d_ = 0;
  }
}

QuadraticSurd QuadraticSurd::sqrt(const Rational& r) {
  if (r < 0) throw std::domain_error("QuadraticSurd::sqrt of a negative rational");
  // sqrt(p/q) = sqrt(p*q)/q
  const BigInt p = mp::numerator(r);
  const BigInt q = mp::denominator(r);
  return QuadraticSurd(Rational(0), Rational(BigInt(1), q), p * q);
}

const BigInt& QuadraticSurd::common_radicand(const QuadraticSurd& o) const {
  if (is_rational()) return o.d_;
  if (o.is_rational() || o.d_ == d_) return d_;
  throw std::domain_error("QuadraticSurd: operands live in different quadratic fields");
}

QuadraticSurd QuadraticSurd::conjugate() const {
  QuadraticSurd c = *this;
  c.b_ = -c.b_;
  return c;
}

Rational QuadraticSurd::norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

QuadraticSurd QuadraticSurd::reciprocal() const {
  const Rational n = norm();
  if (n == 0) throw std::domain_error("QuadraticSurd: reciprocal of zero");
  QuadraticSurd r = conjugate();
  r.a_ /= n;
  r.b_ /= n;
  return r;
}

QuadraticSurd QuadraticSurd::operator-() const {
  QuadraticSurd r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadraticSurd& QuadraticSurd::operator+=(const QuadraticSurd& o) {
  d_ = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  if (b_ == 0) d_ = 0;
  return *this;
}

QuadraticSurd& QuadraticSurd::operator-=(const QuadraticSurd& o) { return *this += -o; }

QuadraticSurd& QuadraticSurd::operator*=(const QuadraticSurd& o) {
  const BigInt d = common_radicand(o);
  const Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
  const Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  if (b_ == 0) d_ = 0;
  return *this;
}

QuadraticSurd& QuadraticSurd::operator/=(const QuadraticSurd& o) { return *this *= o.reciprocal(); }

int QuadraticSurd::sign() const {
  const int sa = a_ < 0 ? -1 : (a_ > 0 ? 1 : 0);
  const int sb = b_ < 0 ? -1 : (b_ > 0 ? 1 : 0);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: |a| vs |b|sqrt(d), never equal for square-free d > 1
  return a_ * a_ > b_ * b_ * Rational(d_) ? sa : sb;
}

BigInt QuadraticSurd::floor() const {
  if (is_rational()) return mbkdv::floor(a_);
  // a + b√d = (P + B√d)/Q with Q > 0
  const BigInt q = mp::lcm(mp::denominator(a_), mp::denominator(b_));
  const BigInt p = mp::numerator(a_) * (q / mp::denominator(a_));
  const BigInt bb = mp::numerator(b_) * (q / mp::denominator(b_));
  const BigInt s = mp::sqrt(BigInt(bb * bb * d_));
  // B√d lies strictly between consecutive integers, so the floor of the quotient
  // only depends on the integer part of the numerator
  if (bb > 0) return floor_div(p + s, q);
  return floor_div(p - s - 1, q);
}

BigInt QuadraticSurd::nearest_integer() const {
  const QuadraticSurd half(Rational(1, 2));
  if (sign() >= 0) return (*this + half).floor();
  return -((-*this) + half).floor();
}

Real QuadraticSurd::to_real() const {
  Real v = mbkdv::to_real(a_);
  if (!is_rational()) v += mbkdv::to_real(b_) * mp::sqrt(Real(d_));
  return v;
}

std::string QuadraticSurd::to_string() const {
  if (is_rational()) return mbkdv::to_string(a_);
  std::ostringstream os;
  if (a_ != 0) os << mbkdv::to_string(a_) << (b_ < 0 ? " - " : " + ");
  else if (b_ < 0) os << '-';
  const Rational mag = b_ < 0 ? Rational(-b_) : b_;
  if (mag != 1) os << mbkdv::to_string(mag) << '*';
  os << "sqrt(" << d_ << ')';
  return os.str();
}

}  // namespace mbkdv
