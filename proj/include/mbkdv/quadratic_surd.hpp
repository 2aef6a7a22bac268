#pragma once

#include "mbkdv/numeric.hpp"

#include <compare>
#include <string>

namespace mbkdv {

/// Exact element a + b*sqrt(d) of Q(sqrt d), d square-free.
///
/// Canonical form: d is square-free; d in {0, 1} is folded into the rational
/// part and stored as d = 0, b = 0. Rationality is therefore decidable as b == 0.
/// Binary operations require matching radicands unless one operand is rational.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational a);
  QuadraticSurd(std::int64_t a) : QuadraticSurd(Rational(a)) {}
  QuadraticSurd(Rational a, Rational b, const BigInt& d);

  /// Principal square root of a nonnegative rational.
  static QuadraticSurd sqrt(const Rational& r);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  QuadraticSurd conjugate() const;
  /// (a + b√d)(a − b√d) = a² − b²d, always rational.
  Rational norm() const;
  QuadraticSurd reciprocal() const;

  int sign() const;
  BigInt floor() const;
  /// Closest integer, halves rounded away from zero.
  BigInt nearest_integer() const;

  Real to_real() const;
  double to_double() const { return static_cast<double>(to_real()); }
  /// "5/6", "1/2 + 1/6*sqrt(21)" and similar.
  std::string to_string() const;

  QuadraticSurd operator-() const;
  QuadraticSurd& operator+=(const QuadraticSurd& o);
  QuadraticSurd& operator-=(const QuadraticSurd& o);
  QuadraticSurd& operator*=(const QuadraticSurd& o);
  QuadraticSurd& operator/=(const QuadraticSurd& o);

  friend QuadraticSurd operator+(QuadraticSurd l, const QuadraticSurd& r) { return l += r; }
  friend QuadraticSurd operator-(QuadraticSurd l, const QuadraticSurd& r) { return l -= r; }
  friend QuadraticSurd operator*(QuadraticSurd l, const QuadraticSurd& r) { return l *= r; }
  friend QuadraticSurd operator/(QuadraticSurd l, const QuadraticSurd& r) { return l /= r; }

  friend bool operator==(const QuadraticSurd& l, const QuadraticSurd& r) {
    return l.a_ == r.a_ && l.b_ == r.b_ && l.d_ == r.d_;
  }
  friend std::strong_ordering operator<=>(const QuadraticSurd& l, const QuadraticSurd& r) {
    const int s = (l - r).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  void canonicalize();
  const BigInt& common_radicand(const QuadraticSurd& o) const;

  Rational a_{0};
  Rational b_{0};
  BigInt d_{0};
};

}  // namespace mbkdv
