#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace mbkdv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// IEEE binary128 (113-bit significand).
using Real = boost::multiprecision::cpp_bin_float_quad;

/// floor(a / b) for b != 0.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor(const Rational& r);

/// Writes n = f^2 * d with d square-free. n must be nonnegative.
struct SquareFreeSplit {
  BigInt factor;
  BigInt radicand;
};
SquareFreeSplit square_free_split(const BigInt& n);

bool is_perfect_square(const BigInt& n);

Real to_real(const Rational& r);
double to_double(const Rational& r);
std::string to_string(const Rational& r);

/// Exact rational for integer and "p/q" input.
Rational parse_rational(std::string_view text);

/// A dimensionless parameter on either the exact or the 128-bit float path.
/// "p/q" and integer strings select the exact path, decimals the float path.
class Parameter {
 public:
  Parameter() = default;
  Parameter(Rational exact) : value_(std::move(exact)) {}
  Parameter(Real approx) : value_(std::move(approx)) {}
  Parameter(std::int64_t n) : value_(Rational(n)) {}

  static Parameter parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const { return std::get<Rational>(value_); }
  Real real() const;
  double to_double() const { return static_cast<double>(real()); }
  std::string to_string() const;

 private:
  std::variant<Rational, Real> value_ = Rational(0);
};

}  // namespace mbkdv
