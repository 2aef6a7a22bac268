#include "mbkdv/numeric.hpp"

#include "mbkdv/errors.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace mbkdv {

namespace mp = boost::multiprecision;

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;  // truncates toward zero
  BigInt r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

BigInt floor(const Rational& r) {
  return floor_div(mp::numerator(r), mp::denominator(r));
}

bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  const BigInt s = mp::sqrt(n);
  return s * s == n;
}

namespace {

SquareFreeSplit split_u64(std::uint64_t m) {
  std::uint64_t f = 1;
  std::uint64_t d = 1;
  for (std::uint64_t p = 2; p * p * p <= m; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) f *= p;
    if (e % 2 == 1) d *= p;
  }
  // m now has at most two prime factors, all larger than the last trial divisor
  if (is_perfect_square(BigInt(m))) {
    return {BigInt(f) * mp::sqrt(BigInt(m)), BigInt(d)};
  }
  return {BigInt(f), BigInt(d) * m};
}

}  // namespace

SquareFreeSplit square_free_split(const BigInt& n) {
  if (n < 0) throw std::domain_error("square_free_split: negative input");
  if (n == 0) return {BigInt(0), BigInt(0)};
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    return split_u64(static_cast<std::uint64_t>(n));
  }
  BigInt m = n;
  BigInt f = 1;
  BigInt d = 1;
  for (BigInt p = 2; p * p * p <= m; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) f *= p;
    if (e % 2 == 1) d *= p;
  }
  if (is_perfect_square(m)) return {f * mp::sqrt(m), d};
  return {f, d * m};
}

Real to_real(const Rational& r) {
  return Real(mp::numerator(r)) / Real(mp::denominator(r));
}

double to_double(const Rational& r) { return static_cast<double>(to_real(r)); }

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << mp::numerator(r);
  if (mp::denominator(r) != 1) os << '/' << mp::denominator(r);
  return os.str();
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  if (i == s.size()) throw Error(ErrorCode::ConfigInvalid, "not a number: '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw Error(ErrorCode::ConfigInvalid, "not a number: '" + std::string(whole) + "'");
    }
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorCode::ConfigInvalid, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Parameter Parameter::parse(std::string_view text) {
  if (text.find_first_of(".eE") == std::string_view::npos) return Parameter(parse_rational(text));
  try {
    std::size_t used = 0;
    const std::string s(text);
    (void)std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return Parameter(Real(s));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigInvalid, "not a number: '" + std::string(text) + "'");
  }
}

Real Parameter::real() const {
  if (is_exact()) return to_real(exact());
  return std::get<Real>(value_);
}

std::string Parameter::to_string() const {
  if (is_exact()) return mbkdv::to_string(exact());
  return std::get<Real>(value_).str(36);
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AlphaZero: return "AlphaZero";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::AlphaDegenerate: return "AlphaDegenerate";
    case ErrorCode::RangeTooSmall: return "RangeTooSmall";
    case ErrorCode::XRational: return "XRational";
    case ErrorCode::NotRationalResonance: return "NotRationalResonance";
    case ErrorCode::InconsistentFamily: return "InconsistentFamily";
    case ErrorCode::XiBelowCutoff: return "XiBelowCutoff";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownTable: return "UnknownTable";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::InsufficientWitnesses: return "InsufficientWitnesses";
    case ErrorCode::BlowupDetected: return "BlowupDetected";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::InsufficientWitnesses:
    case ErrorCode::BlowupDetected:
    case ErrorCode::DegenerateFit:
    case ErrorCode::QuadratureUnderResolved:
      return true;
    default:
      return false;
  }
}

}  // namespace mbkdv
