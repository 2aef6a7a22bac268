#include "mbkdv/resonance.hpp"

#include "mbkdv/errors.hpp"

#include <cmath>
#include <limits>

namespace mbkdv {

namespace mp = boost::multiprecision;

Real RootValue::real() const {
  if (is_exact()) return exact().to_real();
  return std::get<Real>(value_);
}

std::optional<bool> RootValue::is_rational() const {
  if (is_exact()) return exact().is_rational();
  return std::nullopt;
}

std::string RootValue::to_string() const {
  if (is_exact()) return exact().to_string();
  return std::get<Real>(value_).str(36);
}

BigInt RootValue::nearest_multiple(std::int64_t n) const {
  if (is_exact()) return (exact() * QuadraticSurd(n)).nearest_integer();
  const Real x = std::get<Real>(value_) * n;
  if (x >= 0) return BigInt(mp::floor(x + Real(0.5)));
  return -BigInt(mp::floor(-x + Real(0.5)));
}

Real RootValue::offset_from(const BigInt& k, std::int64_t n) const {
  if (is_exact()) return (QuadraticSurd(Rational(k)) - exact() * QuadraticSurd(n)).to_real();
  return Real(k) - std::get<Real>(value_) * n;
}

namespace {

void check_alpha_c(const Parameter& alpha) {
  const Real a = alpha.real();
  if (a == 0) throw Error(ErrorCode::AlphaZero, "alpha must be nonzero");
  if (a < 0 || a > 4) {
    throw Error(ErrorCode::AlphaOutOfRange,
                "c-roots are real only for 0 < alpha <= 4 (got " + alpha.to_string() + ")");
  }
}

void check_alpha_d(const Parameter& alpha) {
  const Real a = alpha.real();
  if (a == 0) throw Error(ErrorCode::AlphaZero, "alpha must be nonzero");
  if (a == 1) throw Error(ErrorCode::AlphaDegenerate, "d-roots are undefined at alpha = 1");
  if (a < 0 || a > 4) {
    throw Error(ErrorCode::AlphaOutOfRange,
                "d-roots are real only for alpha in (0,1) u (1,4] (got " + alpha.to_string() + ")");
  }
}

}  // namespace

RootPair c_roots(const Parameter& alpha) {
  check_alpha_c(alpha);
  if (alpha.is_exact()) {
    const Rational disc = Rational(-3) + Rational(12) / alpha.exact();
    const QuadraticSurd half(Rational(1, 2));
    const QuadraticSurd w = QuadraticSurd::sqrt(disc) * QuadraticSurd(Rational(1, 6));
    return {half + w, half - w};
  }
  const Real a = alpha.real();
  const Real w = mp::sqrt(Real(-3) + Real(12) / a) / 6;
  return {Real(Real(0.5) + w), Real(Real(0.5) - w)};
}

RootPair d_roots(const Parameter& alpha) {
  check_alpha_d(alpha);
  if (alpha.is_exact()) {
    const Rational& a = alpha.exact();
    const QuadraticSurd root = QuadraticSurd::sqrt(Rational(3) * a * (Rational(4) - a));
    const QuadraticSurd scale(Rational(1) / (Rational(2) * (Rational(1) - a)));
    const QuadraticSurd base(Rational(-3) * a);
    return {(base + root) * scale, (base - root) * scale};
  }
  const Real a = alpha.real();
  const Real root = mp::sqrt(Real(3) * a * (Real(4) - a));
  const Real den = Real(2) * (Real(1) - a);
  return {Real((-3 * a + root) / den), Real((-3 * a - root) / den)};
}

double cutoff_l_alpha(const Parameter& alpha) {
  check_alpha_c(alpha);
  const Real disc = Real(-3) + Real(12) / alpha.real();
  if (disc <= 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(Real(6) / mp::sqrt(disc));
}

ResonanceRoots resonance_roots(const Parameter& alpha) {
  auto c = c_roots(alpha);
  ResonanceRoots r{c.first, c.second, std::nullopt, std::nullopt, cutoff_l_alpha(alpha)};
  if (alpha.real() != 1) {
    auto d = d_roots(alpha);
    r.d1 = d.first;
    r.d2 = d.second;
  }
  return r;
}

Real c_residual(const Parameter& alpha, const RootPair& c) {
  const Real a = alpha.real();
  const Real c1 = c.first.real();
  const Real c2 = c.second.real();
  return 1 - a * (c1 * c1 * c1 + c2 * c2 * c2);
}

Real d_residual(const Parameter& alpha, const RootValue& d) {
  const Real a = alpha.real();
  const Real x = d.real();
  const Real y = 1 - x;
  return a - x * x * x - a * y * y * y;
}

QuadraticSurd c_residual_exact(const Rational& alpha, const RootPair& c) {
  const QuadraticSurd& c1 = c.first.exact();
  const QuadraticSurd& c2 = c.second.exact();
  return QuadraticSurd(1) - QuadraticSurd(alpha) * (c1 * c1 * c1 + c2 * c2 * c2);
}

QuadraticSurd d_residual_exact(const Rational& alpha, const RootValue& d) {
  const QuadraticSurd& x = d.exact();
  const QuadraticSurd y = QuadraticSurd(1) - x;
  const QuadraticSurd a(alpha);
  return a - x * x * x - a * y * y * y;
}

namespace {

Rational gamma_exact(const Rational& a, const Rational& xi, const Rational& xi1) {
  const Rational xi2 = xi - xi1;
  return -xi * xi * xi + a * xi1 * xi1 * xi1 + a * xi2 * xi2 * xi2;
}

}  // namespace

Real gamma(const Parameter& alpha, const Rational& xi, const Rational& xi1) {
  if (alpha.is_exact()) return to_real(gamma_exact(alpha.exact(), xi, xi1));
  const Real a = alpha.real();
  const Real x = to_real(xi);
  const Real x1 = to_real(xi1);
  const Real x2 = to_real(Rational(xi - xi1));
  return -x * x * x + a * x1 * x1 * x1 + a * x2 * x2 * x2;
}

Real gamma_factored(const Parameter& alpha, const Rational& xi, const Rational& xi1) {
  if (alpha.is_exact()) {
    const Rational& a = alpha.exact();
    return to_real(Rational(3) * a * xi * xi1 * xi1 - Rational(3) * a * xi * xi * xi1 -
                   (Rational(1) - a) * xi * xi * xi);
  }
  const Real a = alpha.real();
  const Real x = to_real(xi);
  const Real x1 = to_real(xi1);
  return 3 * a * x * x1 * x1 - 3 * a * x * x * x1 - (1 - a) * x * x * x;
}

double gamma(double alpha, double xi, double xi1) {
  const double xi2 = xi - xi1;
  return -xi * xi * xi + alpha * xi1 * xi1 * xi1 + alpha * xi2 * xi2 * xi2;
}

double gamma_factored(double alpha, double xi, double xi1) {
  return 3 * alpha * xi * xi1 * xi1 - 3 * alpha * xi * xi * xi1 - (1 - alpha) * xi * xi * xi;
}

ResonanceGapRecord resonance_gap_integer(const Parameter& alpha, std::int64_t n) {
  if (n <= 0) throw Error(ErrorCode::ConfigInvalid, "resonance_gap_integer needs n >= 1");
  const RootPair c = c_roots(alpha);
  const BigInt k1 = c.first.nearest_multiple(n);
  const BigInt k2 = BigInt(n) - k1;

  ResonanceGapRecord rec;
  rec.n = n;
  rec.nearest_c1n = static_cast<std::int64_t>(k1);
  rec.nearest_c2n = static_cast<std::int64_t>(k2);
  rec.theta = c.first.offset_from(k1, n);
  rec.c3 = c.first.real() - c.second.real();

  const BigInt cubes = k1 * k1 * k1 + k2 * k2 * k2;
  const BigInt n3 = BigInt(n) * n * n;
  if (alpha.is_exact()) {
    const Rational g = alpha.exact() * Rational(cubes) - Rational(n3);
    rec.gamma_at_nearest = to_real(g);
    rec.gap_exact = g < 0 ? Rational(-g) : g;
  } else {
    rec.gamma_at_nearest = alpha.real() * Real(cubes) - Real(n3);
  }
  rec.gap = mp::abs(rec.gamma_at_nearest);
  return rec;
}

Real gap_expansion(const Parameter& alpha, const ResonanceGapRecord& rec) {
  const Real a = alpha.real();
  const Real n = Real(rec.n);
  return mp::abs(3 * a * rec.c3 * n * n * rec.theta + 3 * a * n * rec.theta * rec.theta);
}

LatticeMinimum min_gap_on_lattice(const Parameter& alpha, const Rational& lambda, const Rational& xi,
                                  const LatticeSearchOptions& opts) {
  if (lambda <= 0) throw Error(ErrorCode::ConfigInvalid, "lambda must be positive");
  const RootPair c = c_roots(alpha);
  const Real xr = to_real(xi);
  const double cutoff = cutoff_l_alpha(alpha);
  if (mp::abs(xr) < cutoff) {
    throw Error(ErrorCode::XiBelowCutoff, "|xi| must be at least L_alpha = " + std::to_string(cutoff));
  }
  const Rational radius = opts.radius ? *opts.radius : Rational(4) * (xi < 0 ? Rational(-xi) : xi);
  const Real r = to_real(radius);
  const Real root1 = c.first.real() * xr;
  const Real root2 = c.second.real() * xr;
  if (mp::abs(root1) > r && mp::abs(root2) > r) {
    throw Error(ErrorCode::RangeTooSmall, "search radius excludes both resonant points c1*xi and c2*xi");
  }

  // xi1 = k / lambda with |k| <= radius * lambda
  const BigInt kmax = floor(radius * lambda);
  std::optional<LatticeMinimum> best;
  Real best_dist = 0;
  for (BigInt k = -kmax; k <= kmax; ++k) {
    const Rational xi1 = Rational(k) / lambda;
    if (opts.exclude_zero_modes && (xi1 == 0 || xi1 == xi)) continue;
    const Real g = mp::abs(gamma(alpha, xi, xi1));
    const Real dist = mp::abs(to_real(xi1) - root1);
    if (!best || g < best->gap || (g == best->gap && dist < best_dist)) {
      best = LatticeMinimum{xi1, g, false, false};
      best_dist = dist;
    }
  }
  if (!best) throw Error(ErrorCode::RangeTooSmall, "no admissible lattice point in range");
  const Real inv_lambda = to_real(Rational(1) / lambda);
  best->near_c1 = mp::abs(to_real(best->xi1) - root1) < inv_lambda;
  best->near_c2 = mp::abs(to_real(best->xi1) - root2) < inv_lambda;
  return *best;
}

}  // namespace mbkdv
