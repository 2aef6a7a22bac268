#pragma once

#include "mbkdv/numeric.hpp"
#include "mbkdv/quadratic_surd.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>

namespace mbkdv {

/// A real number carried exactly (quadratic surd) when the inputs were rational,
/// otherwise as a 128-bit float.
class RootValue {
 public:
  RootValue(QuadraticSurd exact) : value_(std::move(exact)) {}
  RootValue(Real approx) : value_(std::move(approx)) {}

  bool is_exact() const { return std::holds_alternative<QuadraticSurd>(value_); }
  const QuadraticSurd& exact() const { return std::get<QuadraticSurd>(value_); }
  Real real() const;
  double to_double() const { return static_cast<double>(real()); }
  /// Only decidable on the exact path.
  std::optional<bool> is_rational() const;
  std::string to_string() const;

  /// [x*n]: closest integer to x*n, halves away from zero.
  BigInt nearest_multiple(std::int64_t n) const;
  /// k - x*n evaluated without cancellation on the exact path.
  Real offset_from(const BigInt& k, std::int64_t n) const;

 private:
  std::variant<QuadraticSurd, Real> value_;
};

struct RootPair {
  RootValue first;
  RootValue second;
};

/// c1 >= c2 with c1 + c2 = 1 and 1 - alpha(c1^3 + c2^3) = 0. Needs alpha in (0, 4].
RootPair c_roots(const Parameter& alpha);

/// d1, d2 solving alpha - d^3 - alpha(1 - d)^3 = 0. Needs alpha in (0,1) u (1,4].
RootPair d_roots(const Parameter& alpha);

/// Small-frequency cutoff 6/sqrt(-3 + 12/alpha); +inf at alpha = 4.
double cutoff_l_alpha(const Parameter& alpha);

struct ResonanceRoots {
  RootValue c1;
  RootValue c2;
  std::optional<RootValue> d1;
  std::optional<RootValue> d2;
  double cutoff_l_alpha = 0.0;
};

ResonanceRoots resonance_roots(const Parameter& alpha);

/// 1 - alpha(c1^3 + c2^3), evaluated in 128-bit arithmetic (exactly 0 on the exact path
/// when evaluated with resonance_residual_exact).
Real c_residual(const Parameter& alpha, const RootPair& c);
Real d_residual(const Parameter& alpha, const RootValue& d);
/// Exact residuals; only valid when alpha and the roots are exact.
QuadraticSurd c_residual_exact(const Rational& alpha, const RootPair& c);
QuadraticSurd d_residual_exact(const Rational& alpha, const RootValue& d);

/// Gamma_xi(xi1) = -xi^3 + alpha xi1^3 + alpha xi2^3 with xi2 = xi - xi1.
Real gamma(const Parameter& alpha, const Rational& xi, const Rational& xi1);
/// The factored form 3 alpha xi xi1^2 - 3 alpha xi^2 xi1 - (1 - alpha) xi^3.
Real gamma_factored(const Parameter& alpha, const Rational& xi, const Rational& xi1);
double gamma(double alpha, double xi, double xi1);
double gamma_factored(double alpha, double xi, double xi1);

struct ResonanceGapRecord {
  std::int64_t n = 0;
  std::int64_t nearest_c1n = 0;
  std::int64_t nearest_c2n = 0;
  Real theta = 0;             ///< [c1 n] - c1 n
  Real gap = 0;               ///< |alpha[c1 n]^3 + alpha[c2 n]^3 - n^3|
  Real gamma_at_nearest = 0;  ///< signed Gamma_n([c1 n])
  Real c3 = 0;                ///< c1 - c2
  std::optional<Rational> gap_exact;
};

/// [c1 n] is rounded half away from zero and [c2 n] := n - [c1 n].
ResonanceGapRecord resonance_gap_integer(const Parameter& alpha, std::int64_t n);

/// Two-term expansion |3 alpha c3 n^2 theta + 3 alpha n theta^2| of the gap.
Real gap_expansion(const Parameter& alpha, const ResonanceGapRecord& rec);

struct LatticeSearchOptions {
  std::optional<Rational> radius;  ///< defaults to 4|xi|
  bool exclude_zero_modes = false;  ///< skip xi1 = 0 and xi2 = 0
};

struct LatticeMinimum {
  Rational xi1;
  Real gap = 0;
  bool near_c1 = false;  ///< |xi1 - c1 xi| < 1/lambda
  bool near_c2 = false;
};

/// Minimizes |Gamma_xi(xi1)| over xi1 in Z/lambda with |xi1| <= radius.
LatticeMinimum min_gap_on_lattice(const Parameter& alpha, const Rational& lambda, const Rational& xi,
                                  const LatticeSearchOptions& opts = {});

}  // namespace mbkdv
