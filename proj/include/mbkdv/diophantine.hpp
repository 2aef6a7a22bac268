#pragma once

#include "mbkdv/numeric.hpp"
#include "mbkdv/quadratic_surd.hpp"
#include "mbkdv/resonance.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace mbkdv {

struct Period {
  std::size_t preperiod_len = 0;  ///< counted over the full sequence a0, a1, ...
  std::size_t period_len = 0;
};

struct ContinuedFraction {
  /// Full sequence a0, a1, ...; for surds exactly preperiod + one period.
  std::vector<BigInt> terms;
  std::optional<Period> period;
  /// Float path stopped because the uncertainty interval straddled an integer.
  bool precision_exhausted = false;
  /// The expansion terminated (rational input).
  bool finite = false;
  Real value = 0;
  std::optional<QuadraticSurd> exact_value;

  const BigInt& a0() const { return terms.front(); }
  /// a_k for any k when periodic; otherwise k must be < terms.size().
  const BigInt& term(std::size_t k) const;
  /// Number of terms available (unbounded for periodic expansions).
  std::size_t available() const;
};

/// Exact expansion; periodic tail detected for irrational surds, finite for rationals.
ContinuedFraction cf_expand(const QuadraticSurd& x, std::size_t max_terms = 64);
/// Interval-checked expansion of a 128-bit float; terms are accepted only while the
/// uncertainty interval stays inside one integer cell.
ContinuedFraction cf_expand(const Real& x, std::size_t max_terms = 64);
ContinuedFraction cf_expand(const RootValue& x, std::size_t max_terms = 64);

/// Rebuilds the exact value of a finite or eventually periodic expansion.
QuadraticSurd cf_value(const ContinuedFraction& cf);

struct Convergent {
  BigInt p;
  BigInt q;
  Real error = 0;  ///< |x - p/q|
};

/// First k convergents p_i/q_i of the expansion.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t k);
/// All convergents with q <= q_max.
std::vector<Convergent> convergents_up_to(const ContinuedFraction& cf, const BigInt& q_max);

/// Signed theta = [x n] - x n with |theta| <= 1/2 (halves rounded away from zero).
Real nearest_int_dist(const RootValue& x, std::int64_t n);

enum class TypeClass { Rational, QuadraticSurd, Empirical };

struct TypeWitness {
  std::int64_t n = 0;
  double scaled_distance = 0;  ///< n^{2+nu} |x - m/n|
};

struct TypeIndexEstimate {
  double nu_hat = 0;  ///< +inf for rationals
  double k_hat = 0;
  TypeClass classification = TypeClass::Empirical;
  std::vector<TypeWitness> witnesses;
  /// Largest partial quotient seen (period maximum for surds).
  BigInt max_partial_quotient = 0;

  bool infinite() const { return nu_hat == std::numeric_limits<double>::infinity(); }
};

TypeIndexEstimate estimate_type_index(const RootValue& x, std::int64_t n_max);

struct TypeBoundCheck {
  bool holds = true;
  std::optional<std::pair<BigInt, std::int64_t>> violation;  ///< (m, n)
};

/// |x - m/n| >= K / n^{2+nu} for all 1 <= n <= n_max with m = [x n].
TypeBoundCheck verify_type_bound(const RootValue& x, double k_const, double nu, std::int64_t n_max);

struct ThetaWitness {
  std::int64_t n = 0;
  Real theta = 0;
};

/// Convergent denominators n <= n_max, each with |theta_n| < 1/n.
std::vector<ThetaWitness> theta_subsequence(const RootValue& x, std::int64_t n_max);

}  // namespace mbkdv
