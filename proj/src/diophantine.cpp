#include "mbkdv/diophantine.hpp"

#include "mbkdv/errors.hpp"
#include "mbkdv/fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mbkdv {

namespace mp = boost::multiprecision;

const BigInt& ContinuedFraction::term(std::size_t k) const {
  if (k < terms.size()) return terms[k];
  if (!period) throw std::out_of_range("continued fraction term beyond the computed expansion");
  const std::size_t pre = period->preperiod_len;
  return terms[pre + (k - pre) % period->period_len];
}

std::size_t ContinuedFraction::available() const {
  return period ? std::numeric_limits<std::size_t>::max() : terms.size();
}

namespace {

ContinuedFraction expand_rational(const Rational& r, std::size_t max_terms) {
  ContinuedFraction cf;
  cf.finite = true;
  cf.value = to_real(r);
  cf.exact_value = QuadraticSurd(r);
  BigInt num = mp::numerator(r);
  BigInt den = mp::denominator(r);
  while (den != 0 && cf.terms.size() < std::max<std::size_t>(max_terms, 1)) {
    const BigInt a = floor_div(num, den);
    cf.terms.push_back(a);
    const BigInt rem = num - a * den;
    num = den;
    den = rem;
  }
  cf.finite = den == 0;
  return cf;
}

}  // namespace

ContinuedFraction cf_expand(const QuadraticSurd& x, std::size_t max_terms) {
  if (max_terms < 1) throw Error(ErrorCode::ConfigInvalid, "max_terms must be >= 1");
  if (x.is_rational()) return expand_rational(x.rational_part(), max_terms);

  ContinuedFraction cf;
  cf.value = x.to_real();
  cf.exact_value = x;

  // x = (P + sqrt(D)) / Q with Q | (D - P^2)
  const Rational& a = x.rational_part();
  const Rational& b = x.surd_coefficient();
  const BigInt l = mp::lcm(mp::denominator(a), mp::denominator(b));
  BigInt p = mp::numerator(a) * (l / mp::denominator(a));
  BigInt bb = mp::numerator(b) * (l / mp::denominator(b));
  BigInt q = l;
  if (bb < 0) {
    bb = -bb;
    p = -p;
    q = -q;
  }
  BigInt d = bb * bb * x.radicand();
  if ((d - p * p) % q != 0) {
    const BigInt aq = mp::abs(q);
    p *= aq;
    d *= q * q;
    q *= aq;
  }
  const BigInt s = mp::sqrt(d);

  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  for (;;) {
    auto [it, inserted] = seen.emplace(std::make_pair(p, q), cf.terms.size());
    if (!inserted) {
      cf.period = Period{it->second, cf.terms.size() - it->second};
      break;
    }
    const BigInt t = q > 0 ? floor_div(p + s, q) : floor_div(p + s + 1, q);
    cf.terms.push_back(t);
    p = t * q - p;
    q = (d - p * p) / q;
  }
  return cf;
}

ContinuedFraction cf_expand(const Real& x, std::size_t max_terms) {
  if (max_terms < 1) throw Error(ErrorCode::ConfigInvalid, "max_terms must be >= 1");
  ContinuedFraction cf;
  cf.value = x;
  // relative representation error of binary128 plus a little slack per step
  const Real rel = mp::ldexp(Real(1), -108);
  Real lo = x - mp::abs(x) * rel;
  Real hi = x + mp::abs(x) * rel;
  if (x == 0) {
    cf.terms.push_back(0);
    cf.finite = true;
    return cf;
  }
  while (cf.terms.size() < max_terms) {
    const Real fl = mp::floor(lo);
    if (mp::floor(hi) != fl) {
      cf.precision_exhausted = true;
      break;
    }
    cf.terms.push_back(BigInt(fl));
    const Real dlo = lo - fl;
    const Real dhi = hi - fl;
    if (dlo <= 0) {
      // x is (numerically) the rational [a0; ..., a_k]
      cf.precision_exhausted = true;
      break;
    }
    const Real nlo = 1 / dhi;
    const Real nhi = 1 / dlo;
    lo = nlo * (1 - rel);
    hi = nhi * (1 + rel);
  }
  return cf;
}

ContinuedFraction cf_expand(const RootValue& x, std::size_t max_terms) {
  if (x.is_exact()) return cf_expand(x.exact(), max_terms);
  return cf_expand(x.real(), max_terms);
}

namespace {

// [[p_k, p_{k-1}], [q_k, q_{k-1}]] for terms[from, to)
struct Mobius {
  BigInt p = 1, p_prev = 0, q = 0, q_prev = 1;
};

Mobius fold(const ContinuedFraction& cf, std::size_t from, std::size_t to) {
  Mobius m;
  for (std::size_t k = from; k < to; ++k) {
    const BigInt& a = cf.terms[k];
    BigInt p = a * m.p + m.p_prev;
    BigInt q = a * m.q + m.q_prev;
    m.p_prev = m.p;
    m.q_prev = m.q;
    m.p = p;
    m.q = q;
  }
  return m;
}

}  // namespace

QuadraticSurd cf_value(const ContinuedFraction& cf) {
  if (!cf.period) {
    if (!cf.finite) throw std::domain_error("cf_value: expansion is neither finite nor periodic");
    const Mobius m = fold(cf, 0, cf.terms.size());
    return QuadraticSurd(Rational(m.p, m.q));
  }
  const std::size_t pre = cf.period->preperiod_len;
  const std::size_t per = cf.period->period_len;
  // y = [overline{a_pre ... a_{pre+per-1}}] solves q y^2 + (q' - p) y - p' = 0
  const Mobius tail = fold(cf, pre, pre + per);
  // Reduce to the primitive polynomial: its discriminant is the GL2(Z)-invariant one
  // and stays small, while the raw one grows with the period length.
  BigInt qa = tail.q, qb = tail.q_prev - tail.p, qc = -tail.p_prev;
  const BigInt g = gcd(gcd(qa, qb), qc);
  qa /= g;
  qb /= g;
  qc /= g;
  const BigInt disc = qb * qb - 4 * qa * qc;
  const QuadraticSurd y = (QuadraticSurd(Rational(-qb)) + QuadraticSurd::sqrt(Rational(disc))) /
                          QuadraticSurd(Rational(2 * qa));
  if (pre == 0) return y;
  const Mobius head = fold(cf, 0, pre);
  return (QuadraticSurd(Rational(head.p)) * y + QuadraticSurd(Rational(head.p_prev))) /
         (QuadraticSurd(Rational(head.q)) * y + QuadraticSurd(Rational(head.q_prev)));
}

namespace {

Real approximation_error(const ContinuedFraction& cf, const BigInt& p, const BigInt& q) {
  if (cf.exact_value) {
    return mp::abs((*cf.exact_value - QuadraticSurd(Rational(p, q))).to_real());
  }
  return mp::abs(cf.value - Real(p) / Real(q));
}

template <typename Stop>
std::vector<Convergent> walk_convergents(const ContinuedFraction& cf, Stop stop) {
  std::vector<Convergent> out;
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (std::size_t k = 0; k < cf.available(); ++k) {
    const BigInt& a = cf.term(k);
    const BigInt p = a * p_prev + p_prev2;
    const BigInt q = a * q_prev + q_prev2;
    if (stop(k, q)) break;
    out.push_back({p, q, approximation_error(cf, p, q)});
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
  }
  return out;
}

}  // namespace

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t k) {
  if (k > cf.available()) {
    throw Error(ErrorCode::ConfigInvalid, "requested more convergents than available terms");
  }
  return walk_convergents(cf, [k](std::size_t i, const BigInt&) { return i >= k; });
}

std::vector<Convergent> convergents_up_to(const ContinuedFraction& cf, const BigInt& q_max) {
  return walk_convergents(cf, [&q_max](std::size_t, const BigInt& q) { return q > q_max; });
}

Real nearest_int_dist(const RootValue& x, std::int64_t n) {
  return x.offset_from(x.nearest_multiple(n), n);
}

namespace {

// |x n - [x n]| in 128-bit arithmetic
Real distance_to_integer(const Real& x, std::int64_t n) {
  const Real y = x * n;
  const Real m = mp::floor(y + Real(0.5));
  return mp::abs(y - m);
}

std::vector<Convergent> distinct_denominators(std::vector<Convergent> cs) {
  std::vector<Convergent> out;
  for (auto& c : cs) {
    if (!out.empty() && out.back().q == c.q) {
      out.back() = std::move(c);  // keep the later (better) one
    } else {
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

TypeIndexEstimate estimate_type_index(const RootValue& x, std::int64_t n_max) {
  if (n_max < 100) throw Error(ErrorCode::ConfigInvalid, "estimate_type_index needs n_max >= 100");
  TypeIndexEstimate est;
  if (x.is_exact() && x.exact().is_rational()) {
    est.classification = TypeClass::Rational;
    est.nu_hat = std::numeric_limits<double>::infinity();
    return est;
  }

  const ContinuedFraction cf = cf_expand(x, 256);
  const auto cs = distinct_denominators(convergents_up_to(cf, BigInt(n_max)));
  if (cs.size() < 3) {
    throw Error(ErrorCode::InsufficientWitnesses,
                "fewer than 3 convergents with denominator <= " + std::to_string(n_max));
  }

  if (x.is_exact()) {
    // bounded partial quotients: q |q x - p| > 1/(a_{k+1} + 2) for every convergent
    est.classification = TypeClass::QuadraticSurd;
    est.nu_hat = 0;
    const std::size_t span = cf.period->preperiod_len + cf.period->period_len;
    for (std::size_t k = 1; k <= span; ++k) est.max_partial_quotient = std::max(est.max_partial_quotient, cf.term(k));
    est.k_hat = 1.0 / (static_cast<double>(est.max_partial_quotient) + 2.0);
    for (const auto& c : cs) {
      const double q = static_cast<double>(c.q);
      est.witnesses.push_back({static_cast<std::int64_t>(c.q), static_cast<double>(c.error) * q * q});
    }
    return est;
  }

  est.classification = TypeClass::Empirical;
  std::vector<double> lx, ly;
  std::vector<std::pair<std::int64_t, Real>> pts;
  for (const auto& c : cs) {
    if (c.q < 2) continue;
    const auto n = static_cast<std::int64_t>(c.q);
    const Real dist = distance_to_integer(x.real(), n);
    if (dist <= 0) continue;
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(-static_cast<double>(mp::log(dist)));
    pts.emplace_back(n, dist);
  }
  if (lx.size() < 3) {
    throw Error(ErrorCode::InsufficientWitnesses, "fewer than 3 usable convergent witnesses");
  }
  for (std::size_t k = 1; k < cf.terms.size(); ++k) est.max_partial_quotient = std::max(est.max_partial_quotient, cf.terms[k]);
  const LinearFit fit = least_squares(lx, ly);
  est.nu_hat = std::max(0.0, fit.slope - 1.0);
  // K = min over witnesses of n^{1+nu} ||n x||; convergents dominate the minimum over all n
  double k_min = std::numeric_limits<double>::infinity();
  for (const auto& [n, dist] : pts) {
    const double scaled = std::pow(static_cast<double>(n), 1.0 + est.nu_hat) * static_cast<double>(dist);
    k_min = std::min(k_min, scaled);
    est.witnesses.push_back({n, scaled});
  }
  // n = 1 is also a candidate
  k_min = std::min(k_min, static_cast<double>(distance_to_integer(x.real(), 1)));
  est.k_hat = k_min * (1 - 1e-12);
  return est;
}

TypeBoundCheck verify_type_bound(const RootValue& x, double k_const, double nu, std::int64_t n_max) {
  if (!(k_const > 0) || nu < 0) throw Error(ErrorCode::ConfigInvalid, "verify_type_bound needs K > 0 and nu >= 0");
  TypeBoundCheck out;
  const Real xr = x.real();
  const bool exact_rational = x.is_exact() && x.exact().is_rational();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const BigInt m = x.nearest_multiple(n);
    Real dist;
    if (exact_rational) {
      dist = mp::abs(to_real(Rational(m) - x.exact().rational_part() * n));
    } else {
      dist = mp::abs(xr * n - Real(m));
    }
    // |x - m/n| >= K/n^{2+nu}  <=>  n^{1+nu} |x n - m| >= K
    const double scaled = (nu == 0 ? static_cast<double>(dist) * static_cast<double>(n)
                                   : std::pow(static_cast<double>(n), 1.0 + nu) * static_cast<double>(dist));
    if (scaled < k_const) {
      out.holds = false;
      out.violation = std::make_pair(m, n);
      return out;
    }
  }
  return out;
}

std::vector<ThetaWitness> theta_subsequence(const RootValue& x, std::int64_t n_max) {
  if (x.is_exact() && x.exact().is_rational()) {
    const auto den = mp::denominator(x.exact().rational_part());
    throw Error(ErrorCode::XRational, "x is rational; theta_n vanishes for every multiple of " +
                                          den.str());
  }
  const ContinuedFraction cf = cf_expand(x, 256);
  std::vector<ThetaWitness> out;
  for (const auto& c : distinct_denominators(convergents_up_to(cf, BigInt(n_max)))) {
    const auto n = static_cast<std::int64_t>(c.q);
    const Real theta = nearest_int_dist(x, n);
    if (mp::abs(theta) * n < 1) out.push_back({n, theta});
  }
  return out;
}

}  // namespace mbkdv
