#include <doctest.h>

#include "mbkdv/diophantine.hpp"
#include "mbkdv/errors.hpp"
#include "mbkdv/resonance.hpp"

#include <cmath>
#include <random>

using namespace mbkdv;

namespace {

Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a) / b; }
const QuadraticSurd kGolden(q(1, 2), q(1, 2), BigInt(5));
RootValue c1_half() { return c_roots(Parameter(q(1, 2))).first; }

}  // namespace

TEST_CASE("cf_expand examples") {
  auto r = cf_expand(QuadraticSurd(q(3, 2)));
  CHECK(r.finite);
  REQUIRE(r.terms.size() == 2);
  CHECK(r.terms[0] == 1);
  CHECK(r.terms[1] == 2);

  auto g = cf_expand(kGolden);
  REQUIRE(g.period.has_value());
  CHECK(g.period->preperiod_len == 0);
  CHECK(g.period->period_len == 1);
  for (std::size_t k = 0; k < 20; ++k) CHECK(g.term(k) == 1);

  auto c = cf_expand(c1_half().exact());
  REQUIRE(c.period.has_value());
  CHECK(cf_value(c) == c1_half().exact());
  for (std::size_t k = 1; k < 40; ++k) CHECK(c.term(k) >= 1);
}

TEST_CASE("float path flags precision exhaustion") {
  auto cf = cf_expand(Real(std::sqrt(2.0)), 200);
  CHECK(cf.precision_exhausted);
  CHECK(cf.terms.size() < 200);
  CHECK_THROWS_AS(cf_expand(Real(1.5), 0), Error);
}

TEST_CASE("property: surd to continued fraction round trip") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 10), rad(2, 1000);
  int done = 0;
  while (done < 500) {
    const Rational a = q(num(rng), den(rng)), b = q(num(rng), den(rng));
    if (abs(a) > 100 || abs(b) > 100 || b == 0) continue;
    const BigInt d = rad(rng);
    if (is_perfect_square(d)) continue;
    const QuadraticSurd x(a, b, d);
    const auto cf = cf_expand(x);
    REQUIRE(cf.period.has_value());
    CHECK(cf_value(cf) == x);
    ++done;
  }
}

TEST_CASE("convergents") {
  auto c = convergents(cf_expand(QuadraticSurd(q(3, 2))), 2);
  REQUIRE(c.size() == 2);
  CHECK((c[0].p == 1 && c[0].q == 1));
  CHECK((c[1].p == 3 && c[1].q == 2));
  auto g = convergents(cf_expand(kGolden), 5);
  const int expect[5][2] = {{1, 1}, {2, 1}, {3, 2}, {5, 3}, {8, 5}};
  for (int i = 0; i < 5; ++i) CHECK((g[i].p == expect[i][0] && g[i].q == expect[i][1]));

  // Dirichlet property and coprimality; recurrence oracle on the partial quotients.
  const auto cf = cf_expand(c1_half().exact());
  auto cv = convergents(cf, 30);
  BigInt p_prev = 1, q_prev = 0, p = cf.term(0), qq = 1;
  for (std::size_t k = 0; k < cv.size(); ++k) {
    if (k > 0) {
      const BigInt a = cf.term(k);
      BigInt pn = a * p + p_prev, qn = a * qq + q_prev;
      p_prev = p;
      q_prev = qq;
      p = pn;
      qq = qn;
    }
    CHECK(cv[k].p == p);
    CHECK(cv[k].q == qq);
    CHECK(gcd(cv[k].p, cv[k].q) == 1);
    CHECK(Real(cv[k].q) * Real(cv[k].q) * cv[k].error < Real(1));
  }
  // badly approximable: q^2 error bounded below at k = 10
  CHECK(Real(cv[10].q) * Real(cv[10].q) * cv[10].error > Real(0.05));
}

TEST_CASE("nearest_int_dist") {
  CHECK(static_cast<double>(nearest_int_dist(RootValue(QuadraticSurd(q(5, 6))), 6)) == 0.0);
  // c1(1/2) * 4 = 2 + 2 sqrt(21)/3, nearest integer 5
  const double expect = 5.0 - (2.0 + 2.0 * std::sqrt(21.0) / 3.0);
  CHECK(static_cast<double>(nearest_int_dist(c1_half(), 4)) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(std::abs(static_cast<double>(nearest_int_dist(RootValue(QuadraticSurd(q(1, 2))), 3))) == 0.5);
}

TEST_CASE("estimate_type_index") {
  auto r = estimate_type_index(RootValue(QuadraticSurd(q(3, 2))), 1000);
  CHECK(r.classification == TypeClass::Rational);
  CHECK(r.infinite());
  auto s = estimate_type_index(c1_half(), 10000);
  CHECK(s.classification == TypeClass::QuadraticSurd);
  CHECK(s.nu_hat == 0.0);
  CHECK(s.k_hat > 0.0);
  auto e = estimate_type_index(RootValue(Real("0.7390851332")), 100000);
  CHECK(e.classification == TypeClass::Empirical);
  CHECK(e.nu_hat >= 0.0);
}

TEST_CASE("verify_type_bound") {
  CHECK(verify_type_bound(RootValue(kGolden), 0.2, 0.0, 10000).holds);
  auto half = verify_type_bound(RootValue(QuadraticSurd(q(1, 2))), 1e-3, 0.0, 100);
  CHECK_FALSE(half.holds);
  REQUIRE(half.violation.has_value());
  CHECK(half.violation->first == 1);
  CHECK(half.violation->second == 2);
  const auto est = estimate_type_index(c1_half(), 100000);
  CHECK(verify_type_bound(c1_half(), est.k_hat, est.nu_hat, 100000).holds);
}

TEST_CASE("property: surd spacing q * ||q x|| > 1/(A + 2)") {
  for (const auto& x : {kGolden, c1_half().exact(), QuadraticSurd(q(0), q(1), BigInt(7))}) {
    const auto cf = cf_expand(x);
    BigInt amax = 0;
    for (std::size_t k = 1; k <= cf.terms.size(); ++k) amax = std::max(amax, cf.term(k));
    const double floor_value = 1.0 / (static_cast<double>(amax) + 2.0);
    const Real xr = x.to_real();
    double worst = INFINITY;
    for (std::int64_t n = 1; n <= 1000000; ++n) {
      const Real y = xr * n;
      const double dist = static_cast<double>(abs(y - round(y)));
      worst = std::min(worst, double(n) * dist);
    }
    CHECK(worst > floor_value);
  }
}

TEST_CASE("theta_subsequence") {
  auto g = theta_subsequence(RootValue(kGolden), 100);
  std::vector<std::int64_t> fib;
  for (const auto& w : g) fib.push_back(w.n);
  const std::vector<std::int64_t> expect{1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  CHECK(fib == expect);
  auto h = theta_subsequence(c1_half(), 10000);
  CHECK(h.size() >= 5);
  for (const auto& w : h) CHECK(abs(w.theta) * w.n < Real(1));
  CHECK_THROWS_WITH_AS(theta_subsequence(c_roots(Parameter(4)).first, 100), doctest::Contains("XRational"), Error);
}
