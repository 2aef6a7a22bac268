#include <doctest.h>

#include "mbkdv/bilinear.hpp"
#include "mbkdv/errors.hpp"
#include "mbkdv/fit.hpp"
#include "mbkdv/picard.hpp"
#include "mbkdv/resonance.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace mbkdv;

namespace {

const Parameter kRational(Rational(12) / 7);
const Parameter kSurd(Rational(1) / 2);

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ConfigInvalid;
}

// Brute-force oracle: composite Simpson on the tau axis for the weighted, normalized
// convolution of two indicator intervals.
double convolution_oracle(const ConvolutionIntegral& c) {
  auto tri = [&](double x) {
    const double lo = std::max(-c.w1, x - c.w2), hi = std::min(c.w1, x + c.w2);
    return std::max(0.0, hi - lo);
  };
  auto simpson = [](auto&& f, double a, double b, int m) {
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
  };
  // split at the kinks so Simpson sees smooth pieces
  std::vector<double> cuts{-(c.w1 + c.w2), -std::abs(c.w2 - c.w1), std::abs(c.w2 - c.w1), c.w1 + c.w2};
  if (c.offset > cuts.front() && c.offset < cuts.back()) cuts.push_back(c.offset);
  std::sort(cuts.begin(), cuts.end());
  double num = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    num += simpson([&](double x) { return tri(x) * tri(x) * std::pow(1 + std::abs(x - c.offset), 2 * c.exponent_out); },
                   cuts[i], cuts[i + 1], 20000);
  auto norm2 = [&](double w, double e) {
    return 2 * simpson([&](double x) { return std::pow(1 + x, 2 * e); }, 0.0, w, 20000);
  };
  return std::sqrt(num / (norm2(c.w1, c.exponent_1) * norm2(c.w2, c.exponent_2)));
}

double slope(const std::vector<std::int64_t>& ns, auto&& ratio_of) {
  std::vector<double> x, y;
  for (std::int64_t n : ns) {
    x.push_back(std::log(double(n)));
    y.push_back(std::log(ratio_of(n)));
  }
  return least_squares(x, y).slope;
}

}  // namespace

TEST_CASE("weight specs and families") {
  CHECK(WeightSpec::vv(0, 0.5).is_vv());
  CHECK(WeightSpec::uv(0, 0.5).is_uv());
  const auto f = family_c1_rational(kRational, 12);
  CHECK(f.first.xi == 10);
  CHECK(f.second.xi == 2);
  CHECK(f.first.tau_center == dispersion_value(kRational, Dispersion::AlphaCubic, 10));
  CHECK(f.first.half_width == 1.0);
  CHECK(f.second.half_width == 2.0);
  CHECK(code_of([] { family_c1_rational(kSurd, 12); }) == ErrorCode::NotRationalResonance);
  CHECK(code_of([] { family_c1_rational(kRational, 7); }) == ErrorCode::NotRationalResonance);
  const auto near = family_c2_nearest_pair(kSurd, 4);
  CHECK(near.first.xi == 5);
  CHECK(near.second.xi == -1);
}

TEST_CASE("closed-form convolution matches brute force") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> w(0.2, 3), off(-40, 40), ex(-1.5, 1.5);
  for (int i = 0; i < 40; ++i) {
    ConvolutionIntegral c{w(rng), w(rng), off(rng), ex(rng), ex(rng), ex(rng)};
    if (i % 5 == 0) c.offset = 0.3 * c.offset / 40;
    CHECK(normalized_convolution(c) == doctest::Approx(convolution_oracle(c)).epsilon(1e-7));
  }
  // log branch of the norm (2e + 1 = 0) and the large-offset series branch
  ConvolutionIntegral lg{1, 2, 5, -0.5, -0.5, -0.5};
  CHECK(normalized_convolution(lg) == doctest::Approx(convolution_oracle(lg)).epsilon(1e-7));
  ConvolutionIntegral far{1, 2, 1e6, -0.5, 0.5, 0.5};
  // int T^2 = 40/3, weight ~ 1/delta, norms^2 = 3 and 8
  const double expect = std::sqrt((40.0 / 3.0) / (1 + 1e6) / 24.0);
  CHECK(normalized_convolution(far) == doctest::Approx(expect).epsilon(1e-5));
}

TEST_CASE("property: convolution symmetries") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> w(0.2, 3), off(-20, 20), ex(-1, 1);
  for (int i = 0; i < 100; ++i) {
    ConvolutionIntegral c{w(rng), w(rng), off(rng), ex(rng), ex(rng), ex(rng)};
    ConvolutionIntegral mirrored = c;
    mirrored.offset = -c.offset;
    CHECK(normalized_convolution(c) == doctest::Approx(normalized_convolution(mirrored)).epsilon(1e-12));
    ConvolutionIntegral swapped{c.w2, c.w1, c.offset, c.exponent_out, c.exponent_2, c.exponent_1};
    CHECK(normalized_convolution(c) == doctest::Approx(normalized_convolution(swapped)).epsilon(1e-12));
  }
}

TEST_CASE("spike_ratio consistency checks") {
  auto f = family_c2_nearest_pair(kSurd, 21);
  CHECK(code_of([&] { spike_ratio(kSurd, WeightSpec::uv(0, 0.5), f); }) == ErrorCode::InconsistentFamily);
  auto p2 = family_p2_mean_break(kSurd, 10);
  CHECK(code_of([&] { spike_ratio(kSurd, WeightSpec::vv(0, 0.5), p2); }) == ErrorCode::InconsistentFamily);
  auto moved = f;
  moved.first.tau_center += 1;
  CHECK(code_of([&] { spike_ratio(kSurd, WeightSpec::vv(0, 0.5), moved); }) == ErrorCode::InconsistentFamily);
  auto mixed = WeightSpec::vv(0, 0.5);
  mixed.out = Dispersion::AlphaCubic;
  CHECK(code_of([&] { spike_ratio(kSurd, mixed, f); }) == ErrorCode::InconsistentFamily);
  auto zero = f;
  zero.second.amplitude = 0.0;
  CHECK(spike_ratio(kSurd, WeightSpec::vv(0, 0.5), zero) == 0.0);
}

TEST_CASE("case 1: rational resonance grows like N^(1-s)") {
  std::vector<std::int64_t> ns;
  // <N/6>^s is far from (N/6)^s below a few hundred
  for (int k = 1; k <= 16; ++k) ns.push_back(600 * k);
  for (double s : {0.0, 0.5}) {
    auto r = [&](std::int64_t n) { return spike_ratio(kRational, WeightSpec::vv(s, 0.5), family_c1_rational(kRational, n)); };
    CHECK(slope(ns, r) == doctest::Approx(1.0 - s).epsilon(0.05));
  }
  const double a = spike_ratio(kRational, WeightSpec::vv(0, 0.5), family_c1_rational(kRational, 90)) / 90;
  const double b = spike_ratio(kRational, WeightSpec::vv(0, 0.5), family_c1_rational(kRational, 96)) / 96;
  CHECK(a > 0);
  CHECK(std::abs(a - b) < 0.01 * b);
}

TEST_CASE("case 2: low-high and dual families") {
  std::vector<std::int64_t> ns{100, 200, 400, 800, 1600, 3200, 6400};
  for (double b : {0.5, 2.0 / 3.0, 0.8}) {
    auto r = [&](std::int64_t n) { return spike_ratio(kSurd, WeightSpec::vv(0, b), family_c2_low_high(kSurd, n)); };
    CHECK(slope(ns, r) == doctest::Approx(-2 + 3 * b).epsilon(0.02).scale(1.0));
  }
  for (double b : {1.0 / 3.0, 0.5}) {
    auto r = [&](std::int64_t n) {
      return spike_ratio(kSurd, WeightSpec::vv(0, b), family_c2_dual(kSurd, n, n - 1));
    };
    CHECK(slope(ns, r) == doctest::Approx(1 - 3 * b).epsilon(0.02).scale(1.0));
  }
}

TEST_CASE("P2 mean-break family grows like N") {
  for (double s : {-1.0, 0.0, 1.0, 2.0}) {
    for (std::int64_t n = 1; n <= 1000; n += 37) {
      const double r = spike_ratio(kSurd, WeightSpec::uv(s, 0.5), family_p2_mean_break(kSurd, n));
      CHECK(r >= n / 2.0);
    }
  }
}

TEST_CASE("property: nearest-pair ratio decomposes through the gap") {
  for (double s : {0.0, 0.5}) {
    for (double b : {0.5, 0.7}) {
      double lo = INFINITY, hi = -INFINITY;
      for (std::int64_t n = 10; n <= 10000; n += 13) {
        const auto fam = family_c2_nearest_pair(kSurd, n);
        const double gap = static_cast<double>(resonance_gap_integer(kSurd, n).gap);
        const double r = std::log(spike_ratio(kSurd, WeightSpec::vv(s, b), fam));
        const double model = (1 - s) * std::log(double(n)) - (1 - b) * std::log(1 + gap);
        lo = std::min(lo, r - model);
        hi = std::max(hi, r - model);
      }
      CHECK(hi - lo < 2.0);
    }
  }
}

TEST_CASE("property: MAX inequality over evaluated triples") {
  for (std::int64_t n : {7, 21, 100, 987}) {
    CHECK(check_max_inequality(kSurd, WeightSpec::vv(0, 0.5), family_c2_nearest_pair(kSurd, n)).holds);
    CHECK(check_max_inequality(kSurd, WeightSpec::vv(0, 0.5), family_c2_low_high(kSurd, n)).holds);
    CHECK(check_max_inequality(kSurd, WeightSpec::vv(0, 0.5), family_c2_dual(kSurd, n, n - 1)).holds);
    CHECK(check_max_inequality(kSurd, WeightSpec::uv(0, 0.5), family_p2_mean_break(kSurd, n)).holds);
  }
  for (std::int64_t n = 6; n <= 96; n += 6)
    CHECK(check_max_inequality(kRational, WeightSpec::vv(0, 0.5), family_c1_rational(kRational, n)).holds);
}

TEST_CASE("threshold_scan") {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(0.05 * k);
  const auto witnesses = picard_frequencies(kSurd, 10, 1000000);
  const auto surd = threshold_scan(kSurd, 0.5, grid, witnesses);
  REQUIRE(surd.s_star.has_value());
  CHECK(std::abs(*surd.s_star - 0.5) < 0.1);

  std::vector<double> below;
  for (int k = 0; k < 19; ++k) below.push_back(0.05 * k);
  const auto rational = threshold_scan(kRational, 0.5, below, picard_frequencies(kRational, 6, 600));
  for (const auto& f : rational.slopes) CHECK(f.slope > 0);
  CHECK_FALSE(rational.s_star.has_value());
  REQUIRE(rational.s_star_lower.has_value());

  const std::vector<double> high{2.0};
  const auto far = threshold_scan(kSurd, 0.5, high, witnesses);
  CHECK(far.slopes.front().slope < 0);
  CHECK(far.s_star_upper.has_value());

  const std::vector<std::int64_t> two{21, 55};
  CHECK(code_of([&] { threshold_scan(kSurd, 0.5, grid, two); }) == ErrorCode::InsufficientWitnesses);
}

TEST_CASE("omega_count") {
  CHECK(code_of([] { omega_count(kSurd, Rational(1), Rational(1), 4); }) == ErrorCode::XiBelowCutoff);
  // Narrow windows never merge (distinct Gamma values are 1/2 apart), so the measure is
  // the clipped window length summed over the distinct values of Gamma in the annulus.
  {
    const double m = 1 << 16, c = 1e-3;
    std::set<Rational> values;
    for (std::int64_t k = -2000; k <= 2000; ++k) {
      const Rational x1(k), x2 = Rational(16) - x1;
      values.insert(Rational(1, 2) * (x1 * x1 * x1 + x2 * x2 * x2) - Rational(16 * 16 * 16));
    }
    double oracle = 0;
    for (const auto& v : values) {
      const double g = to_double(v), w = c * std::pow(std::abs(g), 0.01);
      const double l = std::max(g - w, g > 0 ? m / 2 : -2 * m), r = std::min(g + w, g > 0 ? 2 * m : -m / 2);
      oracle += std::max(0.0, r - l);
    }
    CHECK(oracle > 0);
    CHECK(omega_count(kSurd, Rational(1), Rational(16), m, c).measure == doctest::Approx(oracle).epsilon(1e-9));
  }
  double c1 = 0, c2 = 0;
  for (double m = 1; m <= 1 << 20; m *= 2) {
    const auto a = omega_count(kSurd, Rational(1), Rational(16), m);
    const auto b = omega_count(kSurd, Rational(2), Rational(16), m);
    CHECK(a.measure >= 0);
    CHECK(b.measure >= a.measure);
    CHECK(omega_count(kSurd, Rational(1), Rational(16), m, 2.0).measure >= a.measure);
    CHECK(omega_count(kSurd, Rational(1), Rational(16), m, 0.0).measure == 0.0);
    c1 = std::max(c1, a.measure / a.bound);
    c2 = std::max(c2, b.measure / b.bound);
  }
  CHECK(c1 > 0);
  CHECK(c2 <= 2 * c1);
  const std::vector<OmegaCount> rows{omega_count(kSurd, Rational(1), Rational(16), 64)};
  CHECK(omega_csv(rows).rfind("xi,M,measure,bound\n16,64,", 0) == 0);
}

TEST_CASE("rectangle lemma") {
  const Rectangle unit{{0, 0}, {0.5, 0.5}};
  CHECK(rect_convolution(unit, unit, 0, 0) == doctest::Approx(1.0));
  const auto chk = rect_conv_lower_bound(unit, unit, 101);
  CHECK(chk.holds);
  CHECK(chk.equality_at_corners);
  CHECK(chk.samples == 101 * 101);
  CHECK(rect_convolution(unit, unit, 0.5, 0.5) == doctest::Approx(0.25));
  const Rectangle other{{1, 1}, {0.5, 0.7}};
  CHECK(code_of([&] { rect_conv_lower_bound(unit, other, 11); }) == ErrorCode::DimensionMismatch);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> c(-100, 100), h(0.01, 20);
  for (int i = 0; i < 20; ++i) {
    const double a = h(rng), b = h(rng);
    const Rectangle r{{c(rng), c(rng)}, {a, b}}, rt{{c(rng), c(rng)}, {a, b}};
    const auto k = rect_conv_lower_bound(r, rt, 21);
    CHECK(k.holds);
    CHECK(k.equality_at_corners);
    // just outside R0 the bound no longer applies but the value stays positive
    const double x = r.center.first + rt.center.first + 1.5 * a;
    CHECK(rect_convolution(r, rt, x, r.center.second + rt.center.second) > 0);
  }
}

TEST_CASE("ratio csv") {
  const std::vector<RatioRow> rows{{SpikeCase::P2_MeanBreak, "1/2", 0, 0.5, 10, 5.5}};
  CHECK(ratio_csv(rows) == "case_id,alpha,s,b,N,ratio\nP2_MeanBreak,1/2,0,0.5,10,5.5\n");
}
