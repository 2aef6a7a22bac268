#include "mbkdv/bilinear.hpp"

#include "mbkdv/errors.hpp"
#include "mbkdv/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace mbkdv {

WeightSpec WeightSpec::vv(double s, double b) {
  return {s, b, Dispersion::AlphaCubic, Dispersion::AlphaCubic, Dispersion::Cubic};
}

WeightSpec WeightSpec::uv(double s, double b) {
  return {s, b, Dispersion::Cubic, Dispersion::AlphaCubic, Dispersion::AlphaCubic};
}

bool WeightSpec::is_vv() const {
  return left == Dispersion::AlphaCubic && right == Dispersion::AlphaCubic && out == Dispersion::Cubic;
}

bool WeightSpec::is_uv() const {
  return left == Dispersion::Cubic && right == Dispersion::AlphaCubic && out == Dispersion::AlphaCubic;
}

std::string to_string(SpikeCase c) {
  switch (c) {
    case SpikeCase::C1_Rational: return "C1_Rational";
    case SpikeCase::C2_LowHigh: return "C2_LowHigh";
    case SpikeCase::C2_NearestPair: return "C2_NearestPair";
    case SpikeCase::C2_Dual: return "C2_Dual";
    case SpikeCase::P2_MeanBreak: return "P2_MeanBreak";
  }
  return "unknown";
}

Real dispersion_value(const Parameter& alpha, Dispersion d, std::int64_t xi) {
  const Real x = Real(xi);
  const Real c = x * x * x;
  if (d == Dispersion::Cubic) return c;
  if (alpha.is_exact()) return to_real(alpha.exact() * Rational(BigInt(xi) * xi * xi));
  return alpha.real() * c;
}

namespace {

Spike spike(const Parameter& alpha, Dispersion d, std::int64_t xi, double w) {
  return {xi, dispersion_value(alpha, d, xi), w, 1.0};
}

}  // namespace

SpikeFamily family_c1_rational(const Parameter& alpha, std::int64_t n) {
  const auto roots = c_roots(alpha);
  if (!(roots.first.is_exact() && roots.first.exact().is_rational()))
    throw Error(ErrorCode::NotRationalResonance, "c1 is not rational");
  const Rational x1 = roots.first.exact().rational_part() * n;
  if (denominator(x1) != 1) throw Error(ErrorCode::NotRationalResonance, "c1 N is not an integer");
  const auto k1 = static_cast<std::int64_t>(numerator(x1));
  return {SpikeCase::C1_Rational, n, spike(alpha, Dispersion::AlphaCubic, k1, 1.0),
          spike(alpha, Dispersion::AlphaCubic, n - k1, 2.0)};
}

SpikeFamily family_c2_low_high(const Parameter& alpha, std::int64_t n) {
  return {SpikeCase::C2_LowHigh, n, spike(alpha, Dispersion::AlphaCubic, 1, 1.0),
          spike(alpha, Dispersion::AlphaCubic, n - 1, 2.0)};
}

SpikeFamily family_c2_nearest_pair(const Parameter& alpha, std::int64_t n) {
  const auto rec = resonance_gap_integer(alpha, n);
  return {SpikeCase::C2_NearestPair, n, spike(alpha, Dispersion::AlphaCubic, rec.nearest_c1n, 1.0),
          spike(alpha, Dispersion::AlphaCubic, rec.nearest_c2n, 2.0)};
}

SpikeFamily family_c2_dual(const Parameter& alpha, std::int64_t n, std::int64_t xi2) {
  return {SpikeCase::C2_Dual, n, spike(alpha, Dispersion::Cubic, n, 1.0),
          spike(alpha, Dispersion::AlphaCubic, xi2, 2.0)};
}

SpikeFamily family_p2_mean_break(const Parameter& alpha, std::int64_t n) {
  return {SpikeCase::P2_MeanBreak, n, spike(alpha, Dispersion::Cubic, 0, 1.0),
          spike(alpha, Dispersion::AlphaCubic, n, 2.0)};
}

namespace {

/// int_{y1}^{y2} y^e dy for 1 <= y1 <= y2.
double power_integral(double y1, double y2, double e) {
  const double q = e + 1.0;
  const double log_ratio = std::log(y2 / y1);
  if (q == 0.0) return log_ratio;
  return std::pow(y1, q) * std::expm1(q * log_ratio) / q;
}

/// int_0^h u^k (y0 + sigma u)^p du with y0 >= 1 and y0 + sigma h >= 1.
double moment(int k, double h, double y0, int sigma, double p) {
  if (h <= 0.0) return 0.0;
  if (y0 > 4.0 * h) {
    // Binomial series in sigma u / y0, ratio at most 1/4.
    double sum = 0.0, coeff = 1.0, ratio = 1.0;
    for (int j = 0; j < 60; ++j) {
      const double term = coeff * ratio * std::pow(h, k + j + 1) / double(k + j + 1);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      coeff *= (p - j) / double(j + 1);
      ratio *= double(sigma) / y0;
    }
    return std::pow(y0, p) * sum;
  }
  // u = sigma (y - y0): expand (y - y0)^k and integrate the powers of y exactly.
  const double y1 = std::min(y0, y0 + sigma * h), y2 = std::max(y0, y0 + sigma * h);
  const double orient = sigma > 0 ? 1.0 : -1.0;  // flips the bounds for sigma < 0
  static constexpr double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
  double sum = 0.0;
  for (int i = 0; i <= k; ++i)
    sum += binom[k][i] * std::pow(-y0, k - i) * power_integral(y1, y2, i + p);
  // du = sigma dy and u^k = sigma^k (y - y0)^k.
  const double sk = (k % 2 == 0 || sigma > 0) ? 1.0 : -1.0;
  return sk * double(sigma) * orient * sum;
}

}  // namespace

double normalized_convolution(const ConvolutionIntegral& c) {
  if (!(c.w1 > 0.0 && c.w2 > 0.0)) throw Error(ErrorCode::InconsistentFamily, "half-widths must be positive");
  const double wa = std::min(c.w1, c.w2), wb = std::max(c.w1, c.w2);
  const double p = 2.0 * c.exponent_out;
  struct Piece {
    double l, r, t_at_l, slope;
  };
  const Piece pieces[3] = {{-(wa + wb), -(wb - wa), 0.0, 1.0}, {-(wb - wa), wb - wa, 2.0 * wa, 0.0},
                           {wb - wa, wa + wb, 2.0 * wa, -1.0}};
  const double delta = c.offset;
  double total = 0.0;
  for (const auto& pc : pieces) {
    std::vector<double> cuts{pc.l};
    if (delta > pc.l && delta < pc.r) cuts.push_back(delta);
    cuts.push_back(pc.r);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double l = cuts[i], r = cuts[i + 1], h = r - l;
      if (h <= 0.0) continue;
      const double t0 = pc.t_at_l + pc.slope * (l - pc.l);
      // T^2 = t0^2 + 2 t0 B u + B^2 u^2 on [l, r], u = x - l.
      const double a0 = t0 * t0, a1 = 2.0 * t0 * pc.slope, a2 = pc.slope * pc.slope;
      const bool right_of = l >= delta;
      const double y0 = right_of ? 1.0 + (l - delta) : 1.0 + (delta - l);
      const int sigma = right_of ? 1 : -1;
      total += a0 * moment(0, h, y0, sigma, p) + a1 * moment(1, h, y0, sigma, p) + a2 * moment(2, h, y0, sigma, p);
    }
  }
  const double nf = 2.0 * power_integral(1.0, 1.0 + c.w1, 2.0 * c.exponent_1);
  const double ng = 2.0 * power_integral(1.0, 1.0 + c.w2, 2.0 * c.exponent_2);
  return std::sqrt(total / (nf * ng));
}

namespace {

Dispersion first_slot(const WeightSpec& w, bool dual) { return dual ? w.out : w.left; }

void validate(const Parameter& alpha, const WeightSpec& w, const SpikeFamily& f) {
  if (!w.is_vv() && !w.is_uv())
    throw Error(ErrorCode::InconsistentFamily, "weights match neither bilinear form");
  const bool wants_uv = f.case_id == SpikeCase::P2_MeanBreak;
  if (wants_uv != w.is_uv())
    throw Error(ErrorCode::InconsistentFamily, to_string(f.case_id) + " does not belong to this bilinear form");
  auto on_curve = [&](const Spike& sp, Dispersion d) {
    const Real target = dispersion_value(alpha, d, sp.xi);
    const Real scale = std::max(Real(1), abs(target));
    return abs(sp.tau_center - target) <= Real(1e-24) * scale;
  };
  if (!on_curve(f.first, first_slot(w, f.dual())) || !on_curve(f.second, w.right))
    throw Error(ErrorCode::InconsistentFamily, "spike tau-centre is off its dispersion curve");
  if (!(f.first.half_width > 0.0 && f.second.half_width > 0.0))
    throw Error(ErrorCode::InconsistentFamily, "half-widths must be positive");
}

double bracket(double x) { return 1.0 + std::abs(x); }

struct Geometry {
  std::int64_t xi, xi1, xi2;
  Real offset;  // output curve minus centre of the tau-convolution
};

Geometry geometry(const Parameter& alpha, const WeightSpec& w, const SpikeFamily& f) {
  if (!f.dual()) {
    const std::int64_t xi = f.first.xi + f.second.xi;
    return {xi, f.first.xi, f.second.xi,
            dispersion_value(alpha, w.out, xi) - (f.first.tau_center + f.second.tau_center)};
  }
  const std::int64_t xi1 = f.first.xi - f.second.xi;
  return {f.first.xi, xi1, f.second.xi,
          dispersion_value(alpha, w.left, xi1) - (f.first.tau_center - f.second.tau_center)};
}

}  // namespace

double spike_ratio(const Parameter& alpha, const WeightSpec& weights, const SpikeFamily& family) {
  validate(alpha, weights, family);
  if (family.first.amplitude == 0.0 || family.second.amplitude == 0.0) return 0.0;
  const Geometry g = geometry(alpha, weights, family);
  const double s = weights.s, b = weights.b;
  double pref = std::abs(double(g.xi)) * std::pow(bracket(double(g.xi)), s) /
                (std::pow(bracket(double(g.xi1)), s) * std::pow(bracket(double(g.xi2)), s));
  ConvolutionIntegral ci;
  ci.w1 = family.first.half_width;
  ci.w2 = family.second.half_width;
  ci.offset = static_cast<double>(g.offset);
  if (!family.dual()) {
    ci.exponent_out = b - 1.0;
    ci.exponent_1 = b;
    ci.exponent_2 = b;
  } else {
    ci.exponent_out = -b;
    ci.exponent_1 = 1.0 - b;
    ci.exponent_2 = b;
    pref /= 2.0 * std::numbers::pi;
  }
  return pref * normalized_convolution(ci);
}

ThresholdScan threshold_scan(const Parameter& alpha, double b, std::span<const double> s_grid,
                             std::span<const std::int64_t> n_list) {
  if (n_list.size() < 3) throw Error(ErrorCode::InsufficientWitnesses, "threshold scan needs at least 3 frequencies");
  if (s_grid.empty()) throw Error(ErrorCode::ConfigInvalid, "empty s grid");
  ThresholdScan scan;
  scan.s_grid.assign(s_grid.begin(), s_grid.end());
  scan.n_list.assign(n_list.begin(), n_list.end());
  std::vector<SpikeFamily> families;
  for (std::int64_t n : n_list) families.push_back(family_c2_nearest_pair(alpha, n));
  std::vector<double> x;
  for (std::int64_t n : n_list) x.push_back(std::log(double(n)));
  for (double s : s_grid) {
    std::vector<double> y;
    for (const auto& f : families) y.push_back(std::log(spike_ratio(alpha, WeightSpec::vv(s, b), f)));
    scan.slopes.push_back(least_squares(x, y));
  }
  for (std::size_t i = 0; i + 1 < scan.slopes.size(); ++i) {
    const double a = scan.slopes[i].slope, c = scan.slopes[i + 1].slope;
    if (a > 0.0 && c <= 0.0) {
      scan.s_star = s_grid[i] + (s_grid[i + 1] - s_grid[i]) * a / (a - c);
      break;
    }
  }
  if (!scan.s_star) {
    const bool all_pos = std::all_of(scan.slopes.begin(), scan.slopes.end(), [](const LinearFit& f) { return f.slope > 0; });
    const bool all_neg = std::all_of(scan.slopes.begin(), scan.slopes.end(), [](const LinearFit& f) { return f.slope <= 0; });
    if (all_pos) scan.s_star_lower = *std::max_element(s_grid.begin(), s_grid.end());
    if (all_neg) scan.s_star_upper = *std::min_element(s_grid.begin(), s_grid.end());
  }
  return scan;
}

OmegaCount omega_count(const Parameter& alpha, const Rational& lambda, const Rational& xi, double m_dyadic,
                       double window_constant) {
  if (!(lambda > 0)) throw Error(ErrorCode::ConfigInvalid, "lambda must be positive");
  if (!(m_dyadic >= 1.0)) throw Error(ErrorCode::ConfigInvalid, "M must be at least 1");
  if (!(window_constant >= 0.0)) throw Error(ErrorCode::ConfigInvalid, "window constant must be nonnegative");
  const double cutoff = cutoff_l_alpha(alpha);
  const double x = to_double(xi), a = alpha.to_double(), lam = to_double(lambda);
  if (!(std::abs(x) > cutoff))
    throw Error(ErrorCode::XiBelowCutoff, "|xi| must exceed L_alpha = " + std::to_string(cutoff));
  if (denominator(Rational(xi * lambda)) != 1) throw Error(ErrorCode::ConfigInvalid, "xi must lie in Z/lambda");

  OmegaCount out;
  out.xi = xi;
  out.m_dyadic = m_dyadic;
  out.window_constant = window_constant;
  out.bound = lam * std::pow(m_dyadic, 2.0 / 3.0);

  const double radius = std::abs(x) + std::sqrt(2.0 * m_dyadic / (3.0 * a * std::abs(x))) + 1.0;
  const auto kmax = static_cast<std::int64_t>(std::floor(lam * radius));
  const double lo = 0.5 * m_dyadic, hi = 2.0 * m_dyadic;
  std::vector<std::pair<double, double>> pieces;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    const double g = gamma(a, x, double(k) / lam);
    const double w = window_constant * std::pow(std::abs(g), 0.01);
    for (double sign : {1.0, -1.0}) {
      // Intersect [g - w, g + w] with sign * [M/2, 2M].
      const double l = std::max(g - w, sign > 0 ? lo : -hi);
      const double r = std::min(g + w, sign > 0 ? hi : -lo);
      if (r > l) pieces.emplace_back(l, r);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  double measure = 0.0, cur_l = 0.0, cur_r = 0.0;
  bool open = false;
  for (const auto& [l, r] : pieces) {
    if (open && l <= cur_r) {
      cur_r = std::max(cur_r, r);
      continue;
    }
    if (open) measure += cur_r - cur_l;
    cur_l = l;
    cur_r = r;
    open = true;
  }
  if (open) measure += cur_r - cur_l;
  out.measure = measure;
  return out;
}

namespace {

double overlap(double c1, double h1, double c2, double h2, double x) {
  // |[c1 - h1, c1 + h1] n (x - [c2 - h2, c2 + h2])|
  const double l = std::max(c1 - h1, x - c2 - h2);
  const double r = std::min(c1 + h1, x - c2 + h2);
  return std::max(0.0, r - l);
}

}  // namespace

double rect_convolution(const Rectangle& r, const Rectangle& rt, double x, double y) {
  return overlap(r.center.first, r.half_widths.first, rt.center.first, rt.half_widths.first, x) *
         overlap(r.center.second, r.half_widths.second, rt.center.second, rt.half_widths.second, y);
}

RectangleCheck rect_conv_lower_bound(const Rectangle& r, const Rectangle& rt, std::size_t sample_points) {
  const auto [a, b] = r.half_widths;
  if (!(a > 0.0 && b > 0.0 && rt.half_widths.first > 0.0 && rt.half_widths.second > 0.0))
    throw Error(ErrorCode::ConfigInvalid, "half-widths must be positive");
  auto same = [](double u, double v) { return std::abs(u - v) <= 1e-12 * std::max(std::abs(u), std::abs(v)); };
  if (!same(a, rt.half_widths.first) || !same(b, rt.half_widths.second))
    throw Error(ErrorCode::DimensionMismatch, "rectangles must have equal dimensions");
  if (sample_points < 2) throw Error(ErrorCode::ConfigInvalid, "need at least 2 samples per side");

  const double cx = r.center.first + rt.center.first, cy = r.center.second + rt.center.second;
  const double floor_value = a * b;  // area(R) / 4
  RectangleCheck check;
  check.min_margin = std::numeric_limits<double>::infinity();
  bool corners_equal = true;
  const double step = 1.0 / double(sample_points - 1);
  for (std::size_t i = 0; i < sample_points; ++i) {
    for (std::size_t j = 0; j < sample_points; ++j) {
      // Endpoints are set exactly so that the corners are hit without rounding.
      const double x = i + 1 == sample_points ? cx + a : cx - a + 2.0 * a * double(i) * step;
      const double y = j + 1 == sample_points ? cy + b : cy - b + 2.0 * b * double(j) * step;
      const double v = rect_convolution(r, rt, x, y);
      const double margin = v / floor_value - 1.0;
      check.min_margin = std::min(check.min_margin, margin);
      if (margin < -1e-12) check.holds = false;
      const bool corner = (i == 0 || i + 1 == sample_points) && (j == 0 || j + 1 == sample_points);
      if (corner && std::abs(margin) > 1e-12) corners_equal = false;
      ++check.samples;
    }
  }
  check.equality_at_corners = corners_equal;
  return check;
}

MaxInequality check_max_inequality(const Parameter& alpha, const WeightSpec& weights, const SpikeFamily& family) {
  validate(alpha, weights, family);
  const Geometry g = geometry(alpha, weights, family);
  const double gam = std::abs(static_cast<double>(g.offset));
  const double w1 = family.first.half_width, w2 = family.second.half_width;
  MaxInequality res;
  res.worst_slack = std::numeric_limits<double>::infinity();
  constexpr int kSteps = 20;
  // Modulations of the two given spikes; the third follows from tau = tau1 + tau2
  // (or tau1 = tau - tau2 in the dual form) and differs from the centre by offset.
  for (int i = 0; i <= kSteps; ++i) {
    for (int j = 0; j <= kSteps; ++j) {
      const double m1 = -w1 + 2.0 * w1 * i / kSteps;
      const double m2 = -w2 + 2.0 * w2 * j / kSteps;
      const double m_out = family.dual() ? (m1 - m2) - static_cast<double>(g.offset)
                                         : (m1 + m2) - static_cast<double>(g.offset);
      const double mx = std::max({bracket(m1), bracket(m2), bracket(m_out)});
      const double slack = mx - (gam - (w1 + w2));
      res.worst_slack = std::min(res.worst_slack, slack);
      if (slack < 0.0) res.holds = false;
    }
  }
  return res;
}

std::string ratio_csv(std::span<const RatioRow> rows) {
  std::ostringstream out;
  out << std::setprecision(17) << "case_id,alpha,s,b,N,ratio\n";
  for (const auto& r : rows)
    out << to_string(r.case_id) << ',' << r.alpha << ',' << r.s << ',' << r.b << ',' << r.n << ',' << r.ratio << '\n';
  return out.str();
}

std::string omega_csv(std::span<const OmegaCount> rows) {
  std::ostringstream out;
  out << std::setprecision(17) << "xi,M,measure,bound\n";
  for (const auto& r : rows) out << to_string(r.xi) << ',' << r.m_dyadic << ',' << r.measure << ',' << r.bound << '\n';
  return out.str();
}

}  // namespace mbkdv
