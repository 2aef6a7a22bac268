#include "mbkdv/picard.hpp"

#include "mbkdv/diophantine.hpp"
#include "mbkdv/errors.hpp"
#include "mbkdv/resonance.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace mbkdv {

using Complex = std::complex<double>;
using ModeMap = std::map<std::int64_t, Complex>;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 6.283185307179586;

/// (e^z - 1)/z and (e^z - 1 - z)/z^2, with Taylor series near 0.
Complex phi1(Complex z) {
  if (std::abs(z) > 0.1) return (std::exp(z) - 1.0) / z;
  Complex sum = 0.0, term = 1.0;
  for (int k = 1; k <= 12; ++k) {
    sum += term;
    term *= z / double(k + 1);
  }
  return sum;
}

Complex phi2(Complex z) {
  if (std::abs(z) > 0.1) return (std::exp(z) - 1.0 - z) / (z * z);
  Complex sum = 0.0, term = 0.5;
  for (int k = 1; k <= 12; ++k) {
    sum += term;
    term *= z / double(k + 2);
  }
  return sum;
}

double cube(double x) { return x * x * x; }

void check_time(double t) {
  if (!(t >= 0.0 && t <= 0.1)) throw Error(ErrorCode::ConfigInvalid, "t must lie in [0, 0.1]");
}

struct Data {
  std::int64_t a = 0;  // [c1 N]
  std::int64_t b = 0;  // [c2 N] = N - a
  double g = 0.0;      // alpha a^3 + alpha b^3 - N^3, exact integer gap rounded once
  ModeMap psi;         // psi at t = 0
};

Data initial_data(const Parameter& alpha, double s, std::int64_t n, PicardMode mode) {
  if (n <= 0) throw Error(ErrorCode::ConfigInvalid, "N must be positive");
  const auto rec = resonance_gap_integer(alpha, n);
  Data d;
  d.a = rec.nearest_c1n;
  d.b = rec.nearest_c2n;
  d.g = static_cast<double>(rec.gamma_at_nearest);
  if (mode == PicardMode::RationalCase) {
    const auto roots = c_roots(alpha);
    const bool exact_hit = roots.first.is_exact() && roots.first.exact().is_rational() &&
                           denominator(Rational(roots.first.exact().rational_part() * n)) == 1;
    if (!exact_hit) throw Error(ErrorCode::NotRationalResonance, "c1 N is not an integer for N = " + std::to_string(n));
    d.g = 0.0;
  }
  const double amp = 0.5 * std::pow(static_cast<double>(n), -s);
  for (std::int64_t k : {d.a, -d.a, d.b, -d.b}) d.psi[k] += amp;
  return d;
}

/// Mismatch G - m^3 of the pair (k1, k2), taking the exact gap for the resonant pairs.
double pair_mismatch(double alpha, const Data& d, std::int64_t k1, std::int64_t k2) {
  const std::int64_t n = d.a + d.b;
  const bool plus = (k1 == d.a && k2 == d.b) || (k1 == d.b && k2 == d.a);
  const bool minus = (k1 == -d.a && k2 == -d.b) || (k1 == -d.b && k2 == -d.a);
  if (plus && k1 + k2 == n) return d.g;
  if (minus && k1 + k2 == -n) return -d.g;
  const double m = static_cast<double>(k1 + k2);
  return alpha * (cube(double(k1)) + cube(double(k2))) - cube(m);
}

}  // namespace

double SobolevNorm::weight(double xi) const { return std::pow(1.0 + std::abs(xi), s); }

double SobolevNorm::operator()(const ModeMap& coeffs) const {
  double sum = 0.0;
  for (const auto& [k, c] : coeffs) {
    const double w = weight(static_cast<double>(k));
    sum += w * w * std::norm(c);
  }
  return std::sqrt(sum);
}

PicardNorms picard_closed_form(const Parameter& alpha, double s, std::int64_t n, double t, PicardMode mode) {
  check_time(t);
  const Data d = initial_data(alpha, s, n, mode);
  PicardNorms out;
  if (t == 0.0) return out;
  const double al = alpha.to_double();
  const SobolevNorm norm{s};

  // phi_2(m, t) = -i m e^{i m^3 t} sum over pairs C t phi1(i (G - m^3) t).
  ModeMap leading, rest;
  for (const auto& [k1, c1] : d.psi) {
    for (const auto& [k2, c2] : d.psi) {
      const std::int64_t m = k1 + k2;
      if (m == 0) continue;
      const double md = static_cast<double>(m);
      const double mis = pair_mismatch(al, d, k1, k2);
      const Complex term = -kI * md * std::polar(1.0, cube(md) * t) * c1 * c2 * t * phi1(kI * mis * t);
      (std::abs(m) == n ? leading : rest)[m] += term;
    }
  }
  out.phi2_norm = norm(leading);
  out.phi2_remainder = norm(rest);

  // Resonant chains phi_2(N) psi_1(-k_o) -> k_j = N - k_o, and their mirror images.
  Complex c_n = 0.0;
  for (const auto& [k1, c1] : d.psi)
    if (d.psi.count(n - k1)) c_n += c1 * d.psi.at(n - k1);
  const Complex j_int = t * t * phi2(-kI * d.g * t);
  ModeMap psi3;
  for (std::int64_t ko : std::set<std::int64_t>{d.a, d.b}) {
    const std::int64_t kj = n - ko;
    const double kjd = static_cast<double>(kj);
    const Complex v = -3.0 * kjd * double(n) * c_n * d.psi.at(-ko) * std::polar(1.0, al * cube(kjd) * t) * j_int;
    psi3[kj] += v;
    psi3[-kj] += std::conj(v);
  }
  out.psi3_norm = norm(psi3);
  return out;
}

namespace {

struct Rule {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

const Rule& gauss8() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, 8>;
    Rule r;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      r.x.push_back(-xs[i]);
      r.w.push_back(ws[i]);
      r.x.push_back(xs[i]);
      r.w.push_back(ws[i]);
    }
    return r;
  }();
  return rule;
}

ModeMap evolve_psi(const ModeMap& psi0, double alpha, double t) {
  ModeMap out;
  for (const auto& [k, c] : psi0) out[k] = c * std::polar(1.0, alpha * cube(double(k)) * t);
  return out;
}

ModeMap product(const ModeMap& f, const ModeMap& g) {
  ModeMap out;
  for (const auto& [k1, c1] : f)
    for (const auto& [k2, c2] : g) out[k1 + k2] += c1 * c2;
  return out;
}

}  // namespace

PicardQuadrature picard_quadrature(const Parameter& alpha, double s, std::int64_t n, double t,
                                   const QuadratureOptions& opts) {
  check_time(t);
  if (opts.nodes_per_oscillation < 64)
    throw Error(ErrorCode::QuadratureUnderResolved, "need at least 64 nodes per oscillation");
  const Data d = initial_data(alpha, s, n, PicardMode::NearestInteger);
  PicardQuadrature out;
  if (t == 0.0) return out;
  const double al = alpha.to_double();
  const SobolevNorm norm{s};
  const ModeMap phi0;  // phi = 0

  // Frequencies present in phi_2 and the fastest phase rate of either integrand.
  std::set<std::int64_t> m2;
  double rate = 0.0;
  for (const auto& [k1, c1] : d.psi)
    for (const auto& [k2, c2] : d.psi) {
      const std::int64_t m = k1 + k2;
      if (m == 0) continue;
      m2.insert(m);
      const double g = al * (cube(double(k1)) + cube(double(k2)));
      rate = std::max(rate, std::abs(g - cube(double(m))));
      for (const auto& [k3, c3] : d.psi) {
        const double k = double(m + k3);
        const double out_phase = al * cube(k);
        const double in3 = al * cube(double(k3));
        rate = std::max({rate, std::abs(cube(double(m)) + in3 - out_phase), std::abs(g + in3 - out_phase)});
      }
    }
  const double oscillations = std::max(1.0, rate * t / kTwoPi);
  const Rule& rule = gauss8();
  const std::size_t p = rule.x.size();
  const auto panels = static_cast<std::size_t>(std::ceil(oscillations * double(opts.nodes_per_oscillation) / double(p)));
  const double hp = t / double(panels);
  out.nodes = panels * p;

  // Inner Duhamel integrand for phi_2 with the propagator phase split off:
  // F_m(sigma) = e^{-i m^3 sigma} (psi_1^2)^(m)(sigma).
  auto inner = [&](double sigma) {
    const ModeMap sq = product(evolve_psi(d.psi, al, sigma), evolve_psi(d.psi, al, sigma));
    ModeMap f;
    for (std::int64_t m : m2) {
      auto it = sq.find(m);
      f[m] = it == sq.end() ? Complex{} : it->second * std::polar(1.0, -cube(double(m)) * sigma);
    }
    return f;
  };
  auto gl = [&](double lo, double hi, auto&& integrand, ModeMap& acc) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < p; ++i) {
      const ModeMap v = integrand(mid + half * rule.x[i]);
      for (const auto& [m, c] : v) acc[m] += half * rule.w[i] * c;
    }
  };
  auto phi2_from = [&](const ModeMap& integral, double tau) {
    ModeMap phi2;
    for (const auto& [m, c] : integral) phi2[m] = -kI * double(m) * std::polar(1.0, cube(double(m)) * tau) * c;
    return phi2;
  };

  ModeMap cumulative;  // integral of F_m over [0, panel start]
  ModeMap psi3, psi3_chain;
  std::set<std::int64_t> chain_out;
  for (std::int64_t ko : {d.a, d.b}) chain_out.insert(n - ko);
  for (std::size_t j = 0; j < panels; ++j) {
    const double lo = hp * double(j), hi = lo + hp;
    for (std::size_t i = 0; i < p; ++i) {
      const double tau = 0.5 * (lo + hi) + 0.5 * hp * rule.x[i];
      const double w = 0.5 * hp * rule.w[i];
      ModeMap integral = cumulative;
      gl(lo, tau, inner, integral);
      const ModeMap phi2 = phi2_from(integral, tau);
      const ModeMap psi1 = evolve_psi(d.psi, al, tau);
      // psi_2 = -int S_alpha d_x(2 phi_1 psi_1) vanishes identically because phi_1 = 0.
      const ModeMap phi1_psi1 = product(phi0, psi1);
      for (const auto& [k, c] : phi1_psi1) out.psi2_max = std::max(out.psi2_max, std::abs(c));

      for (const auto& [k, c] : product(phi2, psi1)) {
        if (k == 0) continue;
        psi3[k] += w * std::polar(1.0, al * cube(double(k)) * (t - tau)) * c;
      }
      for (std::int64_t sign : {1, -1}) {
        const std::int64_t m = sign * n;
        for (std::int64_t kj : chain_out) {
          const std::int64_t k = sign * kj;
          if (k == 0) continue;
          const Complex c = phi2.at(m) * psi1.at(k - m);
          psi3_chain[k] += w * std::polar(1.0, al * cube(double(k)) * (t - tau)) * c;
        }
      }
    }
    gl(lo, hi, inner, cumulative);
  }
  for (auto& [k, c] : psi3) c *= -3.0 * kI * double(k);
  for (auto& [k, c] : psi3_chain) c *= -3.0 * kI * double(k);

  const ModeMap phi2_final = phi2_from(cumulative, t);
  ModeMap phi2_lead;
  for (std::int64_t m : {n, -n})
    if (phi2_final.count(m)) phi2_lead[m] = phi2_final.at(m);
  out.phi2_norm = norm(phi2_final);
  out.phi2_leading = norm(phi2_lead);
  out.psi3_norm = norm(psi3);
  out.psi3_leading = norm(psi3_chain);
  return out;
}

LinearFit growth_fit(std::span<const PicardEntry> entries, PicardSeries series) {
  if (entries.size() < 4) throw Error(ErrorCode::DegenerateFit, "growth fit needs at least 4 entries");
  std::vector<double> x, y;
  for (const auto& e : entries) {
    const double v = series == PicardSeries::Phi2 ? e.phi2_norm : e.psi3_norm;
    if (!(v > 0.0)) throw Error(ErrorCode::DegenerateFit, "norm is zero at N = " + std::to_string(e.n));
    x.push_back(std::log(double(e.n)));
    y.push_back(std::log(v));
  }
  return least_squares(x, y);
}

PicardReport picard_report(const Parameter& alpha, double s, double t, std::span<const std::int64_t> ns,
                           PicardMode mode) {
  PicardReport r;
  r.alpha = alpha.to_string();
  r.s = s;
  r.t_eval = t;
  r.mode = mode;
  for (std::int64_t n : ns) {
    const auto cf = picard_closed_form(alpha, s, n, t, mode);
    const auto rec = resonance_gap_integer(alpha, n);
    r.entries.push_back({n, cf.phi2_norm, cf.psi3_norm, cf.phi2_remainder, static_cast<double>(rec.gap),
                         static_cast<double>(rec.theta)});
  }
  auto positive = [&](PicardSeries sr) {
    return std::all_of(r.entries.begin(), r.entries.end(), [&](const PicardEntry& e) {
      return (sr == PicardSeries::Phi2 ? e.phi2_norm : e.psi3_norm) > 0.0;
    });
  };
  if (r.entries.size() >= 4) {
    if (positive(PicardSeries::Phi2)) r.slope_phi2 = growth_fit(r.entries, PicardSeries::Phi2);
    if (positive(PicardSeries::Psi3)) r.slope_psi3 = growth_fit(r.entries, PicardSeries::Psi3);
  }
  return r;
}

std::vector<std::int64_t> picard_frequencies(const Parameter& alpha, std::int64_t n_min, std::int64_t n_max) {
  if (n_min < 1 || n_max < n_min) throw Error(ErrorCode::ConfigInvalid, "need 1 <= n_min <= n_max");
  const auto roots = c_roots(alpha);
  std::vector<std::int64_t> ns;
  if (roots.first.is_exact() && roots.first.exact().is_rational()) {
    const auto q = static_cast<std::int64_t>(denominator(roots.first.exact().rational_part()));
    for (std::int64_t n = ((n_min + q - 1) / q) * q; n <= n_max; n += q) ns.push_back(n);
    return ns;
  }
  for (const auto& w : theta_subsequence(roots.first, n_max))
    if (w.n >= n_min) ns.push_back(w.n);
  return ns;
}

namespace {

nlohmann::json fit_json(const std::optional<LinearFit>& f) {
  if (!f) return nullptr;
  return {{"slope", f->slope}, {"half_width", f->slope_half_width}, {"intercept", f->intercept}, {"points", f->points}};
}

}  // namespace

nlohmann::json to_json(const PicardReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"N", e.n},
                       {"theta", e.theta},
                       {"gap", e.gap},
                       {"phi2_norm", e.phi2_norm},
                       {"psi3_norm", e.psi3_norm},
                       {"phi2_remainder", e.phi2_remainder}});
  return {{"alpha", report.alpha},
          {"s", report.s},
          {"t_eval", report.t_eval},
          {"mode", report.mode == PicardMode::RationalCase ? "rational" : "nearest-integer"},
          {"entries", entries},
          {"slope_phi2", fit_json(report.slope_phi2)},
          {"slope_psi3", fit_json(report.slope_psi3)},
          {"note", "slopes are fitted exponents; absolute prefactors carry no meaning"}};
}

std::string to_csv(const PicardReport& report) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "N,theta,gap,phi2_norm,psi3_norm\n";
  for (const auto& e : report.entries)
    out << e.n << ',' << e.theta << ',' << e.gap << ',' << e.phi2_norm << ',' << e.psi3_norm << '\n';
  return out.str();
}

}  // namespace mbkdv
