#include "mbkdv/spectral.hpp"

#include "fft.hpp"
#include "mbkdv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mbkdv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

TorusGrid::TorusGrid(Rational lambda, std::size_t n_points) : lambda_(std::move(lambda)), n_(n_points) {
  if (lambda_ <= 0) throw Error(ErrorCode::ConfigInvalid, "lambda must be positive");
  if (n_points < 8 || !is_power_of_two(n_points))
    throw Error(ErrorCode::ConfigInvalid, "n_points must be a power of two >= 8");
  lambda_d_ = to_double(lambda_);
}

double TorusGrid::length() const { return 2.0 * kPi * lambda_d_; }

std::vector<double> TorusGrid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = dx() * static_cast<double>(j);
  return x;
}

std::int64_t TorusGrid::mode(std::size_t i) const {
  const auto half = static_cast<std::int64_t>(n_ / 2);
  const auto k = static_cast<std::int64_t>(i);
  return k <= half ? k : k - static_cast<std::int64_t>(n_);
}

std::size_t TorusGrid::slot(std::int64_t k) const {
  const auto n = static_cast<std::int64_t>(n_);
  if (k <= -n / 2 || k > n / 2) throw Error(ErrorCode::ConfigInvalid, "mode outside grid band");
  return static_cast<std::size_t>(k >= 0 ? k : k + n);
}

FieldPair zero_state(const TorusGrid& grid) {
  FieldPair s;
  s.u_hat.assign(grid.size(), Complex{});
  s.v_hat.assign(grid.size(), Complex{});
  return s;
}

namespace {

std::vector<Complex> forward_real(const std::vector<double>& f) {
  detail::Fft fft(f.size());
  std::copy(f.begin(), f.end(), fft.data());
  fft.forward();
  return {fft.data(), fft.data() + f.size()};
}

}  // namespace

FieldPair from_physical(const TorusGrid& grid, const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != grid.size() || v.size() != grid.size())
    throw Error(ErrorCode::DimensionMismatch, "sample count differs from grid size");
  FieldPair s;
  s.u_hat = forward_real(u);
  s.v_hat = forward_real(v);
  return s;
}

FieldPair sample(const TorusGrid& grid, const std::function<double(double)>& u0,
                 const std::function<double(double)>& v0) {
  const auto x = grid.nodes();
  std::vector<double> u(x.size()), v(x.size());
  std::transform(x.begin(), x.end(), u.begin(), u0);
  std::transform(x.begin(), x.end(), v.begin(), v0);
  return from_physical(grid, u, v);
}

std::vector<double> to_physical(const TorusGrid& grid, const std::vector<Complex>& coeffs) {
  detail::Fft fft(grid.size());
  std::copy(coeffs.begin(), coeffs.end(), fft.data());
  fft.backward();
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = fft.data()[j].real();
  return out;
}

namespace {

double defect(const std::vector<Complex>& c) {
  const std::size_t n = c.size();
  double worst = std::abs(c[0].imag());
  worst = std::max(worst, std::abs(c[n / 2].imag()));
  for (std::size_t k = 1; k < n / 2; ++k) worst = std::max(worst, std::abs(c[n - k] - std::conj(c[k])));
  return worst;
}

void symmetrize(std::vector<Complex>& c) {
  const std::size_t n = c.size();
  c[0] = c[0].real();
  c[n / 2] = 0.0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    const Complex avg = 0.5 * (c[k] + std::conj(c[n - k]));
    c[k] = avg;
    c[n - k] = std::conj(avg);
  }
}

}  // namespace

double hermitian_defect(const TorusGrid&, const FieldPair& state) {
  return std::max(defect(state.u_hat), defect(state.v_hat));
}

void enforce_hermitian(const TorusGrid&, FieldPair& state) {
  symmetrize(state.u_hat);
  symmetrize(state.v_hat);
}

MeanZeroReduction mean_zero_reduce(const TorusGrid&, const FieldPair& state) {
  MeanZeroReduction r;
  r.p = state.u_hat.at(0).real();
  r.q = state.v_hat.at(0).real();
  r.shifted = state;
  r.shifted.u_hat[0] = 0.0;
  r.shifted.v_hat[0] = 0.0;
  return r;
}

Complex linear_phase(double alpha, double xi, double t, Channel channel) {
  const double w = (channel == Channel::U ? 1.0 : alpha) * xi * xi * xi;
  return std::polar(1.0, w * t);
}

ModeEigen mode_eigen(double p, double q, double xi, double alpha) {
  ModeEigen e;
  e.xi = xi;
  const double x3 = xi * xi * xi;
  const double a = x3, b = -q * xi, c = alpha * x3 - p * xi;
  e.a = {a, b, b, c};
  if (xi == 0.0) {
    e.m = {1.0, 0.0, 0.0, 1.0};
    return e;
  }
  if (alpha == 1.0) {
    // A = xi^3 I + xi B with B = [[0, -q], [-q, -p]] independent of xi, so M is too.
    const double l = 0.5 * std::hypot(p, 2.0 * q);
    const double mu_minus = -0.5 * p - l;
    e.d1 = x3 - 0.5 * p * xi - l * xi;
    e.d2 = x3 - 0.5 * p * xi + l * xi;
    if (l == 0.0) {
      e.m = {1.0, 0.0, 0.0, 1.0};
      return e;
    }
    // Null vector of B - mu I, picking the better conditioned of its two row forms.
    double v0 = q, v1 = -mu_minus;
    const double w0 = p + mu_minus, w1 = -q;
    if (std::hypot(w0, w1) > std::hypot(v0, v1)) v0 = w0, v1 = w1;
    const double norm = std::hypot(v0, v1);
    v0 /= norm;
    v1 /= norm;
    e.m = {v0, -v1, v1, v0};
    return e;
  }
  const double mean = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), b);
  const double theta = 0.5 * std::atan2(2.0 * b, a - c);
  const double cs = std::cos(theta), sn = std::sin(theta);
  e.d1 = mean + rad;
  e.d2 = mean - rad;
  e.m = {cs, -sn, sn, cs};
  return e;
}

DispersionMatrix dispersion_matrix(double p, double q, const TorusGrid& grid, double alpha) {
  DispersionMatrix dm;
  dm.p = p;
  dm.q = q;
  dm.alpha = alpha;
  dm.l_value = 0.5 * std::hypot(p, 2.0 * q);
  dm.modes.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) dm.modes.push_back(mode_eigen(p, q, grid.wavenumber(i), alpha));
  return dm;
}

FieldPair evolve_coupled_linear(const TorusGrid& grid, const FieldPair& state, double p, double q, double t,
                                double alpha) {
  FieldPair out = state;
  out.time = state.time + t;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ModeEigen e = mode_eigen(p, q, grid.wavenumber(i), alpha);
    const auto& m = e.m;
    const Complex u = state.u_hat[i], v = state.v_hat[i];
    const Complex w1 = (m[0] * u + m[2] * v) * std::polar(1.0, e.d1 * t);
    const Complex w2 = (m[1] * u + m[3] * v) * std::polar(1.0, e.d2 * t);
    out.u_hat[i] = m[0] * w1 + m[1] * w2;
    out.v_hat[i] = m[2] * w1 + m[3] * w2;
  }
  return out;
}

ConservedSet conserved_quantities(const TorusGrid& grid, const FieldPair& state, double alpha) {
  const std::size_t n = grid.size();
  const double len = grid.length();
  ConservedSet e;
  e.e1 = len * state.u_hat[0].real();
  e.e2 = len * state.v_hat[0].real();
  double l2 = 0.0, grad_u = 0.0, grad_v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = grid.wavenumber(i);
    const double au = std::norm(state.u_hat[i]), av = std::norm(state.v_hat[i]);
    l2 += au + av;
    grad_u += xi * xi * au;
    grad_v += xi * xi * av;
  }
  e.e3 = len * l2;

  // Cubic term on a 3/2-padded grid, exact for degree < n/2 trigonometric data.
  const std::size_t m = 3 * n / 2;
  detail::Fft fu(m), fv(m);
  std::fill(fu.data(), fu.data() + m, Complex{});
  std::fill(fv.data(), fv.data() + m, Complex{});
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t k = grid.mode(i);
    if (2 * static_cast<std::size_t>(std::abs(k)) == n) {
      // Nyquist amplitude stands for a cosine; split it across +-n/2.
      fu.data()[n / 2] += 0.5 * state.u_hat[i];
      fu.data()[m - n / 2] += 0.5 * state.u_hat[i];
      fv.data()[n / 2] += 0.5 * state.v_hat[i];
      fv.data()[m - n / 2] += 0.5 * state.v_hat[i];
      continue;
    }
    const std::size_t j = k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(k + std::int64_t(m));
    fu.data()[j] = state.u_hat[i];
    fv.data()[j] = state.v_hat[i];
  }
  fu.backward();
  fv.backward();
  double cubic = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double u = fu.data()[j].real(), v = fv.data()[j].real();
    cubic += u * v * v;
  }
  cubic *= len / static_cast<double>(m);
  e.e4 = 0.5 * (len * grad_u + alpha * len * grad_v - cubic);
  return e;
}

namespace {

/// Per-slot eigen data and the nonlinear right-hand side in eigen coordinates.
class Integrator {
 public:
  Integrator(const TorusGrid& grid, const SimConfig& cfg, double p, double q)
      : grid_(grid), n_(grid.size()), fu_(n_), fv_(n_), keep_(n_, true), xi_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      xi_[i] = grid.wavenumber(i);
      if (cfg.dealias && std::abs(grid.mode(i)) > grid.dealias_mode()) keep_[i] = false;
      modes_.push_back(mode_eigen(p, q, xi_[i], cfg.alpha));
    }
  }

  std::size_t size() const { return n_; }
  const ModeEigen& mode(std::size_t i) const { return modes_[i]; }

  void to_eigen(const FieldPair& y, std::vector<Complex>& w1, std::vector<Complex>& w2) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& m = modes_[i].m;
      w1[i] = m[0] * y.u_hat[i] + m[2] * y.v_hat[i];
      w2[i] = m[1] * y.u_hat[i] + m[3] * y.v_hat[i];
    }
  }

  void from_eigen(const std::vector<Complex>& w1, const std::vector<Complex>& w2, FieldPair& y) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& m = modes_[i].m;
      y.u_hat[i] = m[0] * w1[i] + m[1] * w2[i];
      y.v_hat[i] = m[2] * w1[i] + m[3] * w2[i];
    }
  }

  /// (n1, n2) = M^T N(M w), N = (-(v^2/2)_x, -(uv)_x) with 2/3 truncation on inputs and outputs.
  void rhs(const std::vector<Complex>& w1, const std::vector<Complex>& w2, std::vector<Complex>& n1,
           std::vector<Complex>& n2) {
    Complex* u = fu_.data();
    Complex* v = fv_.data();
    for (std::size_t i = 0; i < n_; ++i) {
      if (!keep_[i]) {
        u[i] = v[i] = 0.0;
        continue;
      }
      const auto& m = modes_[i].m;
      u[i] = m[0] * w1[i] + m[1] * w2[i];
      v[i] = m[2] * w1[i] + m[3] * w2[i];
    }
    fu_.backward();
    fv_.backward();
    for (std::size_t j = 0; j < n_; ++j) {
      const double uj = u[j].real(), vj = v[j].real();
      u[j] = 0.5 * vj * vj;
      v[j] = uj * vj;
    }
    fu_.forward();
    fv_.forward();
    for (std::size_t i = 0; i < n_; ++i) {
      if (!keep_[i]) {
        n1[i] = n2[i] = 0.0;
        continue;
      }
      const Complex nu = -kI * xi_[i] * u[i];
      const Complex nv = -kI * xi_[i] * v[i];
      const auto& m = modes_[i].m;
      n1[i] = m[0] * nu + m[2] * nv;
      n2[i] = m[1] * nu + m[3] * nv;
    }
  }

 private:
  const TorusGrid& grid_;
  std::size_t n_;
  detail::Fft fu_, fv_;
  std::vector<bool> keep_;
  std::vector<double> xi_;
  std::vector<ModeEigen> modes_;
};

using Vec = std::vector<Complex>;

struct EtdCoefficients {
  Vec e, e2, qc, f1, f2, f3;
};

/// Kassam-Trefethen contour averages of the phi-functions for z = i d h.
EtdCoefficients etd_coefficients(const std::vector<double>& d, double h) {
  constexpr int kPoints = 32;
  const std::size_t n = d.size();
  EtdCoefficients c{Vec(n), Vec(n), Vec(n), Vec(n), Vec(n), Vec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Complex z = kI * d[i] * h;
    c.e[i] = std::exp(z);
    c.e2[i] = std::exp(0.5 * z);
    Complex q{}, f1{}, f2{}, f3{};
    for (int k = 0; k < kPoints; ++k) {
      const Complex r = std::polar(1.0, 2.0 * kPi * (k + 0.5) / kPoints);
      const Complex w = z + r;
      const Complex ew = std::exp(w), w2 = w * w, w3 = w2 * w;
      q += (std::exp(0.5 * w) - 1.0) / w;
      f1 += (-4.0 - w + ew * (4.0 - 3.0 * w + w2)) / w3;
      f2 += (2.0 + w + ew * (-2.0 + w)) / w3;
      f3 += (-4.0 - 3.0 * w - w2 + ew * (4.0 - w)) / w3;
    }
    c.qc[i] = h * q / double(kPoints);
    c.f1[i] = h * f1 / double(kPoints);
    c.f2[i] = h * f2 / double(kPoints);
    c.f3[i] = h * f3 / double(kPoints);
  }
  return c;
}

double max_abs(const Vec& a) {
  double m = 0.0;
  for (const auto& z : a) {
    const double r = std::abs(z);
    if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
    m = std::max(m, r);
  }
  return m;
}

FieldPair with_means(const FieldPair& shifted, double p, double q) {
  FieldPair y = shifted;
  y.u_hat[0] = p;
  y.v_hat[0] = q;
  return y;
}

double sup_norm(const TorusGrid& grid, const Vec& c) {
  const auto f = to_physical(grid, c);
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

EvolveResult evolve(const TorusGrid& grid, const FieldPair& state, const SimConfig& cfg) {
  if (!(cfg.dt > 0.0) || !(cfg.t_final >= 0.0) || cfg.monitor_stride == 0)
    throw Error(ErrorCode::ConfigInvalid, "dt must be positive, t_final nonnegative, monitor_stride >= 1");
  if (state.u_hat.size() != grid.size() || state.v_hat.size() != grid.size())
    throw Error(ErrorCode::DimensionMismatch, "state size differs from grid size");

  const auto reduced = mean_zero_reduce(grid, state);
  const double p = reduced.p, q = reduced.q;
  Integrator op(grid, cfg, p, q);
  const std::size_t n = grid.size();

  EvolveResult result;
  result.p = p;
  result.q = q;
  const std::size_t steps =
      cfg.t_final == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
  const double h = steps ? cfg.t_final / static_cast<double>(steps) : 0.0;
  result.steps = steps;

  Vec w1(n), w2(n);
  op.to_eigen(reduced.shifted, w1, w2);

  std::vector<double> d1(n), d2(n);
  for (std::size_t i = 0; i < n; ++i) d1[i] = op.mode(i).d1, d2[i] = op.mode(i).d2;

  FieldPair current = reduced.shifted;
  const double t0 = state.time;
  const double kmax = cfg.dealias ? static_cast<double>(grid.dealias_mode()) / grid.lambda() : grid.max_wavenumber();

  const ConservedSet e0 = conserved_quantities(grid, state, cfg.alpha);
  auto record = [&](double t) {
    FieldPair full = with_means(current, p, q);
    const ConservedSet e = conserved_quantities(grid, full, cfg.alpha);
    result.monitor.push_back({t, e});
    auto rel = [](double a, double b) {
      const double scale = std::abs(b);
      return scale > 0.0 ? std::abs(a - b) / scale : std::abs(a - b);
    };
    result.max_drift.e1 = std::max(result.max_drift.e1, std::abs(e.e1 - e0.e1));
    result.max_drift.e2 = std::max(result.max_drift.e2, std::abs(e.e2 - e0.e2));
    result.max_drift.e3 = std::max(result.max_drift.e3, rel(e.e3, e0.e3));
    result.max_drift.e4 = std::max(result.max_drift.e4, rel(e.e4, e0.e4));
    const double amp = std::max(sup_norm(grid, full.u_hat), sup_norm(grid, full.v_hat));
    result.cfl_number = std::max(result.cfl_number, h * kmax * amp);
  };
  record(t0);

  Vec e1(n), e1h(n), e2(n), e2h(n);
  for (std::size_t i = 0; i < n; ++i) {
    e1[i] = std::polar(1.0, d1[i] * h);
    e1h[i] = std::polar(1.0, 0.5 * d1[i] * h);
    e2[i] = std::polar(1.0, d2[i] * h);
    e2h[i] = std::polar(1.0, 0.5 * d2[i] * h);
  }
  EtdCoefficients c1, c2;
  if (cfg.scheme == Scheme::ETDRK4) {
    c1 = etd_coefficients(d1, h);
    c2 = etd_coefficients(d2, h);
  }

  Vec k1a(n), k1b(n), k2a(n), k2b(n), k3a(n), k3b(n), k4a(n), k4b(n), sa(n), sb(n);
  for (std::size_t step = 1; step <= steps; ++step) {
    if (cfg.scheme == Scheme::IFRK4) {
      op.rhs(w1, w2, k1a, k1b);
      for (std::size_t i = 0; i < n; ++i) {
        sa[i] = e1h[i] * (w1[i] + 0.5 * h * k1a[i]);
        sb[i] = e2h[i] * (w2[i] + 0.5 * h * k1b[i]);
      }
      op.rhs(sa, sb, k2a, k2b);
      for (std::size_t i = 0; i < n; ++i) {
        sa[i] = e1h[i] * w1[i] + 0.5 * h * k2a[i];
        sb[i] = e2h[i] * w2[i] + 0.5 * h * k2b[i];
      }
      op.rhs(sa, sb, k3a, k3b);
      for (std::size_t i = 0; i < n; ++i) {
        sa[i] = e1[i] * w1[i] + e1h[i] * h * k3a[i];
        sb[i] = e2[i] * w2[i] + e2h[i] * h * k3b[i];
      }
      op.rhs(sa, sb, k4a, k4b);
      for (std::size_t i = 0; i < n; ++i) {
        w1[i] = e1[i] * w1[i] + h / 6.0 * (e1[i] * k1a[i] + 2.0 * e1h[i] * (k2a[i] + k3a[i]) + k4a[i]);
        w2[i] = e2[i] * w2[i] + h / 6.0 * (e2[i] * k1b[i] + 2.0 * e2h[i] * (k2b[i] + k3b[i]) + k4b[i]);
      }
    } else {
      // Cox-Matthews ETDRK4: k1 = N(w), k2 = N(a), k3 = N(b), k4 = N(c).
      op.rhs(w1, w2, k1a, k1b);
      Vec aa(n), ab(n);
      for (std::size_t i = 0; i < n; ++i) {
        aa[i] = c1.e2[i] * w1[i] + c1.qc[i] * k1a[i];
        ab[i] = c2.e2[i] * w2[i] + c2.qc[i] * k1b[i];
      }
      op.rhs(aa, ab, k2a, k2b);
      for (std::size_t i = 0; i < n; ++i) {
        sa[i] = c1.e2[i] * w1[i] + c1.qc[i] * k2a[i];
        sb[i] = c2.e2[i] * w2[i] + c2.qc[i] * k2b[i];
      }
      op.rhs(sa, sb, k3a, k3b);
      for (std::size_t i = 0; i < n; ++i) {
        sa[i] = c1.e2[i] * aa[i] + c1.qc[i] * (2.0 * k3a[i] - k1a[i]);
        sb[i] = c2.e2[i] * ab[i] + c2.qc[i] * (2.0 * k3b[i] - k1b[i]);
      }
      op.rhs(sa, sb, k4a, k4b);
      for (std::size_t i = 0; i < n; ++i) {
        w1[i] = c1.e[i] * w1[i] + k1a[i] * c1.f1[i] + 2.0 * (k2a[i] + k3a[i]) * c1.f2[i] + k4a[i] * c1.f3[i];
        w2[i] = c2.e[i] * w2[i] + k1b[i] * c2.f1[i] + 2.0 * (k2b[i] + k3b[i]) * c2.f2[i] + k4b[i] * c2.f3[i];
      }
    }

    op.from_eigen(w1, w2, current);
    enforce_hermitian(grid, current);
    current.u_hat[0] = current.v_hat[0] = 0.0;
    const double t = t0 + h * static_cast<double>(step);
    const double big = std::max(max_abs(current.u_hat), max_abs(current.v_hat));
    if (!(big <= cfg.blowup_guard))
      throw Error(ErrorCode::BlowupDetected, "coefficient magnitude exceeded guard at t = " + std::to_string(t));
    op.to_eigen(current, w1, w2);
    if (step % cfg.monitor_stride == 0 || step == steps) record(t);
  }

  result.state = with_means(current, p, q);
  result.state.time = t0 + cfg.t_final;
  result.cfl_warning = result.cfl_number > 1.0;
  return result;
}

}  // namespace mbkdv
