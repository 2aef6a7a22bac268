#pragma once

#include "mbkdv/numeric.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace mbkdv {

using Complex = std::complex<double>;

/// Periodic grid on T_lambda = [0, 2 pi lambda) with frequencies k/lambda in FFT order.
class TorusGrid {
 public:
  TorusGrid(Rational lambda, std::size_t n_points);

  const Rational& lambda_exact() const { return lambda_; }
  double lambda() const { return lambda_d_; }
  std::size_t size() const { return n_; }
  double length() const;
  double dx() const { return length() / static_cast<double>(n_); }
  std::vector<double> nodes() const;

  /// Integer mode k of FFT slot i, in (-n/2, n/2].
  std::int64_t mode(std::size_t i) const;
  double wavenumber(std::size_t i) const { return static_cast<double>(mode(i)) / lambda_d_; }
  std::size_t slot(std::int64_t k) const;
  double max_wavenumber() const { return static_cast<double>(n_) / (2.0 * lambda_d_); }
  /// Largest mode kept by the 2/3 rule, floor(2n/6).
  std::int64_t dealias_mode() const { return static_cast<std::int64_t>((2 * n_) / 6); }

 private:
  Rational lambda_;
  double lambda_d_;
  std::size_t n_;
};

/// Spectral state: f(x) = sum over xi of f_hat(xi) exp(i xi x).
struct FieldPair {
  std::vector<Complex> u_hat;
  std::vector<Complex> v_hat;
  double time = 0.0;
};

FieldPair zero_state(const TorusGrid& grid);
FieldPair from_physical(const TorusGrid& grid, const std::vector<double>& u, const std::vector<double>& v);
FieldPair sample(const TorusGrid& grid, const std::function<double(double)>& u0,
                 const std::function<double(double)>& v0);
std::vector<double> to_physical(const TorusGrid& grid, const std::vector<Complex>& coeffs);

/// Largest |c(-k) - conj(c(k))| over both channels.
double hermitian_defect(const TorusGrid& grid, const FieldPair& state);
/// Projects onto real-valued fields; the Nyquist slot is cleared.
void enforce_hermitian(const TorusGrid& grid, FieldPair& state);

struct MeanZeroReduction {
  double p = 0.0;  ///< spatial mean of u
  double q = 0.0;  ///< spatial mean of v
  FieldPair shifted;
};

MeanZeroReduction mean_zero_reduce(const TorusGrid& grid, const FieldPair& state);

enum class Channel { U, V };

/// exp(i xi^3 t) for u, exp(i alpha xi^3 t) for v: the Fourier multipliers of the
/// free flows u_t + u_xxx = 0 and v_t + alpha v_xxx = 0.
Complex linear_phase(double alpha, double xi, double t, Channel channel);

/// 2x2 eigen data of A(xi) = [[xi^3, -q xi], [-q xi, alpha xi^3 - p xi]].
struct ModeEigen {
  double xi = 0.0;
  std::array<double, 4> a{};  ///< row-major A(xi)
  double d1 = 0.0;
  double d2 = 0.0;
  std::array<double, 4> m{};  ///< row-major orthogonal M(xi), columns are eigenvectors
};

struct DispersionMatrix {
  double p = 0.0;
  double q = 0.0;
  double alpha = 1.0;
  double l_value = 0.0;  ///< L = sqrt(p^2 + 4 q^2) / 2
  std::vector<ModeEigen> modes;  ///< FFT order
};

/// Single frequency. For alpha = 1 uses d_j = xi^3 - p xi/2 + (-1)^j L xi; M(0) = I.
ModeEigen mode_eigen(double p, double q, double xi, double alpha = 1.0);
DispersionMatrix dispersion_matrix(double p, double q, const TorusGrid& grid, double alpha = 1.0);

/// Exact flow of u_t + u_xxx + q v_x = 0, v_t + alpha v_xxx + q u_x + p v_x = 0.
FieldPair evolve_coupled_linear(const TorusGrid& grid, const FieldPair& state, double p, double q, double t,
                                double alpha = 1.0);

struct ConservedSet {
  double e1 = 0.0;  ///< integral of u
  double e2 = 0.0;  ///< integral of v
  double e3 = 0.0;  ///< integral of u^2 + v^2
  double e4 = 0.0;  ///< Hamiltonian: 1/2 integral of u_x^2 + alpha v_x^2 - u v^2
};

ConservedSet conserved_quantities(const TorusGrid& grid, const FieldPair& state, double alpha);

enum class Scheme { IFRK4, ETDRK4 };

struct SimConfig {
  double alpha = 1.0;
  double dt = 1e-4;
  double t_final = 1.0;
  Scheme scheme = Scheme::IFRK4;
  bool dealias = true;
  std::size_t monitor_stride = 100;
  double blowup_guard = 1e12;
};

struct MonitorSample {
  double t = 0.0;
  ConservedSet e;
};

struct Drift {
  double e1 = 0.0;  ///< absolute
  double e2 = 0.0;  ///< absolute
  double e3 = 0.0;  ///< relative
  double e4 = 0.0;  ///< relative
};

struct EvolveResult {
  FieldPair state;
  std::vector<MonitorSample> monitor;
  Drift max_drift;
  double p = 0.0;
  double q = 0.0;
  std::size_t steps = 0;
  double cfl_number = 0.0;  ///< dt * max|xi| * max(|u|, |v|) over the run
  bool cfl_warning = false;
};

/// Integrates the Majda-Biello system from state.time to state.time + cfg.t_final.
/// The means are split off first and their linear coupling is propagated exactly.
EvolveResult evolve(const TorusGrid& grid, const FieldPair& state, const SimConfig& cfg);

}  // namespace mbkdv
