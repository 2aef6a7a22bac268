#pragma once

#include "mbkdv/fit.hpp"
#include "mbkdv/numeric.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mbkdv {

/// H^s norm on T with ||f||^2 = sum over xi of <xi>^{2s} |f_hat(xi)|^2, <xi> = 1 + |xi|.
struct SobolevNorm {
  double s = 0.0;

  double weight(double xi) const;
  double operator()(const std::map<std::int64_t, std::complex<double>>& coeffs) const;
};

enum class PicardMode { RationalCase, NearestInteger };

/// Leading terms of phi_2 and psi_3 for data phi = 0, psi = N^{-s}(cos([c1 N]x) + cos([c2 N]x)).
struct PicardNorms {
  double phi2_norm = 0.0;
  double psi3_norm = 0.0;
  /// H^s norm of the phi_2 modes the leading term leaves out (xi != +-N).
  double phi2_remainder = 0.0;
};

PicardNorms picard_closed_form(const Parameter& alpha, double s, std::int64_t n, double t, PicardMode mode);

struct QuadratureOptions {
  std::size_t nodes_per_oscillation = 64;  ///< below 64 the result is refused
  std::size_t order = 8;                   ///< Gauss-Legendre points per panel
};

struct PicardQuadrature {
  double phi2_norm = 0.0;  ///< all modes
  double psi3_norm = 0.0;
  double phi2_leading = 0.0;  ///< xi = +-N only
  double psi3_leading = 0.0;  ///< only the chain psi_1 * phi_2(+-N) -> psi_3
  double psi2_max = 0.0;      ///< largest |psi_2 coefficient|; zero since phi = 0
  std::size_t nodes = 0;      ///< outer time nodes used
};

/// Nested Duhamel integrals on the exact trigonometric data, by composite Gauss-Legendre.
PicardQuadrature picard_quadrature(const Parameter& alpha, double s, std::int64_t n, double t,
                                   const QuadratureOptions& opts = {});

struct PicardEntry {
  std::int64_t n = 0;
  double phi2_norm = 0.0;
  double psi3_norm = 0.0;
  double phi2_remainder = 0.0;
  double gap = 0.0;
  double theta = 0.0;
};

enum class PicardSeries { Phi2, Psi3 };

/// Log-log slope of the chosen norm against N. Needs 4 entries with positive norms.
LinearFit growth_fit(std::span<const PicardEntry> entries, PicardSeries series);

struct PicardReport {
  std::string alpha;
  double s = 0.0;
  double t_eval = 0.01;
  PicardMode mode = PicardMode::NearestInteger;
  std::vector<PicardEntry> entries;
  std::optional<LinearFit> slope_phi2;
  std::optional<LinearFit> slope_psi3;
};

PicardReport picard_report(const Parameter& alpha, double s, double t, std::span<const std::int64_t> ns,
                           PicardMode mode);

/// Multiples of the denominator of c1 (rational c1), or convergent denominators of c1
/// in [n_min, n_max] (irrational c1).
std::vector<std::int64_t> picard_frequencies(const Parameter& alpha, std::int64_t n_min, std::int64_t n_max);

nlohmann::json to_json(const PicardReport& report);
/// Columns N, theta, gap, phi2_norm, psi3_norm.
std::string to_csv(const PicardReport& report);

}  // namespace mbkdv
