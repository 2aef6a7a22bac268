#pragma once

#include "mbkdv/fit.hpp"
#include "mbkdv/numeric.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mbkdv {

enum class Dispersion { Cubic, AlphaCubic };

/// X^{s,b} weights of a bilinear form d_x(w1 w2) : X_left x X_right -> X_out^{s, b-1}.
struct WeightSpec {
  double s = 0.0;
  double b = 0.5;
  Dispersion left = Dispersion::AlphaCubic;
  Dispersion right = Dispersion::AlphaCubic;
  Dispersion out = Dispersion::Cubic;

  /// d_x(v1 v2) measured in X^{s,b-1}, with v1, v2 in X_alpha^{s,b}.
  static WeightSpec vv(double s, double b);
  /// d_x(u v) measured in X_alpha^{s,b-1}, with u in X^{s,b} and v in X_alpha^{s,b}.
  static WeightSpec uv(double s, double b);
  bool is_vv() const;
  bool is_uv() const;
};

enum class SpikeCase { C1_Rational, C2_LowHigh, C2_NearestPair, C2_Dual, P2_MeanBreak };
std::string to_string(SpikeCase c);

struct Spike {
  std::int64_t xi = 0;
  Real tau_center = 0;
  double half_width = 1.0;
  double amplitude = 1.0;  ///< 0 gives the zero function
};

/// Two single-frequency spikes. Primal families feed the bilinear form directly
/// (first = left input, second = right input). The dual family C2_Dual holds
/// first = the output-side function (frequency xi), second = right input.
/// Each spike is the indicator of its tau-interval times the modulation weight of
/// its slot, so the weighted product inside the form is a plain indicator.
struct SpikeFamily {
  SpikeCase case_id = SpikeCase::C1_Rational;
  std::int64_t n = 0;
  Spike first;
  Spike second;

  bool dual() const { return case_id == SpikeCase::C2_Dual; }
};

/// tau-centre on the dispersion curve of the given kind.
Real dispersion_value(const Parameter& alpha, Dispersion d, std::int64_t xi);

SpikeFamily family_c1_rational(const Parameter& alpha, std::int64_t n);
SpikeFamily family_c2_low_high(const Parameter& alpha, std::int64_t n);
SpikeFamily family_c2_nearest_pair(const Parameter& alpha, std::int64_t n);
/// Dual family: output-side spike at xi = n on the cubic curve, right input at xi2.
SpikeFamily family_c2_dual(const Parameter& alpha, std::int64_t n, std::int64_t xi2);
/// u spike at frequency 0 against a v spike at frequency n.
SpikeFamily family_p2_mean_break(const Parameter& alpha, std::int64_t n);

/// Closed-form evaluation of the norm quotient for two interval indicators of half-widths
/// w1, w2 whose tau-convolution (primal) or correlation (dual) is centred at distance
/// `offset` from the output dispersion curve. `exponent_out` is the power of <tau - omega>
/// on the output; `exponent_1`, `exponent_2` the absorbed input weight powers.
struct ConvolutionIntegral {
  double w1 = 1.0;
  double w2 = 2.0;
  double offset = 0.0;
  double exponent_out = -0.5;
  double exponent_1 = 0.5;
  double exponent_2 = 0.5;
};

/// sqrt( int T(x)^2 <x - offset>^{2 exponent_out} dx ) / (||f|| ||g||).
double normalized_convolution(const ConvolutionIntegral& c);

/// ||B(f,g)||_{L^2} / (||f|| ||g||); 0 if either spike vanishes.
double spike_ratio(const Parameter& alpha, const WeightSpec& weights, const SpikeFamily& family);

struct ThresholdScan {
  std::vector<double> s_grid;
  std::vector<LinearFit> slopes;  ///< log ratio vs log N, one per s
  std::optional<double> s_star;   ///< zero crossing of slope(s)
  /// Set when slopes never change sign: s* is at least (positive) or at most (negative) this.
  std::optional<double> s_star_lower;
  std::optional<double> s_star_upper;
  std::vector<std::int64_t> n_list;
};

/// Nearest-pair family slopes over n_list for each s; s* by linear interpolation.
ThresholdScan threshold_scan(const Parameter& alpha, double b, std::span<const double> s_grid,
                             std::span<const std::int64_t> n_list);

struct OmegaCount {
  Rational xi;
  double m_dyadic = 1.0;
  double measure = 0.0;
  double bound = 0.0;  ///< lambda M^{2/3}
  double window_constant = 1.0;
  bool applicable = true;
};

/// |Omega(xi) n {M/2 <= |eta| <= 2M}| with windows w = c |Gamma|^{1/100} around each
/// Gamma_xi(xi1), xi1 in Z/lambda.
OmegaCount omega_count(const Parameter& alpha, const Rational& lambda, const Rational& xi, double m_dyadic,
                       double window_constant = 1.0);

struct Rectangle {
  std::pair<double, double> center;
  std::pair<double, double> half_widths;
};

struct RectangleCheck {
  bool holds = true;
  double min_margin = 0.0;  ///< min over samples of conv / (area/4) - 1
  bool equality_at_corners = false;
  std::size_t samples = 0;
};

/// chi_R * chi_R~ >= area(R)/4 on the translate R0 of R centred at the sum of centres,
/// checked on a sample_points x sample_points grid of R0 (corners included).
RectangleCheck rect_conv_lower_bound(const Rectangle& r, const Rectangle& r_tilde, std::size_t sample_points);

/// Exact value of chi_R * chi_R~ at (x, y).
double rect_convolution(const Rectangle& r, const Rectangle& r_tilde, double x, double y);

struct MaxInequality {
  bool holds = true;
  double worst_slack = 0.0;  ///< min of MAX - (|Gamma| - width sum)
};

/// max(<tau - omega_out>, <tau1 - omega_1>, <tau2 - omega_2>) >= |Gamma| - (w1 + w2)
/// at the support centres of a primal family, tau ranging over the convolution support.
MaxInequality check_max_inequality(const Parameter& alpha, const WeightSpec& weights, const SpikeFamily& family);

/// CSV (case_id, alpha, s, b, N, ratio).
struct RatioRow {
  SpikeCase case_id;
  std::string alpha;
  double s = 0.0;
  double b = 0.0;
  std::int64_t n = 0;
  double ratio = 0.0;
};
std::string ratio_csv(std::span<const RatioRow> rows);
/// CSV (xi, M, measure, bound).
std::string omega_csv(std::span<const OmegaCount> rows);

}  // namespace mbkdv
