#pragma once

#include <span>

namespace mbkdv {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  /// 95% confidence half-width of the slope from the residuals (0 for exact data).
  double slope_half_width = 0;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope * x + intercept; needs at least two distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace mbkdv
