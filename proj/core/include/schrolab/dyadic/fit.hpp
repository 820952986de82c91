#pragma once

#include <span>
#include <vector>

namespace schrolab::dyadic {

/// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< root-mean-square of the fit residuals
};

/// Throws FitError for fewer than two points, mismatched lengths or
/// constant x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Base-2 log-linear fit of measured values against dyadic scales.
struct ScalingFit {
  std::vector<double> scales;
  std::vector<double> values;
  double fitted_slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

/// Least-squares slope of log2(value) against k. Throws FitError for fewer
/// than four points or a non-positive value.
ScalingFit fit_blowup(std::span<const double> scales, std::span<const double> values);

/// Slope of log(y) against log(x) (any base). Throws FitError for
/// non-positive entries or fewer than two points.
LinearFit loglog_fit(std::span<const double> x, std::span<const double> y);

}  // namespace schrolab::dyadic
