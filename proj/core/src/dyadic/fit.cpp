#include "schrolab/dyadic/fit.hpp"

#include <cmath>
#include <string>

#include "schrolab/error.hpp"

namespace schrolab::dyadic {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw FitError("fit inputs have different lengths");
  if (x.size() < 2) throw FitError("a linear fit needs at least two points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("fit abscissae are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

ScalingFit fit_blowup(std::span<const double> scales, std::span<const double> values) {
  if (scales.size() != values.size()) throw FitError("scales and values have different lengths");
  if (scales.size() < 4) throw FitError("blow-up fit needs at least 4 scales, got " + std::to_string(scales.size()));
  std::vector<double> logs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw FitError("blow-up fit needs positive values");
    logs[i] = std::log2(values[i]);
  }
  const LinearFit lf = least_squares(scales, logs);
  ScalingFit fit;
  fit.scales.assign(scales.begin(), scales.end());
  fit.values.assign(values.begin(), values.end());
  fit.fitted_slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.residual = lf.residual;
  return fit;
}

LinearFit loglog_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw FitError("fit inputs have different lengths");
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw FitError("log-log fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return least_squares(lx, ly);
}

}  // namespace schrolab::dyadic
