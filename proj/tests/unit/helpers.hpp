#pragma once

#include <cmath>
#include <random>

#include "schrolab/spectral/grid.hpp"

namespace testing_util {

using schrolab::Complex;
using schrolab::spectral::GridFunction;
using schrolab::spectral::Space;
using schrolab::spectral::SpectralGrid;

/// Random frequency data on |xi| <= band (smooth radial taper), unit peak.
inline GridFunction random_band_limited(const SpectralGrid& grid, double band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(grid.node_count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = std::sqrt(grid.frequency_norm_sq(i));
    const Complex z(g(rng), g(rng));
    if (r < band) {
      const double c = std::cos(0.5 * M_PI * r / band);
      v[i] = c * c * z;
    }
  }
  return GridFunction(grid, std::move(v), Space::frequency);
}

inline double rel_l2(const GridFunction& a, const GridFunction& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

inline double max_abs(const GridFunction& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

}  // namespace testing_util
