#include "schrolab/spectral/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "schrolab/error.hpp"

namespace schrolab::spectral {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

GridFunction sample_gaussian(const Gaussian& g, const SpectralGrid& grid) {
  if (!(g.width > 0.0)) throw InputError("gaussian width must be positive");
  const double inv = 1.0 / (2.0 * g.width * g.width);
  return GridFunction::sample(grid, Space::physical, [&](const Vec& x) {
    double r2 = 0.0;
    double phase = 0.0;
    for (std::size_t d = 0; d < 3; ++d) {
      const double dx = x[d] - g.center[d];
      r2 += dx * dx;
      phase += x[d] * g.modulation[d];
    }
    return std::exp(-r2 * inv) * std::polar(1.0, phase);
  });
}

GridFunction sample_plane_wave(const PlaneWave& w, const SpectralGrid& grid) {
  const double dxi = grid.freq_spacing();
  const long half = static_cast<long>(grid.points_per_dim() / 2);
  for (std::size_t d = 0; d < 3; ++d) {
    const double m = w.mode[d] / dxi;
    const double rounded = std::round(m);
    const bool unused_axis = static_cast<int>(d) >= grid.dim();
    if (unused_axis) {
      if (w.mode[d] != 0.0) throw ResolutionError("plane wave mode has a component beyond the grid dimension");
      continue;
    }
    if (std::abs(m - rounded) > 1e-9 * std::max(1.0, std::abs(m)))
      throw ResolutionError("plane wave mode " + std::to_string(w.mode[d]) + " is not on the frequency lattice");
    if (rounded < static_cast<double>(-half) || rounded >= static_cast<double>(half))
      throw ResolutionError("plane wave mode lies outside [-N/2, N/2)");
  }
  return GridFunction::sample(grid, Space::physical, [&](const Vec& x) {
    return std::polar(1.0, x[0] * w.mode[0] + x[1] * w.mode[1] + x[2] * w.mode[2]);
  });
}

GridFunction sample_annulus(const DyadicAnnulus& a, const SpectralGrid& grid) {
  const double inner = std::ldexp(1.0, a.k);
  const double outer = 2.0 * inner;
  if (!(outer < grid.xi_max()))
    throw ResolutionError("annulus outer radius 2^" + std::to_string(a.k + 1) + " exceeds xi_max " +
                          std::to_string(grid.xi_max()));
  const double amp = std::exp2(-static_cast<double>(a.k) * a.amplitude_exponent);
  return GridFunction::sample(grid, Space::frequency, [&](const Vec& xi) {
    const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    return Complex(inner <= r && r <= outer ? amp : 0.0, 0.0);
  });
}

}  // namespace

GridFunction materialize(const AnalyticSignal& sig, const SpectralGrid& grid) {
  return std::visit(overloaded{
                        [&](const Gaussian& g) { return sample_gaussian(g, grid); },
                        [&](const PlaneWave& w) { return sample_plane_wave(w, grid); },
                        [&](const DyadicAnnulus& a) { return sample_annulus(a, grid); },
                    },
                    sig);
}

Complex gaussian_evolution(double x, double t) {
  const Complex a(1.0, 2.0 * t);
  return std::exp(-x * x / (2.0 * a)) / std::sqrt(a);
}

Complex periodized_gaussian_evolution(double x, double t, double extent, int images) {
  Complex sum{0.0, 0.0};
  for (int m = -images; m <= images; ++m) sum += gaussian_evolution(x + m * extent, t);
  return sum;
}

}  // namespace schrolab::spectral
