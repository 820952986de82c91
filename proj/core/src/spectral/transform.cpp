#include "schrolab/spectral/transform.hpp"

#include <cmath>
#include <numbers>

#include "fft_backend.hpp"
#include "schrolab/error.hpp"

namespace schrolab::spectral {

namespace {

// exp(-+ i x_0 xi_m) with x_0 = -L/2 equals (-1)^m per axis, and m has the
// parity of its storage slot because N is even.
double checkerboard_sign(const SpectralGrid& grid, std::size_t flat) {
  const auto idx = grid.unflatten(flat);
  std::size_t parity = 0;
  for (int d = 0; d < grid.dim(); ++d) parity += idx[static_cast<std::size_t>(d)];
  return (parity & 1U) ? -1.0 : 1.0;
}

double convention_factor(int dim) { return std::pow(2.0 * std::numbers::pi, -0.5 * dim); }

}  // namespace

GridFunction forward_transform(const GridFunction& f) {
  if (f.space() != Space::physical) throw ContractError("forward_transform expects physical-space samples");
  const auto& grid = f.grid();
  std::vector<Complex> v(f.values().begin(), f.values().end());
  detail::fft_inplace(v, grid, detail::FftDirection::forward);
  const double scale = convention_factor(grid.dim()) * grid.cell_volume();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= scale * checkerboard_sign(grid, i);
  return GridFunction(grid, std::move(v), Space::frequency);
}

GridFunction inverse_transform(const GridFunction& f_hat) {
  if (f_hat.space() != Space::frequency) throw ContractError("inverse_transform expects frequency-space samples");
  const auto& grid = f_hat.grid();
  std::vector<Complex> v(f_hat.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_hat[i] * checkerboard_sign(grid, i);
  detail::fft_inplace(v, grid, detail::FftDirection::backward);
  const double scale = convention_factor(grid.dim()) * grid.freq_cell_volume();
  for (auto& z : v) z *= scale;
  return GridFunction(grid, std::move(v), Space::physical);
}

GridFunction to_frequency(const GridFunction& f) {
  return f.space() == Space::frequency ? f : forward_transform(f);
}

GridFunction to_physical(const GridFunction& f) {
  return f.space() == Space::physical ? f : inverse_transform(f);
}

GridFunction apply_multiplier(const GridFunction& f, const std::function<Complex(const Vec&)>& symbol) {
  const GridFunction f_hat = to_frequency(f);
  const auto& grid = f_hat.grid();
  std::vector<Complex> v(f_hat.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = symbol(grid.frequency(i)) * f_hat[i];
  GridFunction out(grid, std::move(v), Space::frequency);
  return f.space() == Space::physical ? inverse_transform(out) : out;
}

GridFunction propagate(const GridFunction& f, double t) {
  if (!std::isfinite(t)) throw InputError("propagation time must be finite");
  if (t == 0.0) return to_physical(f);
  const GridFunction f_hat = to_frequency(f);
  const auto& grid = f_hat.grid();
  std::vector<Complex> v(f_hat.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::polar(1.0, -t * grid.frequency_norm_sq(i)) * f_hat[i];
  return inverse_transform(GridFunction(grid, std::move(v), Space::frequency));
}

GridFunction fractional_derivative(const GridFunction& f, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw InputError("fractional derivative order must be finite and >= 0");
  if (alpha == 0.0) return f;
  return apply_multiplier(f, [alpha](const Vec& xi) {
    return Complex(std::pow(std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]), alpha), 0.0);
  });
}

GridFunction bracket_weight(const GridFunction& f_hat, double s) {
  if (f_hat.space() != Space::frequency) throw ContractError("bracket_weight expects frequency-space samples");
  if (s == 0.0) return f_hat;
  const auto& grid = f_hat.grid();
  std::vector<Complex> v(f_hat.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(1.0 + grid.frequency_norm_sq(i), 0.5 * s) * f_hat[i];
  return GridFunction(grid, std::move(v), Space::frequency);
}

}  // namespace schrolab::spectral
