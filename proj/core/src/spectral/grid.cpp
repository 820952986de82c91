#include "schrolab/spectral/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "schrolab/error.hpp"

namespace schrolab::spectral {

SpectralGrid::SpectralGrid(int dim, double extent, std::size_t points_per_dim)
    : dim_(dim), extent_(extent), n_(points_per_dim), total_(1) {
  if (dim < 1 || dim > 3) throw InputError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  if (!(extent > 0.0) || !std::isfinite(extent)) throw InputError("grid extent must be positive and finite");
  if (points_per_dim < 8 || !std::has_single_bit(points_per_dim))
    throw InputError("points per dimension must be a power of two >= 8, got " + std::to_string(points_per_dim));
  for (int d = 0; d < dim; ++d) total_ *= n_;
}

double SpectralGrid::freq_spacing() const noexcept { return 2.0 * std::numbers::pi / extent_; }

double SpectralGrid::xi_max() const noexcept { return std::numbers::pi * static_cast<double>(n_) / extent_; }

double SpectralGrid::cell_volume() const noexcept { return std::pow(spacing(), dim_); }

double SpectralGrid::freq_cell_volume() const noexcept { return std::pow(freq_spacing(), dim_); }

std::array<std::size_t, 3> SpectralGrid::unflatten(std::size_t flat) const noexcept {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[static_cast<std::size_t>(d)] = flat % n_;
    flat /= n_;
  }
  return idx;
}

std::size_t SpectralGrid::flatten(const std::array<std::size_t, 3>& idx) const noexcept {
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d) flat = flat * n_ + idx[static_cast<std::size_t>(d)];
  return flat;
}

Vec SpectralGrid::position(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  Vec x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) x[static_cast<std::size_t>(d)] = coordinate(idx[static_cast<std::size_t>(d)]);
  return x;
}

Vec SpectralGrid::frequency(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  const double dxi = freq_spacing();
  Vec xi{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d)
    xi[static_cast<std::size_t>(d)] = dxi * static_cast<double>(wavenumber(idx[static_cast<std::size_t>(d)]));
  return xi;
}

double SpectralGrid::frequency_norm_sq(std::size_t flat) const noexcept {
  const Vec xi = frequency(flat);
  return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
}

std::string_view to_string(Space s) noexcept { return s == Space::physical ? "physical" : "frequency"; }

Space space_from_string(std::string_view s) {
  if (s == "physical") return Space::physical;
  if (s == "frequency") return Space::frequency;
  throw InputError("unknown space tag '" + std::string(s) + "'");
}

GridFunction::GridFunction(SpectralGrid grid, std::vector<Complex> values, Space space)
    : grid_(grid), values_(std::move(values)), space_(space) {
  if (values_.size() != grid_.node_count())
    throw InputError("grid function has " + std::to_string(values_.size()) + " samples, grid has " +
                     std::to_string(grid_.node_count()) + " nodes");
}

GridFunction GridFunction::zeros(const SpectralGrid& grid, Space space) {
  return GridFunction(grid, std::vector<Complex>(grid.node_count()), space);
}

GridFunction GridFunction::sample(const SpectralGrid& grid, Space space,
                                  const std::function<Complex(const Vec&)>& fn) {
  std::vector<Complex> v(grid.node_count());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = fn(space == Space::physical ? grid.position(i) : grid.frequency(i));
  return GridFunction(grid, std::move(v), space);
}

namespace {
void require_compatible(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) throw ContractError("grid functions live on different grids");
  if (a.space() != b.space()) throw ContractError("grid functions are in different representations");
}
}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_compatible(a, b);
  std::vector<Complex> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return GridFunction(a.grid(), std::move(v), a.space());
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_compatible(a, b);
  std::vector<Complex> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return GridFunction(a.grid(), std::move(v), a.space());
}

GridFunction operator*(Complex c, const GridFunction& a) {
  std::vector<Complex> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a[i];
  return GridFunction(a.grid(), std::move(v), a.space());
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
  require_compatible(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace schrolab::spectral
