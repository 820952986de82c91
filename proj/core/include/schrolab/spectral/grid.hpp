#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace schrolab {

using Complex = std::complex<double>;
/// Point in R^n, n <= 3. Unused trailing components are zero.
using Vec = std::array<double, 3>;
/// Point of Z^n, n <= 3. Unused trailing components are zero.
using LatticePoint = std::array<int, 3>;

namespace spectral {

/// Periodic box [-L/2, L/2)^n sampled with N points per axis.
///
/// Physical node j sits at x_j = -L/2 + j*L/N. Frequency storage follows the
/// FFT order: slot i holds the wavenumber m = i for i < N/2 and m = i - N
/// otherwise, so the lattice is {2*pi*m/L : m in [-N/2, N/2)} with the Nyquist
/// node on the negative side. Flat indices are row-major (last axis fastest).
class SpectralGrid {
 public:
  SpectralGrid(int dim, double extent, std::size_t points_per_dim);

  int dim() const noexcept { return dim_; }
  double extent() const noexcept { return extent_; }
  std::size_t points_per_dim() const noexcept { return n_; }
  std::size_t node_count() const noexcept { return total_; }

  double spacing() const noexcept { return extent_ / static_cast<double>(n_); }
  double freq_spacing() const noexcept;
  double xi_max() const noexcept;
  double cell_volume() const noexcept;
  double freq_cell_volume() const noexcept;

  double coordinate(std::size_t j) const noexcept {
    return -0.5 * extent_ + static_cast<double>(j) * spacing();
  }
  /// Signed wavenumber m of 1D storage slot i.
  long wavenumber(std::size_t i) const noexcept {
    const auto half = static_cast<long>(n_ / 2);
    const auto li = static_cast<long>(i);
    return li < half ? li : li - static_cast<long>(n_);
  }
  /// 1D storage slot of signed wavenumber m in [-N/2, N/2).
  std::size_t slot_of_wavenumber(long m) const noexcept {
    return static_cast<std::size_t>(m < 0 ? m + static_cast<long>(n_) : m);
  }

  /// Per-axis indices of a flat index.
  std::array<std::size_t, 3> unflatten(std::size_t flat) const noexcept;
  std::size_t flatten(const std::array<std::size_t, 3>& idx) const noexcept;

  Vec position(std::size_t flat) const noexcept;
  Vec frequency(std::size_t flat) const noexcept;
  double frequency_norm_sq(std::size_t flat) const noexcept;

  friend bool operator==(const SpectralGrid&, const SpectralGrid&) = default;

 private:
  int dim_;
  double extent_;
  std::size_t n_;
  std::size_t total_;
};

enum class Space { physical, frequency };

std::string_view to_string(Space s) noexcept;
Space space_from_string(std::string_view s);

/// Complex samples on a SpectralGrid, in physical or frequency representation.
/// Immutable once built.
class GridFunction {
 public:
  GridFunction(SpectralGrid grid, std::vector<Complex> values, Space space);

  static GridFunction zeros(const SpectralGrid& grid, Space space);
  /// Samples `fn` at every node of the requested representation: positions for
  /// physical space, frequency vectors for frequency space.
  static GridFunction sample(const SpectralGrid& grid, Space space,
                             const std::function<Complex(const Vec&)>& fn);

  const SpectralGrid& grid() const noexcept { return grid_; }
  Space space() const noexcept { return space_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Complex& operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Moves the samples out; used by operations that rebuild a function.
  std::vector<Complex> release() && { return std::move(values_); }

 private:
  SpectralGrid grid_;
  std::vector<Complex> values_;
  Space space_;
};

/// Pointwise sum / difference / scaling. Operands must share grid and space.
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(Complex c, const GridFunction& a);

/// max_i |a_i - b_i|. Operands must share grid and space.
double max_abs_difference(const GridFunction& a, const GridFunction& b);

}  // namespace spectral
}  // namespace schrolab
