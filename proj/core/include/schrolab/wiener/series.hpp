#pragma once

#include <functional>
#include <span>
#include <vector>

#include "schrolab/spectral/grid.hpp"
#include "schrolab/wiener/partition.hpp"
#include "schrolab/wiener/randomizer.hpp"

namespace schrolab::wiener {

/// Pointwise response of a randomized linear quantity. For a Fourier
/// multiplier T with symbol m and probe points x_j,
///
///   (T f^omega)(x_j) = sum_k g_k(omega) a_k(x_j),
///   a_k(x) = (2 pi)^{-n/2} sum_xi exp(i x.xi) m(xi) psi(xi - k) f_hat(xi) dxi^n,
///
/// so every draw reduces to a dot product with the stored a_k.
class SeriesResponse {
 public:
  SeriesResponse(ActiveSet active, std::size_t probe_count, std::vector<Complex> amplitudes);

  const ActiveSet& active_set() const noexcept { return active_; }
  std::size_t probe_count() const noexcept { return probes_; }
  /// a_k(x_j) for every k of the active set (ActiveSet::offset order).
  std::span<const Complex> amplitudes(std::size_t probe) const noexcept;

  /// sum_k g_k a_k(x_j).
  Complex evaluate(std::size_t probe, std::span<const double> coefficients) const noexcept;
  /// max_j |sum_k g_k a_k(x_j)|.
  double sup_abs(std::span<const double> coefficients) const noexcept;

 private:
  ActiveSet active_;
  std::size_t probes_;
  std::vector<Complex> amps_;
};

using Symbol = std::function<Complex(const Vec&)>;

/// Builds the response of the multiplier `symbol` applied to f^omega at the
/// given probe points. Throws CoverageError as randomize() does. Frequencies
/// with |f_hat| <= max(1e-14 max|f_hat|, support_floor) do not count as
/// support; pieces of a larger function pass that function's floor.
SeriesResponse series_response(const spectral::GridFunction& f, const BumpPartition& part, const ActiveSet& active,
                               std::span<const Vec> probes, const Symbol& symbol, double support_floor = 0.0);

/// Symbol of U(t) - I: exp(-i t |xi|^2) - 1.
Symbol propagation_defect_symbol(double t);
/// Symbol of U(t).
Symbol propagation_symbol(double t);
/// Identity symbol.
Symbol identity_symbol();

}  // namespace schrolab::wiener
