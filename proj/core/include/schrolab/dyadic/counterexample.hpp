#pragma once

#include <vector>

#include "schrolab/dyadic/fit.hpp"
#include "schrolab/norms/specs.hpp"
#include "schrolab/spectral/grid.hpp"

namespace schrolab::dyadic {

using spectral::GridFunction;
using spectral::SpectralGrid;

/// Frequency datum f_hat = 2^{-k sigma} on 2^k <= |xi| <= 2^{k+1}, with
/// sigma = s + 1/(p/2)' = s + 1 - 2/p, observed for times
/// t <= (delta/100) 2^{-2k} on |x| <= 2^{-k}.
class DyadicDatum {
 public:
  /// Throws InputError unless k >= 1, p >= 4 and 0 < delta < 1.
  DyadicDatum(int k, double s, double p, double delta = 0.5);

  int k() const noexcept { return k_; }
  double s() const noexcept { return s_; }
  double p() const noexcept { return p_; }
  double delta() const noexcept { return delta_; }
  double sigma() const noexcept { return s_ + 1.0 - 2.0 / p_; }
  double amplitude() const noexcept;
  double inner_radius() const noexcept;
  double outer_radius() const noexcept { return 2.0 * inner_radius(); }
  double region_radius() const noexcept { return 1.0 / inner_radius(); }
  double time_window() const noexcept;
  /// The matching Fourier-Lebesgue exponents (s, p/2).
  norms::NormSpec norm_spec() const { return norms::NormSpec(s_, p_ / 2.0); }

 private:
  int k_;
  double s_;
  double p_;
  double delta_;
};

/// Grid resolving both the annulus and the region |x| <= 2^{-k}: extent
/// 2 pi * 64 (so the annulus edges are lattice nodes) and N = 2^{k+13},
/// which gives about 40 cells across the region for every k.
SpectralGrid dyadic_grid(int k);

/// Throws ResolutionError if the annulus reaches xi_max.
GridFunction build_datum(const DyadicDatum& datum, const SpectralGrid& grid);

struct GrowthOptions {
  int decades = 4;
  int per_decade = 64;
  std::size_t min_region_cells = 8;
};

/// The time grid used for the maximal function: geometric on
/// (0, time_window] plus t = 0.
norms::TimeGrid growth_time_grid(const DyadicDatum& datum, const GrowthOptions& opts = {});

/// || U(t) f ||_{L^p_x(|x| <= 2^{-k}) L^inf_t} on the grid, sup over
/// growth_time_grid. Throws ResolutionError when the region holds fewer
/// than opts.min_region_cells nodes or the annulus is not representable.
double measure_growth(const DyadicDatum& datum, const SpectralGrid& grid, const GrowthOptions& opts = {});

/// The same quantity evaluated without the grid: the annulus integral
///   U(t)f(x) = (2/sqrt(2 pi)) A int_{2^k}^{2^{k+1}} cos(x xi) exp(-i t xi^2) dxi
/// by composite Gauss-Legendre, at `refine` times the spatial resolution of
/// `grid` with the same cell-center rule.
double quadrature_growth(const DyadicDatum& datum, const SpectralGrid& grid, int refine = 10,
                         const GrowthOptions& opts = {});

/// Phase bounds inside the observation window.
struct PhaseControl {
  double max_time_phase = 0.0;   ///< max |t xi^2| over the annulus and window
  double max_space_phase = 0.0;  ///< max |x xi| over the annulus and region
  /// |U(t) f(x)| >= lower_bound_constant * 2^{k(1 - sigma)} for |x| <= 2^{-k-1}:
  /// there |x xi| <= 1 and |t xi^2| <= 4 delta / 100, so the real part of the
  /// integrand stays above cos(1) cos(delta / 25).
  double lower_bound_constant = 0.0;
};

PhaseControl phase_control(const DyadicDatum& datum);

/// One cell of a counterexample sweep.
struct GrowthRow {
  int k = 0;
  double s = 0.0;
  double p = 0.0;
  double delta = 0.0;
  double norm = 0.0;          ///< || f ||_{FL^{s, p/2}}
  double growth_value = 0.0;  ///< measure_growth
  double oracle_value = 0.0;  ///< quadrature_growth (0 when skipped)
};

struct GrowthSweep {
  std::vector<GrowthRow> rows;
  ScalingFit fit;
  double expected_slope = 0.0;  ///< 1/p - s
};

GrowthSweep counterexample_sweep(const std::vector<int>& ks, double s, double p, double delta,
                                 bool with_quadrature = true, const GrowthOptions& opts = {});

}  // namespace schrolab::dyadic
