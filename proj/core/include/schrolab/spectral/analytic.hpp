#pragma once

#include <variant>

#include "schrolab/spectral/grid.hpp"

namespace schrolab::spectral {

/// exp(-|x - center|^2 / (2 width^2)) * exp(i x . modulation), physical space.
struct Gaussian {
  Vec center{0.0, 0.0, 0.0};
  double width = 1.0;
  Vec modulation{0.0, 0.0, 0.0};
};

/// exp(i x . mode). The mode must be a node of the frequency lattice.
struct PlaneWave {
  Vec mode{0.0, 0.0, 0.0};
};

/// Frequency-side profile 2^{-k * amplitude_exponent} on 2^k <= |xi| <= 2^{k+1}.
struct DyadicAnnulus {
  int k = 1;
  double amplitude_exponent = 0.0;
};

using AnalyticSignal = std::variant<Gaussian, PlaneWave, DyadicAnnulus>;

/// Samples a closed-form signal on `grid`, in its natural representation
/// (frequency space for DyadicAnnulus, physical space otherwise).
/// Throws InputError for a non-positive width and ResolutionError for an
/// off-lattice plane wave or an annulus reaching xi_max.
GridFunction materialize(const AnalyticSignal& sig, const SpectralGrid& grid);

/// Exact free evolution of the unit 1D Gaussian exp(-x^2/2):
/// (1 + 2it)^{-1/2} exp(-x^2 / (2 (1 + 2it))).
Complex gaussian_evolution(double x, double t);

/// Same evolution summed over periodic images x + m L, |m| <= images. This is
/// the exact solution on the periodic box [-L/2, L/2).
Complex periodized_gaussian_evolution(double x, double t, double extent, int images = 8);

}  // namespace schrolab::spectral
