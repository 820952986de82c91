#pragma once

#include "schrolab/norms/specs.hpp"
#include "schrolab/spectral/grid.hpp"

namespace schrolab::experiments {

using spectral::GridFunction;

/// f = g + h with g band-limited (smooth cutoff) and ||h||_{FL^{s,r}} < eps.
struct SplitResult {
  GridFunction g;
  GridFunction h;
  double epsilon = 0.0;
  double achieved_norm = 0.0;  ///< ||h||_{FL^{s,r}}
  double cutoff_radius = 0.0;  ///< g_hat = f_hat on |xi| <= R
  double taper_width = 0.0;    ///< g_hat = 0 on |xi| >= R + taper_width
};

/// Smooth radial cutoff: 1 on [0, R], cos^2 taper on (R, R + w), 0 beyond.
double radial_cutoff(double radius, double cutoff_radius, double taper_width) noexcept;

/// Picks the smallest lattice radius R with ||(1 - chi_R) f_hat||_{FL^{s,r}} < eps
/// and returns h = F^{-1}((1 - chi_R) f_hat), g = f - h (both in physical space).
/// Throws InputError for eps <= 0 and ResolutionError when the taper would
/// have to extend beyond xi_max.
SplitResult density_split(const GridFunction& f, double epsilon, const norms::NormSpec& spec,
                          double taper_width = 1.0);

/// Measures of the level sets used to bound the convergence defect of a split
/// datum, with their Chebyshev-type bounds (all on `region`):
///   E1  = {|U(t_min) g - g| > alpha/2}
///   E21 = {max_t |U(t) h| > alpha/4},   bound (||max_t |U h|||_{L^p} / (alpha/4))^p
///   E22 = {|h| > alpha/4},              bound (||h||_{L^{p/2}} / (alpha/4))^{p/2}
/// plus the Hausdorff-Young form of the E22 bound with ||h_hat||_{L^{(p/2)'}}.
struct SplitLevelSets {
  double alpha = 0.0;
  double p = 0.0;
  double e1 = 0.0;
  double e21 = 0.0;
  double e21_bound = 0.0;
  double e22 = 0.0;
  double e22_bound = 0.0;
  double e22_hausdorff_young_bound = 0.0;
};

SplitLevelSets split_level_sets(const SplitResult& split, double p, double alpha, const norms::TimeGrid& times,
                                const norms::Region& region = norms::FullBox{});

}  // namespace schrolab::experiments
