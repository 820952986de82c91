#pragma once

#include <vector>

#include "schrolab/dyadic/fit.hpp"
#include "schrolab/norms/specs.hpp"
#include "schrolab/spectral/grid.hpp"

namespace schrolab::experiments {

using spectral::GridFunction;

struct ConvergenceRecord {
  double t = 0.0;
  double sup_error = 0.0;  ///< max over the region of |U(t) f - f|
  std::vector<norms::LevelSet> level_sets;  ///< one per alpha of the ladder
};

/// Records of |U(t) f - f| for times decreasing toward 0.
struct ConvergenceSweep {
  norms::Region region;
  std::vector<double> alphas;
  std::vector<ConvergenceRecord> records;  ///< strictly decreasing t
};

/// Sorts `times` in decreasing order (duplicates and negative times are
/// rejected with InputError) and measures U(t) f - f on the region for each.
ConvergenceSweep convergence_sweep(const GridFunction& f, std::vector<double> times, const norms::Region& region,
                                   std::vector<double> alphas = {1e-6, 1e-4, 1e-2});

/// Log-log fit of sup error against t over records with t in [t_lo, t_hi]
/// and a positive error.
dyadic::LinearFit convergence_rate(const ConvergenceSweep& sweep, double t_lo, double t_hi);

/// t M^2 ||f_hat||_{L^1} (2 pi)^{-n/2} with M the largest |xi| carrying
/// nonzero f_hat: the pointwise bound on |U(t) f - f| from
/// |exp(-i t |xi|^2) - 1| <= t |xi|^2.
double band_limited_defect_bound(const GridFunction& f, double t);

}  // namespace schrolab::experiments
