#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "schrolab/norms/specs.hpp"
#include "schrolab/spectral/grid.hpp"
#include "schrolab/wiener/randomizer.hpp"
#include "schrolab/wiener/series.hpp"

namespace schrolab::experiments {

using spectral::GridFunction;

/// Where |U(t) f^omega - f^omega| is observed: one point, or the max over
/// several points.
struct Probe {
  std::vector<Vec> points;
  bool take_sup = true;
};

Probe point_probe(const Vec& x);
/// `count` grid nodes of the region, evenly spaced in node order.
Probe region_probe(const spectral::SpectralGrid& grid, const norms::Region& region, std::size_t count = 16);

/// `count` geometric thresholds spanning [0.1, 10] x median.
std::vector<double> default_alpha_grid(double median, std::size_t count = 24);

struct AlphaEstimate {
  double alpha = 0.0;
  double p_hat = 0.0;
  double standard_error = 0.0;  ///< sqrt(p (1 - p) / n)
  std::size_t exceedances = 0;
};

/// Fit of log P(stat > alpha) = log C1 - alpha^2 / (C e t)^2 over the
/// thresholds with at least `min_exceedances` hits and p_hat <= 1/2.
struct DecayFit {
  bool valid = false;
  double slope = 0.0;  ///< d log p_hat / d alpha^2
  double intercept = 0.0;
  double residual = 0.0;
  std::size_t points = 0;
  double fitted_C = 0.0;
  double fitted_C1 = 0.0;
};

struct TailEstimate {
  double t = 0.0;
  std::size_t num_draws = 0;
  double median = 0.0;  ///< empirical median of the statistic
  std::vector<AlphaEstimate> per_alpha;
  DecayFit fit;
};

/// stat(omega_d) = max over probes of |sum_k g_k(omega_d) a_k(x)|, d < num_draws.
std::vector<double> draw_statistics(const wiener::SeriesResponse& response, const wiener::RandomizationPlan& plan,
                                    std::size_t num_draws, bool take_sup = true);

/// Empirical exceedance probabilities of a sample for ascending thresholds.
std::vector<AlphaEstimate> exceedance_curve(std::vector<double> stats, const std::vector<double>& alphas);

DecayFit fit_gaussian_decay(const std::vector<AlphaEstimate>& curve, double t, std::size_t min_exceedances = 10);

/// Empirical P(|U(t) f^omega - f^omega| > alpha) at the probe for every alpha.
/// Without an alpha list, default_alpha_grid(median of the statistic) is used.
/// Throws InputError for num_draws < 1000 or an empty or unsorted list.
TailEstimate tail_probability(const GridFunction& f, const wiener::RandomizationPlan& plan, double t,
                              std::optional<std::vector<double>> alphas, const Probe& probe, std::size_t num_draws);

/// Per-point exceedance probability at fixed (t, alpha), one entry per probe
/// point (used to test x-uniformity).
std::vector<AlphaEstimate> per_point_probabilities(const GridFunction& f, const wiener::RandomizationPlan& plan,
                                                   double t, double alpha, const std::vector<Vec>& points,
                                                   std::size_t num_draws);

/// Event counts of the split argument for one time. With f = g + h:
///   omega5: |U f - f| > alpha       omega6: |U g - g| > alpha/2
///   omega8: |U h| > alpha/4         omega9: |h| > alpha/4
/// evaluated on shared draws, with the f statistic formed from the g and h
/// pieces.
struct ContinuityRow {
  double t = 0.0;
  double p_hat = 0.0;  ///< omega5
  double standard_error = 0.0;
  double p6 = 0.0;
  double p8 = 0.0;
  double p9 = 0.0;
  std::size_t union_violations = 0;  ///< draws in omega5 but in none of 6, 8, 9
};

struct ContinuityReport {
  double alpha = 0.0;
  std::size_t num_draws = 0;
  double epsilon = 0.0;
  double cutoff_radius = 0.0;
  double split_norm = 0.0;  ///< ||h||_{FL^{0,r}}
  std::vector<ContinuityRow> rows;  ///< ordered by decreasing t
  bool monotone_trend = false;  ///< p_hat nonincreasing as t decreases (3 standard errors slack)
  bool vanishes = false;        ///< p_hat < 1/num_draws at the smallest t
};

ContinuityReport stochastic_continuity_report(const GridFunction& f, const wiener::RandomizationPlan& plan,
                                              std::vector<double> times, double alpha, const Probe& probe,
                                              std::size_t num_draws, double epsilon, const norms::NormSpec& spec);

}  // namespace schrolab::experiments
