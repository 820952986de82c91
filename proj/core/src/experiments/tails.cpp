#include "schrolab/experiments/tails.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "schrolab/dyadic/fit.hpp"
#include "schrolab/error.hpp"
#include "schrolab/experiments/split.hpp"
#include "schrolab/parallel.hpp"
#include "schrolab/spectral/transform.hpp"

namespace schrolab::experiments {

using wiener::SeriesResponse;

Probe point_probe(const Vec& x) { return Probe{{x}, false}; }

Probe region_probe(const spectral::SpectralGrid& grid, const norms::Region& region, std::size_t count) {
  const auto nodes = norms::region_nodes(region, grid);
  if (nodes.empty()) throw InputError("probe region contains no grid nodes");
  if (count == 0) throw InputError("probe needs at least one point");
  Probe probe;
  probe.take_sup = true;
  const std::size_t n = std::min(count, nodes.size());
  for (std::size_t i = 0; i < n; ++i) probe.points.push_back(grid.position(nodes[(i * nodes.size()) / n]));
  return probe;
}

std::vector<double> default_alpha_grid(double median, std::size_t count) {
  if (!(median > 0.0)) throw InputError("default alpha grid needs a positive median");
  if (count < 2) throw InputError("alpha grid needs at least two points");
  std::vector<double> a(count);
  for (std::size_t i = 0; i < count; ++i)
    a[i] = median * std::pow(10.0, -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count - 1));
  return a;
}

std::vector<double> draw_statistics(const SeriesResponse& response, const wiener::RandomizationPlan& plan,
                                    std::size_t num_draws, bool take_sup) {
  std::vector<double> stats(num_draws);
  parallel_for(num_draws, [&](std::size_t d) {
    const auto g = wiener::draw_coefficients(plan, d);
    stats[d] = take_sup ? response.sup_abs(g) : std::abs(response.evaluate(0, g));
  });
  return stats;
}

std::vector<AlphaEstimate> exceedance_curve(std::vector<double> stats, const std::vector<double>& alphas) {
  for (std::size_t i = 1; i < alphas.size(); ++i)
    if (!(alphas[i] > alphas[i - 1])) throw InputError("alpha grid must be strictly increasing");
  std::sort(stats.begin(), stats.end());
  const auto n = static_cast<double>(stats.size());
  std::vector<AlphaEstimate> out;
  for (double a : alphas) {
    if (!(a > 0.0)) throw InputError("alpha must be positive");
    const auto above = static_cast<std::size_t>(stats.end() - std::upper_bound(stats.begin(), stats.end(), a));
    const double p = static_cast<double>(above) / n;
    out.push_back(AlphaEstimate{a, p, std::sqrt(p * (1.0 - p) / n), above});
  }
  return out;
}

DecayFit fit_gaussian_decay(const std::vector<AlphaEstimate>& curve, double t, std::size_t min_exceedances) {
  std::vector<double> x, y;
  for (const auto& e : curve) {
    if (e.exceedances >= min_exceedances && e.p_hat <= 0.5) {
      x.push_back(e.alpha * e.alpha);
      y.push_back(std::log(e.p_hat));
    }
  }
  DecayFit fit;
  fit.points = x.size();
  if (x.size() < 2) return fit;
  const auto lf = dyadic::least_squares(x, y);
  fit.valid = true;
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.residual = lf.residual;
  fit.fitted_C1 = std::exp(lf.intercept);
  if (lf.slope < 0.0 && t != 0.0) fit.fitted_C = 1.0 / (std::numbers::e * std::abs(t) * std::sqrt(-lf.slope));
  return fit;
}

namespace {

void require_draws(std::size_t num_draws) {
  if (num_draws < 1000) throw InputError("tail estimates need at least 1000 draws");
}

double median_of(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

TailEstimate tail_probability(const GridFunction& f, const wiener::RandomizationPlan& plan, double t,
                              std::optional<std::vector<double>> alphas, const Probe& probe, std::size_t num_draws) {
  require_draws(num_draws);
  if (alphas && alphas->empty()) throw InputError("alpha grid must be nonempty");
  if (probe.points.empty()) throw InputError("probe has no points");
  const auto part = wiener::build_partition(f.grid().dim(), plan.profile);
  const auto response =
      wiener::series_response(f, part, plan.active_set, probe.points, wiener::propagation_defect_symbol(t));
  auto stats = draw_statistics(response, plan, num_draws, probe.take_sup);

  TailEstimate est;
  est.t = t;
  est.num_draws = num_draws;
  est.median = median_of(stats);
  if (!alphas) alphas = default_alpha_grid(est.median > 0.0 ? est.median : 1.0);
  est.per_alpha = exceedance_curve(std::move(stats), *alphas);
  est.fit = fit_gaussian_decay(est.per_alpha, t);
  return est;
}

std::vector<AlphaEstimate> per_point_probabilities(const GridFunction& f, const wiener::RandomizationPlan& plan,
                                                   double t, double alpha, const std::vector<Vec>& points,
                                                   std::size_t num_draws) {
  require_draws(num_draws);
  const auto part = wiener::build_partition(f.grid().dim(), plan.profile);
  const auto response =
      wiener::series_response(f, part, plan.active_set, points, wiener::propagation_defect_symbol(t));
  std::vector<std::size_t> hits(points.size() * num_draws, 0);
  parallel_for(num_draws, [&](std::size_t d) {
    const auto g = wiener::draw_coefficients(plan, d);
    for (std::size_t j = 0; j < points.size(); ++j)
      hits[d * points.size() + j] = std::abs(response.evaluate(j, g)) > alpha ? 1 : 0;
  });
  std::vector<AlphaEstimate> out;
  const auto n = static_cast<double>(num_draws);
  for (std::size_t j = 0; j < points.size(); ++j) {
    std::size_t count = 0;
    for (std::size_t d = 0; d < num_draws; ++d) count += hits[d * points.size() + j];
    const double p = static_cast<double>(count) / n;
    out.push_back(AlphaEstimate{alpha, p, std::sqrt(p * (1.0 - p) / n), count});
  }
  return out;
}

ContinuityReport stochastic_continuity_report(const GridFunction& f, const wiener::RandomizationPlan& plan,
                                              std::vector<double> times, double alpha, const Probe& probe,
                                              std::size_t num_draws, double epsilon, const norms::NormSpec& spec) {
  require_draws(num_draws);
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  if (times.empty()) throw InputError("continuity report needs at least one time");
  if (probe.points.empty()) throw InputError("probe has no points");
  std::sort(times.begin(), times.end(), std::greater<>());

  const SplitResult split = density_split(f, epsilon, spec);
  const auto part = wiener::build_partition(f.grid().dim(), plan.profile);
  const auto& pts = probe.points;
  double peak = 0.0;
  for (const auto& z : spectral::to_frequency(f).values()) peak = std::max(peak, std::abs(z));
  const double floor = 1e-14 * peak;
  const auto h_identity =
      wiener::series_response(split.h, part, plan.active_set, pts, wiener::identity_symbol(), floor);

  ContinuityReport report;
  report.alpha = alpha;
  report.num_draws = num_draws;
  report.epsilon = epsilon;
  report.cutoff_radius = split.cutoff_radius;
  report.split_norm = split.achieved_norm;

  const auto n = static_cast<double>(num_draws);
  for (double t : times) {
    const auto g_defect =
        wiener::series_response(split.g, part, plan.active_set, pts, wiener::propagation_defect_symbol(t), floor);
    const auto h_evolved =
        wiener::series_response(split.h, part, plan.active_set, pts, wiener::propagation_symbol(t), floor);

    // flags per draw: bit0 omega5, bit1 omega6, bit2 omega8, bit3 omega9
    std::vector<unsigned char> flags(num_draws, 0);
    parallel_for(num_draws, [&](std::size_t d) {
      const auto g = wiener::draw_coefficients(plan, d);
      double s5 = 0.0, s6 = 0.0, s8 = 0.0, s9 = 0.0;
      const std::size_t count = probe.take_sup ? pts.size() : 1;
      for (std::size_t j = 0; j < count; ++j) {
        const Complex dg = g_defect.evaluate(j, g);
        const Complex uh = h_evolved.evaluate(j, g);
        const Complex hh = h_identity.evaluate(j, g);
        s5 = std::max(s5, std::abs(dg + (uh - hh)));
        s6 = std::max(s6, std::abs(dg));
        s8 = std::max(s8, std::abs(uh));
        s9 = std::max(s9, std::abs(hh));
      }
      unsigned char b = 0;
      if (s5 > alpha) b |= 1U;
      if (s6 > alpha / 2.0) b |= 2U;
      if (s8 > alpha / 4.0) b |= 4U;
      if (s9 > alpha / 4.0) b |= 8U;
      flags[d] = b;
    });

    std::size_t c5 = 0, c6 = 0, c8 = 0, c9 = 0, violations = 0;
    for (auto b : flags) {
      c5 += b & 1U;
      c6 += (b >> 1) & 1U;
      c8 += (b >> 2) & 1U;
      c9 += (b >> 3) & 1U;
      if ((b & 1U) && !(b & 14U)) ++violations;
    }
    ContinuityRow row;
    row.t = t;
    row.p_hat = static_cast<double>(c5) / n;
    row.standard_error = std::sqrt(row.p_hat * (1.0 - row.p_hat) / n);
    row.p6 = static_cast<double>(c6) / n;
    row.p8 = static_cast<double>(c8) / n;
    row.p9 = static_cast<double>(c9) / n;
    row.union_violations = violations;
    report.rows.push_back(row);
  }

  report.monotone_trend = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& prev = report.rows[i - 1];
    const auto& cur = report.rows[i];
    const double slack = 3.0 * std::sqrt(prev.standard_error * prev.standard_error +
                                         cur.standard_error * cur.standard_error);
    if (cur.p_hat > prev.p_hat + slack) report.monotone_trend = false;
  }
  report.vanishes = report.rows.back().p_hat < 1.0 / n;
  return report;
}

}  // namespace schrolab::experiments
