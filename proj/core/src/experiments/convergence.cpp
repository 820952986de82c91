#include "schrolab/experiments/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "schrolab/error.hpp"
#include "schrolab/norms/norms.hpp"
#include "schrolab/parallel.hpp"
#include "schrolab/spectral/transform.hpp"

namespace schrolab::experiments {

ConvergenceSweep convergence_sweep(const GridFunction& f, std::vector<double> times, const norms::Region& region,
                                   std::vector<double> alphas) {
  if (times.empty()) throw InputError("convergence sweep needs at least one time");
  std::sort(times.begin(), times.end(), std::greater<>());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw InputError("sweep times must be finite and >= 0");
    if (i > 0 && !(times[i] < times[i - 1])) throw InputError("sweep times must be distinct");
  }
  for (double a : alphas)
    if (!(a > 0.0)) throw InputError("level-set thresholds must be positive");

  const GridFunction f_phys = spectral::to_physical(f);
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto nodes = norms::region_nodes(region, f_phys.grid());

  ConvergenceSweep sweep;
  sweep.region = region;
  sweep.alphas = alphas;
  sweep.records.resize(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    ConvergenceRecord rec;
    rec.t = times[i];
    const GridFunction defect = spectral::propagate(times[i] == 0.0 ? f_phys : f_hat, times[i]) - f_phys;
    for (auto j : nodes) rec.sup_error = std::max(rec.sup_error, std::abs(defect[j]));
    for (double a : alphas) rec.level_sets.push_back(norms::level_set_measure(defect, a, region));
    sweep.records[i] = std::move(rec);
  });
  return sweep;
}

dyadic::LinearFit convergence_rate(const ConvergenceSweep& sweep, double t_lo, double t_hi) {
  std::vector<double> ts, errs;
  for (const auto& r : sweep.records) {
    if (r.t >= t_lo && r.t <= t_hi && r.t > 0.0 && r.sup_error > 0.0) {
      ts.push_back(r.t);
      errs.push_back(r.sup_error);
    }
  }
  return dyadic::loglog_fit(ts, errs);
}

double band_limited_defect_bound(const GridFunction& f, double t) {
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto& grid = f_hat.grid();
  double m2 = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < f_hat.size(); ++i) {
    if (f_hat[i] == Complex{}) continue;
    m2 = std::max(m2, grid.frequency_norm_sq(i));
    l1 += std::abs(f_hat[i]);
  }
  l1 *= grid.freq_cell_volume();
  return std::abs(t) * m2 * l1 * std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim());
}

}  // namespace schrolab::experiments
