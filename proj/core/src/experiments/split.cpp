#include "schrolab/experiments/split.hpp"

#include <cmath>
#include <numbers>

#include "schrolab/error.hpp"
#include "schrolab/norms/norms.hpp"
#include "schrolab/spectral/transform.hpp"

namespace schrolab::experiments {

double radial_cutoff(double radius, double cutoff_radius, double taper_width) noexcept {
  if (radius <= cutoff_radius) return 1.0;
  if (radius >= cutoff_radius + taper_width) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * (radius - cutoff_radius) / taper_width);
  return c * c;
}

namespace {

GridFunction cut(const GridFunction& f_hat, double R, double w) {
  const auto& grid = f_hat.grid();
  std::vector<Complex> v(f_hat.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = radial_cutoff(std::sqrt(grid.frequency_norm_sq(i)), R, w) * f_hat[i];
  return GridFunction(grid, std::move(v), spectral::Space::frequency);
}

}  // namespace

SplitResult density_split(const GridFunction& f, double epsilon, const norms::NormSpec& spec, double taper_width) {
  if (!(epsilon > 0.0)) throw InputError("split tolerance must be positive");
  if (!(taper_width > 0.0)) throw InputError("taper width must be positive");
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto& grid = f_hat.grid();
  const double dxi = grid.freq_spacing();
  const double r_max = grid.xi_max() - taper_width;
  if (r_max < 0.0) throw ResolutionError("taper width exceeds the grid's frequency range");
  const auto j_max = static_cast<long>(std::floor(r_max / dxi));

  auto tail_norm = [&](long j) { return norms::fourier_lebesgue_norm(f_hat - cut(f_hat, j * dxi, taper_width), spec); };

  if (!(tail_norm(j_max) < epsilon))
    throw ResolutionError("tolerance " + std::to_string(epsilon) +
                          " is not reachable with a cutoff that fits below xi_max");
  // The tail norm is nonincreasing in R: bisect for the smallest admissible j.
  long lo = -1, hi = j_max;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (tail_norm(mid) < epsilon)
      hi = mid;
    else
      lo = mid;
  }

  const double R = static_cast<double>(hi) * dxi;
  const GridFunction g_hat = cut(f_hat, R, taper_width);
  const GridFunction h_hat = f_hat - g_hat;
  const GridFunction h = spectral::inverse_transform(h_hat);
  const GridFunction f_phys = spectral::to_physical(f);
  return SplitResult{f_phys - h, h, epsilon, norms::fourier_lebesgue_norm(h_hat, spec), R, taper_width};
}

SplitLevelSets split_level_sets(const SplitResult& split, double p, double alpha, const norms::TimeGrid& times,
                                const norms::Region& region) {
  if (!(p >= 4.0)) throw InputError("split level sets use p >= 4");
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  SplitLevelSets out;
  out.alpha = alpha;
  out.p = p;

  double t_min = 0.0;
  for (double t : times.times())
    if (t > 0.0) {
      t_min = t;
      break;
    }
  const GridFunction g_defect = spectral::propagate(split.g, t_min) - split.g;
  out.e1 = norms::level_set_measure(g_defect, alpha / 2.0, region).measure;

  const GridFunction hmax = norms::maximal_function(split.h, times, region);
  out.e21 = norms::level_set_measure(hmax, alpha / 4.0, region).measure;
  out.e21_bound = std::pow(norms::lebesgue_norm(hmax, p, region) / (alpha / 4.0), p);

  out.e22 = norms::level_set_measure(split.h, alpha / 4.0, region).measure;
  out.e22_bound = std::pow(norms::lebesgue_norm(split.h, p / 2.0, region) / (alpha / 4.0), p / 2.0);
  const double q = p / 2.0;
  const double q_conj = q / (q - 1.0);
  out.e22_hausdorff_young_bound = std::pow(norms::frequency_lebesgue_norm(split.h, q_conj) / (alpha / 4.0), q);
  return out;
}

}  // namespace schrolab::experiments
