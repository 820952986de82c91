#include "schrolab/dyadic/counterexample.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "schrolab/error.hpp"
#include "schrolab/norms/norms.hpp"
#include "schrolab/parallel.hpp"
#include "schrolab/spectral/analytic.hpp"

namespace schrolab::dyadic {

DyadicDatum::DyadicDatum(int k, double s, double p, double delta) : k_(k), s_(s), p_(p), delta_(delta) {
  if (k < 1) throw InputError("dyadic scale k must be >= 1");
  if (!(p >= 4.0) || !std::isfinite(p)) throw InputError("counterexample exponent p must be finite and >= 4");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("phase parameter delta must lie in (0, 1)");
  if (!std::isfinite(s)) throw InputError("regularity s must be finite");
}

double DyadicDatum::amplitude() const noexcept { return std::exp2(-static_cast<double>(k_) * sigma()); }

double DyadicDatum::inner_radius() const noexcept { return std::ldexp(1.0, k_); }

double DyadicDatum::time_window() const noexcept { return delta_ / 100.0 * std::ldexp(1.0, -2 * k_); }

SpectralGrid dyadic_grid(int k) {
  if (k < 1 || k > 16) throw InputError("dyadic grid supports 1 <= k <= 16");
  return SpectralGrid(1, 2.0 * std::numbers::pi * 64.0, std::size_t{1} << (k + 13));
}

GridFunction build_datum(const DyadicDatum& datum, const SpectralGrid& grid) {
  return spectral::materialize(spectral::DyadicAnnulus{datum.k(), datum.sigma()}, grid);
}

norms::TimeGrid growth_time_grid(const DyadicDatum& datum, const GrowthOptions& opts) {
  return norms::TimeGrid::geometric(datum.time_window(), opts.decades, opts.per_decade, true);
}

namespace {

norms::Region observation_region(const DyadicDatum& datum) {
  return norms::Ball{{0.0, 0.0, 0.0}, datum.region_radius()};
}

void require_resolved(const DyadicDatum& datum, const SpectralGrid& grid, const GrowthOptions& opts) {
  if (grid.dim() != 1) throw InputError("counterexample growth is measured in one dimension");
  if (!(datum.outer_radius() < grid.xi_max()))
    throw ResolutionError("annulus radius " + std::to_string(datum.outer_radius()) + " is not below xi_max " +
                          std::to_string(grid.xi_max()));
  const auto cells = norms::region_nodes(observation_region(datum), grid).size();
  if (cells < opts.min_region_cells)
    throw ResolutionError("region |x| <= 2^-" + std::to_string(datum.k()) + " holds only " + std::to_string(cells) +
                          " grid cells; need " + std::to_string(opts.min_region_cells));
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half).
constexpr std::array<double, 8> kGlNodes{0.0950125098376375, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438, 0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights{0.1894506104550686, 0.1826034150449236, 0.1691565193950026, 0.1495959888165768, 0.1246289712555340, 0.0951585116824926, 0.0622535239386477, 0.0271524594117540};

}  // namespace

double measure_growth(const DyadicDatum& datum, const SpectralGrid& grid, const GrowthOptions& opts) {
  require_resolved(datum, grid, opts);
  const GridFunction f_hat = build_datum(datum, grid);
  const auto region = observation_region(datum);
  const GridFunction umax = norms::maximal_function(f_hat, growth_time_grid(datum, opts), region);
  return norms::mixed_norm(umax, norms::MixedNormSpec(datum.p(), norms::kInfinity, region));
}

double quadrature_growth(const DyadicDatum& datum, const SpectralGrid& grid, int refine, const GrowthOptions& opts) {
  require_resolved(datum, grid, opts);
  if (refine < 1) throw InputError("quadrature refinement must be >= 1");

  const double h = grid.spacing() / refine;
  const double radius = datum.region_radius();
  const auto half_count = static_cast<long>(std::floor(radius / h));
  std::vector<double> xs;
  for (long j = -half_count; j <= half_count; ++j) xs.push_back(static_cast<double>(j) * h);

  const auto times = growth_time_grid(datum, opts).times();
  const double a = datum.inner_radius(), b = datum.outer_radius();
  constexpr int panels = 32;
  const double panel = (b - a) / panels;
  const double scale = 2.0 / std::sqrt(2.0 * std::numbers::pi) * datum.amplitude();

  std::vector<double> sup(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t j) {
    const double x = xs[j];
    double best = 0.0;
    for (double t : times) {
      Complex sum{0.0, 0.0};
      for (int q = 0; q < panels; ++q) {
        const double mid = a + (q + 0.5) * panel;
        for (std::size_t g = 0; g < kGlNodes.size(); ++g) {
          for (double sign : {-1.0, 1.0}) {
            const double xi = mid + sign * 0.5 * panel * kGlNodes[g];
            sum += kGlWeights[g] * std::cos(x * xi) * std::polar(1.0, -t * xi * xi);
          }
        }
      }
      best = std::max(best, std::abs(scale * 0.5 * panel * sum));
    }
    sup[j] = best;
  });

  double acc = 0.0;
  for (double v : sup) acc += std::pow(v, datum.p());
  return std::pow(acc * h, 1.0 / datum.p());
}

PhaseControl phase_control(const DyadicDatum& datum) {
  PhaseControl pc;
  const double b = datum.outer_radius();
  pc.max_time_phase = datum.time_window() * b * b;
  pc.max_space_phase = datum.region_radius() * b;
  pc.lower_bound_constant =
      2.0 / std::sqrt(2.0 * std::numbers::pi) * std::cos(1.0) * std::cos(pc.max_time_phase);
  return pc;
}

GrowthSweep counterexample_sweep(const std::vector<int>& ks, double s, double p, double delta, bool with_quadrature,
                                 const GrowthOptions& opts) {
  GrowthSweep sweep;
  sweep.expected_slope = 1.0 / p - s;
  std::vector<double> scales, values;
  for (int k : ks) {
    const DyadicDatum datum(k, s, p, delta);
    const SpectralGrid grid = dyadic_grid(k);
    GrowthRow row;
    row.k = k;
    row.s = s;
    row.p = p;
    row.delta = delta;
    row.norm = norms::fourier_lebesgue_norm(build_datum(datum, grid), datum.norm_spec());
    row.growth_value = measure_growth(datum, grid, opts);
    row.oracle_value = with_quadrature ? quadrature_growth(datum, grid, 10, opts) : 0.0;
    sweep.rows.push_back(row);
    scales.push_back(k);
    values.push_back(row.growth_value);
  }
  if (scales.size() >= 4) sweep.fit = fit_blowup(scales, values);
  return sweep;
}

}  // namespace schrolab::dyadic
