#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "schrolab/dyadic/counterexample.hpp"
#include "schrolab/dyadic/fit.hpp"
#include "schrolab/error.hpp"
#include "schrolab/norms/norms.hpp"
#include "schrolab/spectral/transform.hpp"

using namespace schrolab;
using namespace schrolab::dyadic;

namespace {
constexpr double kPi = std::numbers::pi;

// ||<xi>^s f_hat||_{L^{r'}} (r = p/2) of the annulus datum, midpoint rule on both sides.
double annulus_norm(int k, double s, double p) {
  const double sigma = s + 1.0 - 2.0 / p, r = (p / 2.0) / (p / 2.0 - 1.0);
  const double a = std::ldexp(1.0, k), b = 2.0 * a;
  const int n = 200000;
  const double h = (b - a) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = a + (i + 0.5) * h;
    acc += std::pow(std::pow(1.0 + xi * xi, s / 2.0) * std::exp2(-k * sigma), r) * h;
  }
  return std::pow(2.0 * acc, 1.0 / r);
}
}  // namespace

TEST(DyadicDatum, ParametersAndValidation) {
  const DyadicDatum d(3, 0.25, 6.0, 0.5);
  EXPECT_DOUBLE_EQ(d.sigma(), 0.25 + 1.0 - 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(d.amplitude(), std::exp2(-3.0 * d.sigma()));
  EXPECT_EQ(d.inner_radius(), 8.0);
  EXPECT_EQ(d.outer_radius(), 16.0);
  EXPECT_EQ(d.region_radius(), 0.125);
  EXPECT_DOUBLE_EQ(d.time_window(), 0.005 / 64.0);
  EXPECT_EQ(d.norm_spec().r(), 3.0);
  EXPECT_THROW(DyadicDatum(0, 0.0, 4.0), InputError);
  EXPECT_THROW(DyadicDatum(2, 0.0, 3.9), InputError);
  EXPECT_THROW(DyadicDatum(2, 0.0, 4.0, 0.0), InputError);
  EXPECT_THROW(DyadicDatum(2, 0.0, 4.0, 1.0), InputError);
  EXPECT_THROW(DyadicDatum(2, NAN, 4.0), InputError);
  EXPECT_THROW(dyadic_grid(0), InputError);
}

TEST(DyadicDatum, NormsOfTheAnnulus) {
  for (int k : {1, 2, 4}) {
    const DyadicDatum d(k, 0.0, 4.0);
    const auto f = build_datum(d, dyadic_grid(k));
    // Both annulus edges are nodes, so the grid sums carry one extra cell per side.
    const double edge = 1.0 / (64.0 * d.inner_radius()) + 1e-4;
    // s = 0, p = 4: the FL^{0,2} norm is sqrt(2) for every k.
    EXPECT_NEAR(norms::fourier_lebesgue_norm(f, d.norm_spec()) / std::sqrt(2.0), 1.0, edge) << k;
    EXPECT_NEAR(norms::frequency_lebesgue_norm(f, 1.0) / (2.0 * d.inner_radius() * d.amplitude()), 1.0, edge);
    const DyadicDatum d2(k, 0.25, 6.0);
    EXPECT_NEAR(norms::fourier_lebesgue_norm(build_datum(d2, dyadic_grid(k)), d2.norm_spec()) / annulus_norm(k, 0.25, 6.0),
                1.0, edge);
  }
}

TEST(DyadicDatum, UnresolvedGridsAreRejected) {
  const DyadicDatum d(3, 0.0, 4.0);
  EXPECT_THROW(measure_growth(d, spectral::SpectralGrid(1, 2.0 * kPi, 16), {}), ResolutionError);
  EXPECT_THROW(measure_growth(d, spectral::SpectralGrid(1, 2.0 * kPi * 64.0, 2048), {}), ResolutionError);
  EXPECT_THROW(measure_growth(d, spectral::SpectralGrid(2, 20.0, 64), {}), InputError);
  EXPECT_THROW(quadrature_growth(d, dyadic_grid(3), 0), InputError);
}

TEST(Fit, ExactSyntheticData) {
  const std::vector<double> ks{1, 2, 3, 4, 5};
  std::vector<double> v;
  for (double k : ks) v.push_back(std::exp2(0.3 * k + 1.0));
  const auto fit = fit_blowup(ks, v);
  EXPECT_NEAR(fit.fitted_slope, 0.3, 1e-12);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-12);
  EXPECT_LT(fit.residual, 1e-12);

  const std::vector<double> x{1.0, 10.0, 100.0};
  const std::vector<double> y{2.0, 20.0, 200.0};
  EXPECT_NEAR(loglog_fit(x, y).slope, 1.0, 1e-12);
}

TEST(Fit, Errors) {
  const std::vector<double> three{1, 2, 3};
  EXPECT_THROW(fit_blowup(three, three), FitError);
  const std::vector<double> ks{1, 2, 3, 4};
  const std::vector<double> bad{1.0, 2.0, 0.0, 4.0};
  EXPECT_THROW(fit_blowup(ks, bad), FitError);
  EXPECT_THROW(fit_blowup(ks, three), FitError);
  const std::vector<double> same{2, 2, 2};
  EXPECT_THROW(least_squares(same, three), FitError);
  const std::vector<double> neg{-1.0, 1.0};
  EXPECT_THROW(loglog_fit(neg, neg), FitError);
}

TEST(Counterexample, PhaseControlLowerBound) {
  for (int k : {2, 3}) {
    const DyadicDatum d(k, 0.0, 4.0, 0.5);
    const auto pc = phase_control(d);
    EXPECT_NEAR(pc.max_time_phase, 0.04 * d.delta(), 1e-15);
    EXPECT_NEAR(pc.max_space_phase, 2.0, 1e-15);
    const auto grid = dyadic_grid(k);
    const auto f = build_datum(d, grid);
    const double floor = pc.lower_bound_constant * std::exp2(k * (1.0 - d.sigma()));
    for (double t : {0.0, 0.3 * d.time_window(), d.time_window()}) {
      const auto u = spectral::to_physical(spectral::propagate(f, t));
      for (std::size_t j : norms::region_nodes(norms::Ball{{0, 0, 0}, 0.5 * d.region_radius()}, grid))
        EXPECT_GE(std::abs(u[j]), floor);
    }
  }
}

TEST(Counterexample, GridAgreesWithQuadratures) {
  for (int k : {2, 3}) {
    const DyadicDatum d(k, 0.0, 4.0, 0.5);
    const auto grid = dyadic_grid(k);
    const double measured = measure_growth(d, grid);
    EXPECT_NEAR(quadrature_growth(d, grid) / measured, 1.0, 0.02) << k;
    EXPECT_NEAR(oracle::annulus_growth(k, 0.0, 4.0, 0.5, 256, 64) / measured, 1.0, 0.02) << k;
  }
}

TEST(Counterexample, RefinedTimeGridChangesLittle) {
  const DyadicDatum d(3, 0.0, 4.0, 0.5);
  const auto grid = dyadic_grid(3);
  const double base = measure_growth(d, grid);
  const double fine = measure_growth(d, grid, GrowthOptions{4, 128, 8});
  EXPECT_LT(std::abs(fine - base) / base, 1e-3);
}

TEST(Counterexample, GrowthSlopes) {
  const std::vector<int> ks{2, 3, 4, 5};
  const GrowthOptions coarse{4, 16, 8};
  const auto grows = counterexample_sweep(ks, 0.0, 4.0, 0.5, false, coarse);
  ASSERT_EQ(grows.rows.size(), 4u);
  EXPECT_EQ(grows.expected_slope, 0.25);
  EXPECT_NEAR(grows.fit.fitted_slope, 0.25, 0.03);
  for (const auto& row : grows.rows) EXPECT_NEAR(row.norm / std::sqrt(2.0), 1.0, 1.0 / (64.0 * std::ldexp(1.0, row.k)) + 1e-4);

  const auto bounded = counterexample_sweep(ks, 0.25, 4.0, 0.5, false, coarse);
  EXPECT_LT(std::abs(bounded.fit.fitted_slope), 0.03);

  const auto p6 = counterexample_sweep(ks, 0.0, 6.0, 0.5, false, coarse);
  EXPECT_NEAR(p6.fit.fitted_slope, 1.0 / 6.0, 0.03);
}
