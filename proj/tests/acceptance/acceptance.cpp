// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "helpers.hpp"
#include "oracles.hpp"
#include "schrolab/dyadic/counterexample.hpp"
#include "schrolab/experiments/convergence.hpp"
#include "schrolab/experiments/tails.hpp"
#include "schrolab/norms/norms.hpp"
#include "schrolab/parallel.hpp"
#include "schrolab/runner/runner.hpp"
#include "schrolab/spectral/analytic.hpp"
#include "schrolab/spectral/transform.hpp"
#include "schrolab/wiener/estimators.hpp"
#include "schrolab/wiener/series.hpp"

using namespace schrolab;
using spectral::GridFunction;
using spectral::Space;
using spectral::SpectralGrid;
using testing_util::random_band_limited;
using testing_util::rel_l2;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void check(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("failed: ") + what;
  }
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome propagator_oracle() {
  Outcome o;
  const SpectralGrid g(1, 40.0, 1024);
  const auto f = spectral::materialize(spectral::Gaussian{}, g);
  double worst = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const auto u = spectral::propagate(f, t);
    const auto exact =
        GridFunction::sample(g, Space::physical, [&](const Vec& x) { return oracle::gaussian_evolution(x[0], t, 40.0); });
    worst = std::max(worst, rel_l2(u, exact));
  }
  check(o, worst < 1e-8, "relative L2 error");
  o.detail = fmt("max rel L2 error %.2e", worst) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome unitarity_group_law() {
  Outcome o;
  double worst_norm = 0.0, worst_group = 0.0;
  for (int dim = 1; dim <= 2; ++dim) {
    const SpectralGrid g(dim, 8.0 * kPi, dim == 1 ? 512 : 64);
    for (int i = 0; i < 50; ++i) {
      const auto f = spectral::to_physical(random_band_limited(g, 3.0 + 0.1 * i, 1000 * dim + i));
      const double t = 0.05 + 0.02 * i, s = 0.3 - 0.01 * i;
      const auto ut = spectral::propagate(f, t);
      const double n0 = norms::lebesgue_norm(f, 2.0);
      worst_norm = std::max(worst_norm, std::abs(norms::lebesgue_norm(ut, 2.0) - n0) / n0);
      worst_group = std::max(worst_group, rel_l2(spectral::propagate(ut, s), spectral::propagate(f, t + s)));
    }
  }
  check(o, worst_norm < 1e-10, "unitarity");
  check(o, worst_group < 1e-10, "group law");
  o.detail = fmt("norm drift %.1e, group law %.1e over 100 data", worst_norm, worst_group) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome partition_of_unity() {
  Outcome o;
  double worst_sum = 0.0, worst_rec = 0.0;
  const auto p1 = wiener::build_partition(1);
  const SpectralGrid g1(1, 40.0, 4096);
  for (std::size_t i = 0; i < g1.node_count(); ++i)
    worst_sum = std::max(worst_sum, std::abs(p1.translate_sum(g1.frequency(i)) - 1.0));
  const auto p2 = wiener::build_partition(2);
  const SpectralGrid g2(2, 13.0, 128);
  for (std::size_t i = 0; i < g2.node_count(); ++i)
    worst_sum = std::max(worst_sum, std::abs(p2.translate_sum(g2.frequency(i)) - 1.0));

  for (int dim = 1; dim <= 2; ++dim) {
    const SpectralGrid g(dim, 4.0 * kPi, dim == 1 ? 256 : 64);
    const auto& part = dim == 1 ? p1 : p2;
    const auto f = spectral::to_physical(random_band_limited(g, 6.0, 5 + dim));
    const auto active = wiener::default_active_set(f);
    std::vector<Complex> sum(f.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
      const auto piece = wiener::project(f, active.point(k), part);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += piece[i];
    }
    worst_rec = std::max(worst_rec, max_abs_difference(GridFunction(g, sum, Space::physical), f));
  }
  check(o, worst_sum < 1e-12, "partition sum");
  check(o, worst_rec < 1e-10, "reconstruction");
  o.detail = fmt("sum error %.1e, reconstruction %.1e", worst_sum, worst_rec) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome counterexample_scaling() {
  Outcome o;
  const std::vector<int> ks{2, 3, 4, 5, 6};
  const auto grows = dyadic::counterexample_sweep(ks, 0.0, 4.0, 0.5, true);
  double worst_oracle = 0.0, lo_norm = 1e300, hi_norm = 0.0;
  for (const auto& row : grows.rows) {
    lo_norm = std::min(lo_norm, row.norm);
    hi_norm = std::max(hi_norm, row.norm);
    worst_oracle = std::max(worst_oracle, std::abs(row.oracle_value / row.growth_value - 1.0));
  }
  // Independent Simpson quadrature from the test oracles on the two smallest scales.
  for (int k : {2, 3}) {
    const double indep = oracle::annulus_growth(k, 0.0, 4.0, 0.5, 256, 64);
    worst_oracle = std::max(worst_oracle, std::abs(indep / grows.rows[k - 2].growth_value - 1.0));
  }
  const auto flat = dyadic::counterexample_sweep(ks, 0.25, 4.0, 0.5, false);
  check(o, lo_norm >= 0.5 && hi_norm <= 2.0, "norm in [1/2, 2]");
  check(o, std::abs(grows.fit.fitted_slope - 0.25) <= 0.05, "s=0 slope");
  check(o, std::abs(flat.fit.fitted_slope) <= 0.05, "s=1/4 slope");
  check(o, worst_oracle <= 0.02, "quadrature agreement");
  o.detail = fmt("slope s=0 %.4f, s=1/4 %.4f", grows.fit.fitted_slope, flat.fit.fitted_slope) +
             fmt(", norms in [%.4f, %.4f], oracle dev %.2e", lo_norm, hi_norm, worst_oracle) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome convergence_rate() {
  Outcome o;
  const SpectralGrid g(1, 40.0, 1024);
  const auto f = spectral::materialize(spectral::Gaussian{}, g);
  const auto times = norms::TimeGrid::geometric(1e-2, 2, 16, false).times();
  const auto sweep = experiments::convergence_sweep(f, times, norms::FullBox{});
  const double slope = experiments::convergence_rate(sweep, 1e-4, 1e-2).slope;
  check(o, std::abs(slope - 1.0) <= 0.05, "slope");
  o.detail = fmt("log-log slope %.4f", slope) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome khintchine() {
  Outcome o;
  std::mt19937_64 rng(314);
  std::normal_distribution<double> nd;
  double worst_ratio = 0.0, worst_p2 = 0.0;
  for (int v = 0; v < 10; ++v) {
    wiener::CoefficientSeries c;
    const int len = 3 + 7 * v;
    for (int k = 0; k < len; ++k) c.push_back({{k - len / 2, 0, 0}, Complex(nd(rng), nd(rng)) / (1.0 + 0.3 * k)});
    for (double p : {2.0, 4.0, 8.0, 16.0}) {
      const auto est = wiener::khintchine_moment(c, wiener::Law::gaussian, p, 10000, 50 + v);
      const double norm = wiener::l2_norm(c);
      worst_ratio = std::max(worst_ratio, est.value / (std::sqrt(p) * norm));
      if (p == 2.0) worst_p2 = std::max(worst_p2, std::abs(est.value - norm) / est.standard_error);
    }
  }
  check(o, worst_ratio <= 1.2, "moment ratio");
  check(o, worst_p2 <= 3.0, "p=2 identity");
  o.detail = fmt("max ratio %.3f, p=2 deviation %.2f SE", worst_ratio, worst_p2) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome square_function() {
  Outcome o;
  const auto part = wiener::build_partition(1);
  auto constant = [&](std::size_t n, double r, int from, int to) {
    const SpectralGrid g(1, 8.0 * kPi, n);
    double c = 0.0;
    for (int i = from; i < to; ++i) {
      const auto f = random_band_limited(g, 2.0 + 0.5 * i, 700 + i);
      const double sup = testing_util::max_abs(wiener::square_function(f, part));
      c = std::max(c, sup / norms::fourier_lebesgue_norm(f, norms::NormSpec(0.0, r)));
    }
    return c;
  };
  double worst_var = 0.0;
  std::string cs;
  for (double r : {2.0, 4.0}) {
    const double c10 = constant(512, r, 0, 10), c20 = constant(512, r, 0, 20), fine = constant(1024, r, 0, 20);
    const double hi = std::max({c10, c20, fine}), lo = std::min({c10, c20, fine});
    worst_var = std::max(worst_var, (hi - lo) / hi);
    cs += fmt("C(r=%g) = %.4f ", r, c20);
  }
  double worst_mass = 0.0;
  const SpectralGrid g(1, 8.0 * kPi, 512);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_band_limited(g, 2.0 + 0.5 * i, 700 + i);
    const double m0 = std::pow(norms::lebesgue_norm(wiener::square_function(f, part), 2.0), 2);
    for (double t : {0.1, 1.0}) {
      const double mt = std::pow(norms::lebesgue_norm(wiener::square_function(spectral::propagate(f, t), part), 2.0), 2);
      worst_mass = std::max(worst_mass, std::abs(mt - m0) / m0);
    }
  }
  check(o, worst_var < 0.2, "C variation");
  check(o, worst_mass <= 1e-10, "propagated mass");
  o.detail = cs + fmt("variation %.3f, mass drift %.1e", worst_var, worst_mass) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome tail_bounds() {
  Outcome o;
  // (a) exhaustive sign enumeration against Monte Carlo.
  const SpectralGrid small(1, 2.0 * kPi * 4.0, 128);
  const auto fa = random_band_limited(small, 3.0, 41);
  const wiener::RandomizationPlan rplan{wiener::Law::rademacher, 17, wiener::default_active_set(fa),
                                        wiener::ProfileKind::raised_cosine};
  check(o, rplan.active_set.size() <= 12, "active coefficients <= 12");
  const std::vector<Vec> pts{{0.0, 0, 0}, {0.6, 0, 0}, {-1.1, 0, 0}};
  const double ta = 0.05;
  const auto resp = wiener::series_response(fa, wiener::build_partition(1), rplan.active_set, pts,
                                            wiener::propagation_defect_symbol(ta));
  std::vector<std::vector<oracle::cplx>> amps;
  for (std::size_t j = 0; j < pts.size(); ++j) amps.emplace_back(resp.amplitudes(j).begin(), resp.amplitudes(j).end());
  const auto first = experiments::draw_statistics(resp, rplan, 1000);
  const double med = [&] {
    auto s = first;
    std::nth_element(s.begin(), s.begin() + s.size() / 2, s.end());
    return s[s.size() / 2];
  }();
  const auto alphas = experiments::default_alpha_grid(med, 12);
  const auto exact = oracle::rademacher_exceedance(amps, alphas);
  const auto mc = experiments::tail_probability(fa, rplan, ta, alphas, experiments::Probe{pts, true}, 100000);
  double worst_se = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double se = std::sqrt(exact[i] * (1.0 - exact[i]) / 100000.0);
    const double dev = std::abs(mc.per_alpha[i].p_hat - exact[i]);
    if (dev > 0.0) worst_se = std::max(worst_se, se > 0.0 ? dev / se : 1e300);
  }
  check(o, worst_se <= 3.0, "(a) enumeration");

  // (b) alpha^2 decay steepens as t decreases.
  const SpectralGrid g(1, 20.0, 256);
  const auto fb = random_band_limited(g, 4.0, 88);
  const wiener::RandomizationPlan gplan{wiener::Law::gaussian, 23, wiener::default_active_set(fb),
                                        wiener::ProfileKind::raised_cosine};
  const auto probe = experiments::region_probe(g, norms::Ball{{0, 0, 0}, 2.0});
  std::vector<double> slopes;
  for (double t : {1e-2, 5e-3, 2.5e-3}) {
    const auto est = experiments::tail_probability(fb, gplan, t, std::nullopt, probe, 20000);
    check(o, est.fit.valid, "(b) fit valid");
    slopes.push_back(std::abs(est.fit.slope));
  }
  check(o, slopes[0] < slopes[1] && slopes[1] < slopes[2], "(b) monotone slopes");

  // (c) per-draw union bound of the split argument.
  const auto rep = experiments::stochastic_continuity_report(fb, gplan, {1e-2, 1e-3, 1e-4, 0.0}, 2e-3, probe, 20000,
                                                             1e-3, norms::NormSpec(0.0, 2.0));
  std::size_t violations = 0;
  for (const auto& row : rep.rows) violations += row.union_violations;
  check(o, violations == 0, "(c) union bound");
  o.detail = fmt("(a) max dev %.2f SE; (b) |slopes| %.3g, %.3g", worst_se, slopes[0], slopes[1]) +
             fmt(", %.3g; (c) violations %.0f", slopes[2], static_cast<double>(violations)) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const fs::path& config_dir) {
  Outcome o;
  const fs::path work = fs::temp_directory_path() / "schrolab_acceptance_determinism";
  std::size_t kinds = 0, files = 0;
  for (const auto& entry : fs::directory_iterator(config_dir)) {
    if (entry.path().extension() != ".json") continue;
    const auto cfg = runner::parse_config(runner::load_config_file(entry.path()));
    std::string payload[2];
    const std::size_t threads[2] = {1, 4};
    for (int i = 0; i < 2; ++i) {
      set_thread_count(threads[i]);
      const auto report = runner::run(cfg);
      payload[i] = report.results.dump();
      const fs::path dir = work / (cfg.kind + std::to_string(threads[i]));
      fs::remove_all(dir);
      runner::emit(report, runner::Format::csv, dir);
    }
    check(o, payload[0] == payload[1], cfg.kind + " results");
    for (const auto& file : fs::directory_iterator(work / (cfg.kind + "1"))) {
      const auto other = work / (cfg.kind + "4") / file.path().filename();
      check(o, slurp(file.path()) == slurp(other), file.path().filename().string());
      ++files;
    }
    ++kinds;
  }
  fs::remove_all(work);
  check(o, kinds == std::size(runner::kKinds), "one config per kind");
  o.detail = fmt("%.0f kinds, %.0f files identical at 1 and 4 threads", static_cast<double>(kinds),
                 static_cast<double>(files)) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path config_dir = argc > 1 ? fs::path(argv[1]) : fs::path(SCHROLAB_CONFIG_DIR);
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());

  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;  // 0: no runtime bound
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> criteria{
      {1, "propagator oracle", 1.0, propagator_oracle},
      {2, "unitarity and group law", 10.0, unitarity_group_law},
      {3, "partition of unity", 0.0, partition_of_unity},
      {4, "counterexample scaling", 300.0, counterexample_scaling},
      {5, "convergence rate", 30.0, convergence_rate},
      {6, "khintchine moments", 60.0, khintchine},
      {7, "square function", 0.0, square_function},
      {8, "tail bounds", 300.0, tail_bounds},
      {9, "determinism", 0.0, [&] { return determinism(config_dir); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    set_thread_count(hw);
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      out.pass = false;
      out.detail += fmt("; runtime over the %.0f s budget", c.budget_seconds);
    }
    if (!out.pass) ++failures;
    std::printf("criterion %d %s: %s (%.2f s) %s\n", c.id, c.name, out.pass ? "PASS" : "FAIL", secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
