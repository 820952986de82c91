#include "schrolab/norms/norms.hpp"

#include <algorithm>
#include <cmath>

#include "schrolab/error.hpp"
#include "schrolab/parallel.hpp"
#include "schrolab/spectral/transform.hpp"

namespace schrolab::norms {

using spectral::Space;

namespace {

// (sum_i w |v_i|^p)^{1/p}, or max_i |v_i| for p = inf. Direct powering per cell.
template <class AbsAt>
double weighted_lp(std::size_t count, double weight, double p, AbsAt abs_at) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) m = std::max(m, abs_at(i));
    return m;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) sum += std::pow(abs_at(i), p);
  return std::pow(sum * weight, 1.0 / p);
}

void require_physical(const GridFunction& f, const char* what) {
  if (f.space() != Space::physical) throw ContractError(std::string(what) + " expects physical-space samples");
}

std::vector<double> trapezoid_weights(const std::vector<double>& t) {
  std::vector<double> w(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double dt = 0.5 * (t[i] - t[i - 1]);
    w[i - 1] += dt;
    w[i] += dt;
  }
  return w;
}

}  // namespace

double fourier_lebesgue_norm(const GridFunction& f, const NormSpec& spec) {
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto& grid = f_hat.grid();
  const double q = spec.conjugate();
  const double s = spec.s();
  return weighted_lp(f_hat.size(), grid.freq_cell_volume(), q, [&](std::size_t i) {
    const double w = s == 0.0 ? 1.0 : std::pow(1.0 + grid.frequency_norm_sq(i), 0.5 * s);
    return w * std::abs(f_hat[i]);
  });
}

double frequency_lebesgue_norm(const GridFunction& f, double q) {
  if (!(q >= 1.0)) throw InputError("Lebesgue exponent must be >= 1");
  const GridFunction f_hat = spectral::to_frequency(f);
  return weighted_lp(f_hat.size(), f_hat.grid().freq_cell_volume(), q,
                     [&](std::size_t i) { return std::abs(f_hat[i]); });
}

double lebesgue_norm(const GridFunction& f, double p, const Region& region) {
  require_physical(f, "lebesgue_norm");
  if (!(p >= 1.0)) throw InputError("Lebesgue exponent must be >= 1");
  const auto nodes = region_nodes(region, f.grid());
  if (nodes.empty()) throw InputError("region " + describe(region) + " contains no grid nodes");
  return weighted_lp(nodes.size(), f.grid().cell_volume(), p, [&](std::size_t i) { return std::abs(f[nodes[i]]); });
}

GridFunction maximal_function(const GridFunction& f, const TimeGrid& times, const Region& region) {
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto& grid = f_hat.grid();
  const auto nodes = region_nodes(region, grid);
  const auto& ts = times.times();

  const std::size_t chunks = std::min(thread_count(), ts.size());
  const std::size_t per_chunk = (ts.size() + chunks - 1) / chunks;
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(nodes.size(), 0.0));

  parallel_for(chunks, [&](std::size_t c) {
    auto& acc = partial[c];
    const std::size_t lo = c * per_chunk;
    const std::size_t hi = std::min(ts.size(), lo + per_chunk);
    for (std::size_t k = lo; k < hi; ++k) {
      const GridFunction u = spectral::propagate(f_hat, ts[k]);
      for (std::size_t j = 0; j < nodes.size(); ++j) acc[j] = std::max(acc[j], std::abs(u[nodes[j]]));
    }
  });

  std::vector<Complex> out(grid.node_count());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    double m = 0.0;
    for (const auto& acc : partial) m = std::max(m, acc[j]);
    out[nodes[j]] = m;
  }
  return GridFunction(grid, std::move(out), Space::physical);
}

SpaceTimeField evolve(const GridFunction& f, const TimeGrid& times) {
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto& ts = times.times();
  std::vector<GridFunction> snaps(ts.size(), GridFunction::zeros(f_hat.grid(), Space::physical));
  parallel_for(ts.size(), [&](std::size_t k) { snaps[k] = spectral::propagate(f_hat, ts[k]); });
  return SpaceTimeField{times, std::move(snaps)};
}

double mixed_norm(const GridFunction& umax, const MixedNormSpec& spec) {
  if (!std::isinf(spec.p_time()))
    throw InputError("mixed_norm on a maximal function needs p_time = inf; pass a SpaceTimeField instead");
  return lebesgue_norm(umax, spec.q_space(), spec.region());
}

double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec) {
  if (u.snapshots.size() != u.times.size()) throw InputError("space-time field has mismatched snapshot count");
  const auto& grid = u.snapshots.front().grid();
  for (const auto& s : u.snapshots) {
    require_physical(s, "mixed_norm");
    if (!(s.grid() == grid)) throw InputError("space-time snapshots live on different grids");
  }
  const auto nodes = region_nodes(spec.region(), grid);
  if (nodes.empty()) throw InputError("region " + describe(spec.region()) + " contains no grid nodes");

  const double p = spec.p_time();
  std::vector<double> inner(nodes.size(), 0.0);
  if (std::isinf(p)) {
    for (const auto& s : u.snapshots)
      for (std::size_t j = 0; j < nodes.size(); ++j) inner[j] = std::max(inner[j], std::abs(s[nodes[j]]));
  } else {
    if (u.times.size() < 2) throw InputError("finite time exponent needs at least two time samples");
    const auto w = trapezoid_weights(u.times.times());
    for (std::size_t k = 0; k < u.snapshots.size(); ++k)
      for (std::size_t j = 0; j < nodes.size(); ++j) inner[j] += w[k] * std::pow(std::abs(u.snapshots[k][nodes[j]]), p);
    for (auto& v : inner) v = std::pow(v, 1.0 / p);
  }
  return weighted_lp(nodes.size(), grid.cell_volume(), spec.q_space(), [&](std::size_t j) { return inner[j]; });
}

LevelSet level_set_measure(const GridFunction& g, double alpha, const Region& region) {
  require_physical(g, "level_set_measure");
  if (!(alpha > 0.0)) throw InputError("level-set threshold must be positive");
  const auto nodes = region_nodes(region, g.grid());
  std::size_t count = 0;
  for (auto i : nodes)
    if (std::abs(g[i]) > alpha) ++count;
  return LevelSet{alpha, static_cast<double>(count) * g.grid().cell_volume()};
}

double inequality_ratio(const GridFunction& f, const MixedNormSpec& lhs, const TimeGrid& times,
                        const NormSpec& rhs) {
  const double denom = fourier_lebesgue_norm(f, rhs);
  if (!(denom > 0.0)) throw DegenerateInputError("Fourier-Lebesgue norm of the data vanishes");
  if (std::isinf(lhs.p_time())) return mixed_norm(maximal_function(f, times, lhs.region()), lhs) / denom;
  return mixed_norm(evolve(f, times), lhs) / denom;
}

}  // namespace schrolab::norms
