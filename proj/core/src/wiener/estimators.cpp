#include "schrolab/wiener/estimators.hpp"

#include <cmath>

#include "schrolab/error.hpp"
#include "schrolab/parallel.hpp"
#include "schrolab/spectral/transform.hpp"

namespace schrolab::wiener {

namespace {
// Fixed block size keeps floating-point summation order independent of the
// thread count.
constexpr std::size_t kBlock = 512;
}  // namespace

GridFunction square_function(const GridFunction& f, const BumpPartition& part) {
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto& grid = f_hat.grid();
  double peak = 0.0;
  for (const auto& z : f_hat.values()) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return GridFunction::zeros(grid, spectral::Space::physical);

  const ActiveSet active = default_active_set(f_hat, 0.0);
  const std::size_t kcount = active.size();
  constexpr std::size_t per_block = 8;
  const std::size_t blocks = (kcount + per_block - 1) / per_block;
  std::vector<std::vector<double>> partial(blocks);

  parallel_for(blocks, [&](std::size_t b) {
    std::vector<double> acc(grid.node_count(), 0.0);
    const std::size_t hi = std::min(kcount, (b + 1) * per_block);
    for (std::size_t o = b * per_block; o < hi; ++o) {
      const GridFunction piece = project(f_hat, active.point(o), part);
      bool any = false;
      for (const auto& z : piece.values())
        if (z != Complex{}) {
          any = true;
          break;
        }
      if (!any) continue;
      const GridFunction phys = spectral::inverse_transform(piece);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(phys[i]);
    }
    partial[b] = std::move(acc);
  });

  std::vector<Complex> out(grid.node_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (const auto& acc : partial) s += acc[i];
    out[i] = std::sqrt(s);
  }
  return GridFunction(grid, std::move(out), spectral::Space::physical);
}

double l2_norm(const CoefficientSeries& c) noexcept {
  double s = 0.0;
  for (const auto& [k, v] : c) s += std::norm(v);
  return std::sqrt(s);
}

MomentEstimate khintchine_moment(const CoefficientSeries& c, Law law, double p, std::size_t num_draws,
                                 std::uint64_t seed) {
  if (c.empty()) throw InputError("khintchine_moment needs a nonempty coefficient series");
  if (!(p >= 2.0) || !std::isfinite(p)) throw InputError("moment order must be finite and >= 2");
  if (num_draws < 1000) throw InputError("khintchine_moment needs at least 1000 draws");

  const std::size_t blocks = (num_draws + kBlock - 1) / kBlock;
  std::vector<double> sum(blocks, 0.0), sum_sq(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t hi = std::min(num_draws, (b + 1) * kBlock);
    double s = 0.0, s2 = 0.0;
    for (std::size_t d = b * kBlock; d < hi; ++d) {
      Complex acc{0.0, 0.0};
      for (const auto& [k, v] : c) acc += coefficient(law, seed, d, k) * v;
      const double y = std::pow(std::abs(acc), p);
      s += y;
      s2 += y * y;
    }
    sum[b] = s;
    sum_sq[b] = s2;
  });

  double s = 0.0, s2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    s += sum[b];
    s2 += sum_sq[b];
  }
  const auto n = static_cast<double>(num_draws);
  const double mean = s / n;
  const double var = std::max(0.0, (s2 / n - mean * mean) * n / (n - 1.0));
  MomentEstimate est;
  est.mean_power = mean;
  est.value = std::pow(mean, 1.0 / p);
  // d/dm m^{1/p} = m^{1/p - 1} / p
  est.standard_error = mean > 0.0 ? est.value / (p * mean) * std::sqrt(var / n) : 0.0;
  est.draws = num_draws;
  return est;
}

}  // namespace schrolab::wiener
