#include "schrolab/wiener/randomizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "schrolab/error.hpp"
#include "schrolab/spectral/transform.hpp"
#include "schrolab/wiener/philox.hpp"

namespace schrolab::wiener {

using spectral::Space;

std::string_view to_string(Law law) noexcept { return law == Law::gaussian ? "gaussian" : "rademacher"; }

Law law_from_string(std::string_view s) {
  if (s == "gaussian") return Law::gaussian;
  if (s == "rademacher") return Law::rademacher;
  throw InputError("unknown coefficient law '" + std::string(s) + "'");
}

bool ActiveSet::contains(const LatticePoint& k) const noexcept {
  for (int d = 0; d < dim; ++d) {
    const auto i = static_cast<std::size_t>(d);
    if (k[i] < lo[i] || k[i] > hi[i]) return false;
  }
  return true;
}

std::size_t ActiveSet::size() const noexcept {
  std::size_t n = 1;
  for (int d = 0; d < dim; ++d) {
    const auto i = static_cast<std::size_t>(d);
    n *= static_cast<std::size_t>(std::max(0, hi[i] - lo[i] + 1));
  }
  return n;
}

std::size_t ActiveSet::offset(const LatticePoint& k) const noexcept {
  std::size_t off = 0;
  for (int d = 0; d < dim; ++d) {
    const auto i = static_cast<std::size_t>(d);
    off = off * static_cast<std::size_t>(hi[i] - lo[i] + 1) + static_cast<std::size_t>(k[i] - lo[i]);
  }
  return off;
}

LatticePoint ActiveSet::point(std::size_t off) const noexcept {
  LatticePoint k{0, 0, 0};
  for (int d = dim - 1; d >= 0; --d) {
    const auto i = static_cast<std::size_t>(d);
    const auto extent = static_cast<std::size_t>(hi[i] - lo[i] + 1);
    k[i] = lo[i] + static_cast<int>(off % extent);
    off /= extent;
  }
  return k;
}

ActiveSet default_active_set(const GridFunction& f, double rel_threshold) {
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto& grid = f_hat.grid();
  double peak = 0.0;
  for (const auto& z : f_hat.values()) peak = std::max(peak, std::abs(z));
  if (!(peak > 0.0)) throw InputError("cannot derive an active set for the zero function");

  const double cut = rel_threshold * peak;
  Vec lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
         std::numeric_limits<double>::infinity()};
  Vec hi{-lo[0], -lo[1], -lo[2]};
  for (std::size_t i = 0; i < f_hat.size(); ++i) {
    if (!(std::abs(f_hat[i]) > cut)) continue;
    const Vec xi = grid.frequency(i);
    for (std::size_t d = 0; d < 3; ++d) {
      lo[d] = std::min(lo[d], xi[d]);
      hi[d] = std::max(hi[d], xi[d]);
    }
  }
  ActiveSet set;
  set.dim = grid.dim();
  for (int d = 0; d < grid.dim(); ++d) {
    const auto i = static_cast<std::size_t>(d);
    set.lo[i] = static_cast<int>(std::ceil(lo[i] - 1.0));
    set.hi[i] = static_cast<int>(std::floor(hi[i] + 1.0));
  }
  return set;
}

double coefficient(Law law, std::uint64_t seed, std::uint64_t draw_index, const LatticePoint& k) noexcept {
  const Philox4x32::Counter ctr{
      static_cast<std::uint32_t>(draw_index), static_cast<std::uint32_t>(draw_index >> 32),
      static_cast<std::uint32_t>(k[0]),
      static_cast<std::uint32_t>(static_cast<std::uint16_t>(k[1])) |
          (static_cast<std::uint32_t>(static_cast<std::uint16_t>(k[2])) << 16)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto w = Philox4x32::generate(ctr, key);
  if (law == Law::rademacher) return (w[0] & 1U) ? 1.0 : -1.0;
  // Box-Muller, cosine branch.
  const double u1 = to_open_unit(w[0], w[1]);
  const double u2 = to_open_unit(w[2], w[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> draw_coefficients(const RandomizationPlan& plan, std::uint64_t draw_index) {
  std::vector<double> g(plan.active_set.size());
  for (std::size_t o = 0; o < g.size(); ++o)
    g[o] = coefficient(plan.law, plan.seed, draw_index, plan.active_set.point(o));
  return g;
}

GridFunction project(const GridFunction& f, const LatticePoint& k, const BumpPartition& part) {
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto& grid = f_hat.grid();
  if (part.dim() != grid.dim()) throw InputError("partition and grid dimensions differ");
  const double reach = std::floor(grid.xi_max()) + 1.0;
  for (int d = 0; d < grid.dim(); ++d) {
    if (std::abs(static_cast<double>(k[static_cast<std::size_t>(d)])) > reach)
      throw InputError("lattice point " + std::to_string(k[static_cast<std::size_t>(d)]) +
                       " lies beyond the grid's frequency range");
  }
  std::vector<Complex> v(f_hat.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double w = part.weight(grid.frequency(i), k);
    if (w != 0.0) v[i] = w * f_hat[i];
  }
  GridFunction out(grid, std::move(v), Space::frequency);
  return f.space() == Space::physical ? spectral::inverse_transform(out) : out;
}

GridFunction randomize_with(const GridFunction& f, const ActiveSet& active, const BumpPartition& part,
                            std::span<const double> coefficients) {
  const GridFunction f_hat = spectral::to_frequency(f);
  const auto& grid = f_hat.grid();
  if (part.dim() != grid.dim() || active.dim != grid.dim())
    throw InputError("partition, active set and grid dimensions differ");
  if (coefficients.size() != active.size()) throw InputError("coefficient count does not match the active set");

  double peak = 0.0;
  for (const auto& z : f_hat.values()) peak = std::max(peak, std::abs(z));
  const double cut = 1e-14 * peak;

  std::vector<Complex> v(f_hat.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (f_hat[i] == Complex{}) continue;
    const bool supported = std::abs(f_hat[i]) > cut;
    double mult = 0.0;
    part.for_each_cover(grid.frequency(i), [&](const LatticePoint& k, double w) {
      if (w == 0.0) return;
      if (active.contains(k)) {
        mult += coefficients[active.offset(k)] * w;
      } else if (supported) {
        throw CoverageError("active set misses lattice point (" + std::to_string(k[0]) + ", " +
                            std::to_string(k[1]) + ", " + std::to_string(k[2]) +
                            ") that meets the data's frequency support");
      }
    });
    v[i] = mult * f_hat[i];
  }
  GridFunction out(grid, std::move(v), Space::frequency);
  return f.space() == Space::physical ? spectral::inverse_transform(out) : out;
}

GridFunction randomize(const GridFunction& f, const RandomizationPlan& plan, std::uint64_t draw_index) {
  const auto g = draw_coefficients(plan, draw_index);
  return randomize_with(f, plan.active_set, build_partition(f.grid().dim(), plan.profile), g);
}

}  // namespace schrolab::wiener
