#include "schrolab/wiener/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "schrolab/error.hpp"
#include "schrolab/parallel.hpp"
#include "schrolab/spectral/transform.hpp"

namespace schrolab::wiener {

SeriesResponse::SeriesResponse(ActiveSet active, std::size_t probe_count, std::vector<Complex> amplitudes)
    : active_(active), probes_(probe_count), amps_(std::move(amplitudes)) {
  if (amps_.size() != probes_ * active_.size()) throw InputError("series response has inconsistent size");
}

std::span<const Complex> SeriesResponse::amplitudes(std::size_t probe) const noexcept {
  const std::size_t k = active_.size();
  return {amps_.data() + probe * k, k};
}

Complex SeriesResponse::evaluate(std::size_t probe, std::span<const double> coefficients) const noexcept {
  const auto a = amplitudes(probe);
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) sum += coefficients[i] * a[i];
  return sum;
}

double SeriesResponse::sup_abs(std::span<const double> coefficients) const noexcept {
  double m = 0.0;
  for (std::size_t j = 0; j < probes_; ++j) m = std::max(m, std::abs(evaluate(j, coefficients)));
  return m;
}

SeriesResponse series_response(const spectral::GridFunction& f, const BumpPartition& part, const ActiveSet& active,
                               std::span<const Vec> probes, const Symbol& symbol, double support_floor) {
  const auto f_hat = spectral::to_frequency(f);
  const auto& grid = f_hat.grid();
  if (part.dim() != grid.dim() || active.dim != grid.dim())
    throw InputError("partition, active set and grid dimensions differ");
  if (probes.empty()) throw InputError("series response needs at least one probe point");

  double peak = 0.0;
  for (const auto& z : f_hat.values()) peak = std::max(peak, std::abs(z));
  const double cut = std::max(1e-14 * peak, support_floor);

  // Frequency-side contributions m(xi) psi(xi - k) f_hat(xi), grouped by k.
  struct Term {
    std::size_t k_offset;
    Vec xi;
    Complex value;
  };
  std::vector<Term> terms;
  for (std::size_t i = 0; i < f_hat.size(); ++i) {
    if (f_hat[i] == Complex{}) continue;
    const Vec xi = grid.frequency(i);
    const bool supported = std::abs(f_hat[i]) > cut;
    const Complex mf = symbol(xi) * f_hat[i];
    part.for_each_cover(xi, [&](const LatticePoint& k, double w) {
      if (w == 0.0) return;
      if (active.contains(k)) {
        terms.push_back(Term{active.offset(k), xi, w * mf});
      } else if (supported) {
        throw CoverageError("active set misses lattice point (" + std::to_string(k[0]) + ", " +
                            std::to_string(k[1]) + ", " + std::to_string(k[2]) +
                            ") that meets the data's frequency support");
      }
    });
  }

  const double scale = std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim()) * grid.freq_cell_volume();
  const std::size_t kcount = active.size();
  std::vector<Complex> amps(probes.size() * kcount);
  parallel_for(probes.size(), [&](std::size_t j) {
    const Vec& x = probes[j];
    Complex* row = amps.data() + j * kcount;
    for (const auto& t : terms) {
      const double phase = x[0] * t.xi[0] + x[1] * t.xi[1] + x[2] * t.xi[2];
      row[t.k_offset] += std::polar(scale, phase) * t.value;
    }
  });
  return SeriesResponse(active, probes.size(), std::move(amps));
}

Symbol propagation_defect_symbol(double t) {
  return [t](const Vec& xi) {
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    // exp(-i t r2) - 1 = -2 i sin(t r2 / 2) exp(-i t r2 / 2), which avoids
    // cancellation for small t r2.
    const double half = 0.5 * t * r2;
    return Complex(0.0, -2.0 * std::sin(half)) * std::polar(1.0, -half);
  };
}

Symbol propagation_symbol(double t) {
  return [t](const Vec& xi) { return std::polar(1.0, -t * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2])); };
}

Symbol identity_symbol() {
  return [](const Vec&) { return Complex(1.0, 0.0); };
}

}  // namespace schrolab::wiener
