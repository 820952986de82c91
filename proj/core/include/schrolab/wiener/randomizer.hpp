#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "schrolab/spectral/grid.hpp"
#include "schrolab/wiener/partition.hpp"

namespace schrolab::wiener {

using spectral::GridFunction;

/// Coefficient law. Both are zero-mean, unit-variance and satisfy the
/// sub-Gaussian moment-generating bound E exp(gamma g) <= exp(c gamma^2)
/// (c = 1/2 for both).
enum class Law { gaussian, rademacher };

std::string_view to_string(Law law) noexcept;
Law law_from_string(std::string_view s);

/// Inclusive box of lattice points [lo, hi] (per axis).
struct ActiveSet {
  LatticePoint lo{0, 0, 0};
  LatticePoint hi{0, 0, 0};
  int dim = 1;

  bool contains(const LatticePoint& k) const noexcept;
  std::size_t size() const noexcept;
  /// Row-major position of k inside the box; k must be contained.
  std::size_t offset(const LatticePoint& k) const noexcept;
  LatticePoint point(std::size_t offset) const noexcept;
};

/// Lattice points within sup-distance 1 of the nodes where
/// |f_hat| > rel_threshold * max|f_hat|. Throws InputError for f = 0.
ActiveSet default_active_set(const GridFunction& f, double rel_threshold = 1e-14);

struct RandomizationPlan {
  Law law = Law::gaussian;
  std::uint64_t seed = 0;
  ActiveSet active_set;
  ProfileKind profile = ProfileKind::raised_cosine;
};

/// g_k(omega) for omega = (seed, draw_index). Pure function; the counter is
/// (draw_index, k) and the Philox key is the seed. Lattice coordinates beyond
/// the first must fit in 16 bits.
double coefficient(Law law, std::uint64_t seed, std::uint64_t draw_index, const LatticePoint& k) noexcept;

/// Coefficients of every point of the active set, indexed by ActiveSet::offset.
std::vector<double> draw_coefficients(const RandomizationPlan& plan, std::uint64_t draw_index);

/// psi(D - k) f. Keeps the input's representation.
/// Throws InputError when k lies beyond the grid's frequency range.
GridFunction project(const GridFunction& f, const LatticePoint& k, const BumpPartition& part);

/// f^omega with f_hat^omega = sum_k g_k psi(xi - k) f_hat, g_k from the plan.
/// Keeps the input's representation.
/// Throws CoverageError if a translate outside the active set touches the
/// numerical support of f_hat.
GridFunction randomize(const GridFunction& f, const RandomizationPlan& plan, std::uint64_t draw_index);

/// Same construction with caller-supplied coefficients (indexed by
/// ActiveSet::offset). Used for forced and enumerated coefficient patterns.
GridFunction randomize_with(const GridFunction& f, const ActiveSet& active, const BumpPartition& part,
                            std::span<const double> coefficients);

}  // namespace schrolab::wiener
