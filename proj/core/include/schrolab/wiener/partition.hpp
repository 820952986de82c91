#pragma once

#include <functional>
#include <string_view>

#include "schrolab/spectral/grid.hpp"

namespace schrolab::wiener {

/// 1D profile eta with supp eta in [-1, 1] and sum_k eta(x - k) = 1.
///  - raised_cosine: cos^2(pi x / 2)
///  - bspline2: the order-2 (piecewise linear) B-spline 1 - |x|
enum class ProfileKind { raised_cosine, bspline2 };

std::string_view to_string(ProfileKind k) noexcept;
ProfileKind profile_from_string(std::string_view s);

/// Unit-lattice partition of unity psi(xi) = prod_i eta(xi_i). Translates
/// psi(. - k), k in Z^n, sum to one; psi is supported in the cube [-1, 1]^n.
class BumpPartition {
 public:
  BumpPartition(int dim, ProfileKind kind);

  int dim() const noexcept { return dim_; }
  ProfileKind kind() const noexcept { return kind_; }

  double profile(double x) const noexcept;
  double operator()(const Vec& xi) const noexcept;
  /// psi(xi - k).
  double weight(const Vec& xi, const LatticePoint& k) const noexcept;

  /// Calls visit(k, psi(xi - k)) for the 2^n lattice points whose translate
  /// can be nonzero at xi (floor(xi_i) and floor(xi_i) + 1 per axis). Every
  /// other translate vanishes at xi.
  void for_each_cover(const Vec& xi, const std::function<void(const LatticePoint&, double)>& visit) const;

  /// sum_k psi(xi - k), evaluated through for_each_cover.
  double translate_sum(const Vec& xi) const;

 private:
  int dim_;
  ProfileKind kind_;
};

/// Throws InputError unless dim is 1, 2 or 3.
BumpPartition build_partition(int dim, ProfileKind kind = ProfileKind::raised_cosine);

}  // namespace schrolab::wiener
