#include "schrolab/wiener/partition.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "schrolab/error.hpp"

namespace schrolab::wiener {

std::string_view to_string(ProfileKind k) noexcept {
  return k == ProfileKind::raised_cosine ? "raised_cosine" : "bspline2";
}

ProfileKind profile_from_string(std::string_view s) {
  if (s == "raised_cosine") return ProfileKind::raised_cosine;
  if (s == "bspline2") return ProfileKind::bspline2;
  throw InputError("unknown partition profile '" + std::string(s) + "'");
}

BumpPartition::BumpPartition(int dim, ProfileKind kind) : dim_(dim), kind_(kind) {
  if (dim < 1 || dim > 3) throw InputError("partition dimension must be 1, 2 or 3, got " + std::to_string(dim));
}

double BumpPartition::profile(double x) const noexcept {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  if (kind_ == ProfileKind::bspline2) return 1.0 - ax;
  const double c = std::cos(0.5 * std::numbers::pi * ax);
  return c * c;
}

double BumpPartition::operator()(const Vec& xi) const noexcept {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= profile(xi[static_cast<std::size_t>(d)]);
  return v;
}

double BumpPartition::weight(const Vec& xi, const LatticePoint& k) const noexcept {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) {
    const auto i = static_cast<std::size_t>(d);
    v *= profile(xi[i] - static_cast<double>(k[i]));
  }
  return v;
}

void BumpPartition::for_each_cover(const Vec& xi,
                                   const std::function<void(const LatticePoint&, double)>& visit) const {
  std::array<int, 3> base{0, 0, 0};
  std::array<std::array<double, 2>, 3> w{};
  for (int d = 0; d < dim_; ++d) {
    const auto i = static_cast<std::size_t>(d);
    const double fl = std::floor(xi[i]);
    base[i] = static_cast<int>(fl);
    // For a partition of unity the two weights are eta(u) and eta(u - 1),
    // u = xi - floor(xi) in [0, 1).
    const double u = xi[i] - fl;
    w[i][0] = profile(u);
    w[i][1] = profile(u - 1.0);
  }
  const int corners = 1 << dim_;
  for (int c = 0; c < corners; ++c) {
    LatticePoint k{0, 0, 0};
    double v = 1.0;
    for (int d = 0; d < dim_; ++d) {
      const auto i = static_cast<std::size_t>(d);
      const int bit = (c >> d) & 1;
      k[i] = base[i] + bit;
      v *= w[i][static_cast<std::size_t>(bit)];
    }
    visit(k, v);
  }
}

double BumpPartition::translate_sum(const Vec& xi) const {
  double s = 0.0;
  for_each_cover(xi, [&](const LatticePoint&, double v) { s += v; });
  return s;
}

BumpPartition build_partition(int dim, ProfileKind kind) { return BumpPartition(dim, kind); }

}  // namespace schrolab::wiener
