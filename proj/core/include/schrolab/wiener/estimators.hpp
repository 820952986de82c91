#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "schrolab/spectral/grid.hpp"
#include "schrolab/wiener/partition.hpp"
#include "schrolab/wiener/randomizer.hpp"

namespace schrolab::wiener {

/// x -> (sum_k |psi(D - k) f(x)|^2)^{1/2}, summed over every k whose translate
/// meets the frequency support of f. Physical output.
GridFunction square_function(const GridFunction& f, const BumpPartition& part);

/// Monte Carlo estimate of || sum_k g_k c_k ||_{L^p_omega}.
struct MomentEstimate {
  double value = 0.0;         ///< (mean |S|^p)^{1/p}
  double standard_error = 0.0;  ///< delta-method error of `value`
  double mean_power = 0.0;    ///< mean |S|^p
  std::size_t draws = 0;
};

using CoefficientSeries = std::vector<std::pair<LatticePoint, Complex>>;

/// Draw d uses coefficients coefficient(law, seed, d, k). Throws InputError for
/// an empty series, p < 2 or fewer than 1000 draws.
MomentEstimate khintchine_moment(const CoefficientSeries& c, Law law, double p, std::size_t num_draws,
                                 std::uint64_t seed);

/// ||c||_{l^2}.
double l2_norm(const CoefficientSeries& c) noexcept;

}  // namespace schrolab::wiener
