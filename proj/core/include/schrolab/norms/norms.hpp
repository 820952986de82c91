#pragma once

#include <vector>

#include "schrolab/norms/specs.hpp"
#include "schrolab/spectral/grid.hpp"

namespace schrolab::norms {

using spectral::GridFunction;

/// || <xi>^s f_hat ||_{L^{r'}} by the lattice trapezoid rule. Physical input
/// is transformed first.
double fourier_lebesgue_norm(const GridFunction& f, const NormSpec& spec);

/// || f_hat ||_{L^q_xi} for any q in [1, inf] (no weight). Used for the
/// Hausdorff-Young and Lebesgue-in-frequency comparisons.
double frequency_lebesgue_norm(const GridFunction& f, double q);

/// Cell-weighted L^p norm over the nodes in `region`; p = inf gives the max.
/// Throws ContractError for frequency-space input and InputError for an
/// empty region or p < 1.
double lebesgue_norm(const GridFunction& f, double p, const Region& region = FullBox{});

/// x -> max_{t in times} |U(t) f(x)| on `region` (zero outside). Physical
/// output. The time sweep runs in parallel with an exact max reduction.
GridFunction maximal_function(const GridFunction& f, const TimeGrid& times, const Region& region = FullBox{});

/// Samples of u(., t) = U(t) f on a time grid.
struct SpaceTimeField {
  TimeGrid times;
  std::vector<GridFunction> snapshots;
};

/// Evolves f to every time of `times`.
SpaceTimeField evolve(const GridFunction& f, const TimeGrid& times);

/// L^q_x L^inf_t norm from a maximal function, restricted to spec.region().
/// Throws InputError if spec.p_time() is finite (use the SpaceTimeField
/// overload) or the region does not fit the grid.
double mixed_norm(const GridFunction& umax, const MixedNormSpec& spec);

/// L^q_x L^p_t norm of a sampled space-time field; the time integral uses
/// trapezoid weights on the (possibly nonuniform) time grid.
double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec);

/// Measure of {x in region : |g(x)| > alpha}. Throws InputError for alpha <= 0.
LevelSet level_set_measure(const GridFunction& g, double alpha, const Region& region = FullBox{});

/// || U(t) f ||_{L^q_x(region) L^inf_t} / || f ||_{FL^{s,r}}.
/// Throws DegenerateInputError when the denominator vanishes.
double inequality_ratio(const GridFunction& f, const MixedNormSpec& lhs, const TimeGrid& times,
                        const NormSpec& rhs);

}  // namespace schrolab::norms
