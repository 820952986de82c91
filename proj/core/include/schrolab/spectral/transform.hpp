#pragma once

#include <functional>

#include "schrolab/spectral/grid.hpp"

namespace schrolab::spectral {

/// f_hat(xi) = (2 pi)^{-n/2} * sum_j exp(-i x_j . xi) f(x_j) h^n on the
/// frequency lattice (trapezoid rule on the periodic box).
/// Throws ContractError unless `f` is in physical space.
GridFunction forward_transform(const GridFunction& f);

/// f(x) = (2 pi)^{-n/2} * sum_m exp(i x . xi_m) f_hat(xi_m) dxi^n.
/// Throws ContractError unless `f_hat` is in frequency space.
GridFunction inverse_transform(const GridFunction& f_hat);

/// Converts to the requested representation, transforming only if needed.
GridFunction to_frequency(const GridFunction& f);
GridFunction to_physical(const GridFunction& f);

/// Frequency-side multiplier m(xi). The result keeps the input's representation.
GridFunction apply_multiplier(const GridFunction& f, const std::function<Complex(const Vec&)>& symbol);

/// Free Schrodinger evolution U(t)f: multiplies f_hat by exp(-i t |xi|^2).
/// Accepts either representation and returns physical samples.
/// Throws InputError for non-finite t.
GridFunction propagate(const GridFunction& f, double t);

/// D^alpha f: multiplies f_hat by |xi|^alpha. Result keeps the input's space.
/// Throws InputError for alpha < 0.
GridFunction fractional_derivative(const GridFunction& f, double alpha);

/// Multiplies frequency samples by <xi>^s = (1 + |xi|^2)^{s/2}.
/// Throws ContractError unless `f_hat` is in frequency space.
GridFunction bracket_weight(const GridFunction& f_hat, double s);

}  // namespace schrolab::spectral
