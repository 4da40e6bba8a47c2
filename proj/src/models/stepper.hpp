#pragma once

#include "models/state.hpp"

namespace vvv::models {

/// One CNAB2 step: Crank-Nicolson on the viscous and Voigt terms,
/// Adams-Bashforth 2 on the nonlinear terms (forward Euler on the first step),
/// forcing evaluated at the half step. The Voigt mass operator enters the
/// Fourier-diagonal solve, so u needs no separate Helmholtz inversion.
///
/// Throws DivergenceError when the result is not finite.
VvvState step_vvv(spectral::Transformer& tr, const VvvState& state, const SchemeConfig& cfg);

/// Same scheme for the rotational-form NSE, alpha = 0 and w = curl u.
NseState step_nse(spectral::Transformer& tr, const NseState& state, const SchemeConfig& cfg);

}  // namespace vvv::models
