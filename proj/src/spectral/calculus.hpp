#pragma once

#include "spectral/field.hpp"

namespace vvv::spectral {

enum class Axis : int { x = 0, y = 1, z = 2 };

/// d/dx_axis: multiplication by i 2 pi k_axis.
ScalarField derivative(const ScalarField& f, Axis axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
/// (i 2 pi k) x v(k) per mode.
VectorField curl(const VectorField& v);
/// Multiplication by -4 pi^2 |k|^2.
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

/// Stokes operator A = -Delta P_sigma (Leray projection, then -Delta).
VectorField stokes_apply(const VectorField& v);

}  // namespace vvv::spectral
