#pragma once

#include <cstdint>

#include "spectral/field.hpp"

namespace vvv::models {

using spectral::GridPtr;
using spectral::VectorField;

/// (sin 2pi x cos 2pi y cos 2pi z, -cos 2pi x sin 2pi y cos 2pi z, 0) * amplitude,
/// represented exactly by 8 modes per component.
VectorField taylor_green(const GridPtr& grid, double amplitude = 1.0);

struct RandomFieldOptions {
  std::uint64_t seed = 0;
  /// Largest |k_j| excited; clamped to the grid cutoff. 0 means the cutoff.
  int mode_cutoff = 0;
  /// Target L2 norm of the result.
  double amplitude = 1.0;
  bool solenoidal = true;
};

/// Smooth random real field with spectrum ~ (1 + |k|^2)^{-2}.
VectorField random_field(const GridPtr& grid, const RandomFieldOptions& opts);

/// base + grad(phi) where phi lives on the |k| = 1 shell and ||grad phi|| = amplitude.
/// The result has div = Delta phi, all of it on the |k| = 1 shell.
VectorField add_divergence_perturbation(const VectorField& base, std::uint64_t seed, double amplitude);

}  // namespace vvv::models
