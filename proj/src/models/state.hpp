#pragma once

#include <optional>

#include "operators/operators.hpp"

namespace vvv::models {

using spectral::VectorField;

enum class Model { vvv, nse };

struct SchemeConfig {
  double dt = 1e-3;
  double t_end = 0.0;
  /// Diagnostics are evaluated every this many steps (and always at t=0 and t_end).
  long diagnostics_every = 1;
  /// Snapshots every this many steps; 0 writes only the final state.
  long snapshot_every = 0;
  /// false drops the explicit nonlinear terms (Stokes limit).
  bool nonlinear = true;

  void validate() const;
  /// Number of steps to reach t_end. When dt does not divide t_end the run
  /// stops at the first step time past it.
  long step_count() const;
};

/// Coupled (u, w) of the velocity-vorticity-Voigt system. w is evolved
/// independently and need not be solenoidal.
struct VvvState {
  VectorField u;
  VectorField w;
  double t = 0.0;
  long step = 0;
  ops::ModelParams params;
  /// Nonlinear terms of the previous step (Adams-Bashforth history).
  std::optional<ops::NonlinearTerms> history;
};

/// Navier-Stokes velocity; vorticity is curl u on demand.
struct NseState {
  VectorField u;
  double t = 0.0;
  long step = 0;
  ops::ModelParams params;
  std::optional<VectorField> history;
};

VvvState make_vvv_state(VectorField u0, std::optional<VectorField> w0, ops::ModelParams params);
NseState make_nse_state(VectorField u0, ops::ModelParams params);

}  // namespace vvv::models
