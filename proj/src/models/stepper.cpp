#include "models/stepper.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"
#include "spectral/calculus.hpp"

namespace vvv::models {

using spectral::Grid;
using spectral::Transformer;

namespace {

// 3/2 now - 1/2 previous, or now alone on the bootstrap step.
VectorField extrapolate(const VectorField& now, const VectorField* previous) {
  if (previous == nullptr) return now;
  VectorField out = 1.5 * now;
  out.axpy(-0.5, *previous);
  return out;
}

// Solve ((mass + nu dt lam/2) x_new = (mass - nu dt lam/2) x + dt rhs) mode-wise,
// mass = 1 + voigt^2 lam.
VectorField crank_nicolson(const VectorField& x, const VectorField& explicit_rhs, double nu, double dt,
                           double voigt) {
  const Grid& g = x.grid();
  VectorField out(x.grid_ptr());
  const double a2 = voigt * voigt;
  for (std::size_t r = 0; r < g.mode_count(); ++r) {
    const double lam = g.laplace_eigenvalue(r);
    const double mass = 1.0 + a2 * lam;
    const double lhs = mass + 0.5 * nu * dt * lam;
    const double keep = mass - 0.5 * nu * dt * lam;
    for (int i = 0; i < 3; ++i) out[i][r] = (keep * x[i][r] + dt * explicit_rhs[i][r]) / lhs;
  }
  return out;
}

void require_finite(const VectorField& f, const char* name, long step, double t) {
  const double n2 = spectral::weighted_square_norm(f, 0);
  if (!std::isfinite(n2))
    throw DivergenceError(std::string("non-finite ||") + name + "||_L2 at step " + std::to_string(step) +
                              " (t=" + std::to_string(t) + ")",
                          step, t);
}

}  // namespace

void SchemeConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be >= 0");
  if (diagnostics_every < 1) throw ConfigError("diagnostics cadence must be >= 1");
  if (snapshot_every < 0) throw ConfigError("snapshot cadence must be >= 0");
  (void)step_count();
}

long SchemeConfig::step_count() const {
  const double ratio = t_end / dt;
  const long nearest = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(nearest)) <= 1e-8 * std::max(1.0, ratio)) return nearest;
  // Fixed dt keeps the multistep history valid; overshoot by less than one step.
  return static_cast<long>(std::ceil(ratio));
}

VvvState make_vvv_state(VectorField u0, std::optional<VectorField> w0, ops::ModelParams params) {
  params.validate();
  VvvState s;
  s.w = w0 ? std::move(*w0) : spectral::curl(u0);
  spectral::require_same_grid(u0.grid(), s.w.grid(), "initial data");
  ops::require_solenoidal(u0, "initial velocity");
  s.u = std::move(u0);
  s.params = std::move(params);
  return s;
}

NseState make_nse_state(VectorField u0, ops::ModelParams params) {
  params.validate();
  ops::require_solenoidal(u0, "initial velocity");
  NseState s;
  s.u = std::move(u0);
  s.params = std::move(params);
  return s;
}

VvvState step_vvv(Transformer& tr, const VvvState& state, const SchemeConfig& cfg) {
  const double dt = cfg.dt;
  const auto& p = state.params;
  const double t_half = state.t + 0.5 * dt;

  ops::NonlinearTerms now;
  if (cfg.nonlinear) {
    now = ops::vvv_nonlinear(tr, state.u, state.w);
  } else {
    now = {VectorField(state.u.grid_ptr()), VectorField(state.u.grid_ptr())};
  }
  VectorField rhs_u = extrapolate(now.momentum, state.history ? &state.history->momentum : nullptr);
  VectorField rhs_w = extrapolate(now.vorticity, state.history ? &state.history->vorticity : nullptr);
  if (auto f = p.forcing.projected(t_half)) rhs_u += *f;
  if (auto cf = p.forcing.curl(t_half)) rhs_w += *cf;

  VvvState next;
  next.u = ops::leray_project(crank_nicolson(state.u, rhs_u, p.nu, dt, p.alpha));
  next.w = crank_nicolson(state.w, rhs_w, p.nu, dt, 0.0);
  next.t = state.t + dt;
  next.step = state.step + 1;
  next.params = p;
  next.history = std::move(now);
  require_finite(next.u, "u", next.step, next.t);
  require_finite(next.w, "w", next.step, next.t);
  return next;
}

NseState step_nse(Transformer& tr, const NseState& state, const SchemeConfig& cfg) {
  const double dt = cfg.dt;
  const auto& p = state.params;
  VectorField now = cfg.nonlinear ? ops::nse_nonlinear(tr, state.u) : VectorField(state.u.grid_ptr());
  VectorField rhs = extrapolate(now, state.history ? &*state.history : nullptr);
  if (auto f = p.forcing.projected(state.t + 0.5 * dt)) rhs += *f;

  NseState next;
  next.u = ops::leray_project(crank_nicolson(state.u, rhs, p.nu, dt, 0.0));
  next.t = state.t + dt;
  next.step = state.step + 1;
  next.params = p;
  next.history = std::move(now);
  require_finite(next.u, "u", next.step, next.t);
  return next;
}

}  // namespace vvv::models
