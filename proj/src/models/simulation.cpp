#include "models/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "common/error.hpp"
#include "spectral/calculus.hpp"

namespace vvv::models {

namespace {

ops::ModelParams monitor_params(Model model, ops::ModelParams p) {
  if (model == Model::nse) p.alpha = 0.0;
  return p;
}

}  // namespace

Simulation::Simulation(Model model, VectorField u0, std::optional<VectorField> w0, ops::ModelParams params,
                       SchemeConfig scheme, int threads)
    : model_(model),
      scheme_(scheme),
      tr_(std::make_unique<spectral::Transformer>(u0.grid_ptr(), threads)),
      monitor_(monitor_params(model, params)) {
  scheme_.validate();
  const double u0_norm = diag::sobolev_norm(u0, 0);
  growth_limit_ = 1e6 * std::max(u0_norm, 1.0);

  const auto samples = [&] {
    spectral::PhysicalField out;
    double peak = 0.0;
    for (int i = 0; i < 3; ++i) {
      out = tr_->inverse(u0[i]);
      for (double v : out.values) peak = std::max(peak, std::abs(v));
    }
    return peak;
  }();
  cfl_dt_ = samples > 0.0 ? 0.5 / (u0.grid().n() * samples) : std::numeric_limits<double>::infinity();

  if (model == Model::vvv) {
    vvv_ = make_vvv_state(std::move(u0), std::move(w0), std::move(params));
  } else {
    nse_ = make_nse_state(std::move(u0), std::move(params));
  }
  monitor_.accumulate(u(), w(), t());
}

const ops::ModelParams& Simulation::params() const { return model_ == Model::vvv ? vvv_->params : nse_->params; }

VectorField Simulation::w() const { return model_ == Model::vvv ? vvv_->w : spectral::curl(nse_->u); }

void Simulation::advance() {
  if (model_ == Model::vvv) {
    vvv_ = step_vvv(*tr_, *vvv_, scheme_);
  } else {
    nse_ = step_nse(*tr_, *nse_, scheme_);
  }
  const double norm = diag::sobolev_norm(u(), 0);
  if (norm > growth_limit_)
    throw DivergenceError("||u||_L2 = " + std::to_string(norm) + " exceeds growth limit at step " +
                              std::to_string(step_count()) + " (t=" + std::to_string(t()) + ")",
                          step_count(), t());
  monitor_.accumulate(u(), w(), t());
}

diag::DiagnosticsRecord Simulation::observe() { return monitor_.observe(u(), w(), t()); }

RunResult run(Model model, VectorField u0, std::optional<VectorField> w0, const ops::ModelParams& params,
              const SchemeConfig& cfg, const RunSinks& sinks, int threads) {
  Simulation sim(model, std::move(u0), std::move(w0), params, cfg, threads);
  RunResult result;
  result.model = model;
  const long steps = cfg.step_count();

  auto emit = [&] {
    result.records.push_back(sim.observe());
    if (sinks.diagnostics) sinks.diagnostics(result.records.back());
  };

  emit();
  for (long s = 1; s <= steps; ++s) {
    sim.advance();
    if (s % cfg.diagnostics_every == 0 || s == steps) emit();
    if (sinks.snapshot && cfg.snapshot_every > 0 && s % cfg.snapshot_every == 0 && s != steps) sinks.snapshot(sim);
  }
  if (sinks.snapshot) sinks.snapshot(sim);
  result.u = sim.u();
  result.w = sim.w();
  result.t = sim.t();
  result.steps = sim.step_count();
  return result;
}

}  // namespace vvv::models
