#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "diagnostics/diagnostics.hpp"
#include "models/stepper.hpp"

namespace vvv::models {

/// One time integration of either model, owning its FFT context.
class Simulation {
 public:
  Simulation(Model model, VectorField u0, std::optional<VectorField> w0, ops::ModelParams params,
             SchemeConfig scheme, int threads = 1);

  Model model() const { return model_; }
  const ops::ModelParams& params() const;
  const SchemeConfig& scheme() const { return scheme_; }
  spectral::Transformer& transformer() { return *tr_; }

  double t() const { return model_ == Model::vvv ? vvv_->t : nse_->t; }
  long step_count() const { return model_ == Model::vvv ? vvv_->step : nse_->step; }
  const VectorField& u() const { return model_ == Model::vvv ? vvv_->u : nse_->u; }
  /// Evolved vorticity for VVV, curl u for NSE.
  VectorField w() const;
  const VvvState* vvv() const { return vvv_ ? &*vvv_ : nullptr; }
  const NseState* nse() const { return nse_ ? &*nse_ : nullptr; }

  /// One step. Throws DivergenceError on non-finite values or when ||u||_L2
  /// exceeds 1e6 * max(||u0||_L2, 1).
  void advance();
  /// Diagnostics at the current time. The energy budget is integrated over
  /// every step regardless of how often this is called.
  diag::DiagnosticsRecord observe();

  /// Advisory step bound 0.5 dx / ||u0||_Linf (infinite for u0 = 0).
  double cfl_dt() const { return cfl_dt_; }

 private:
  Model model_;
  SchemeConfig scheme_;
  std::unique_ptr<spectral::Transformer> tr_;
  std::optional<VvvState> vvv_;
  std::optional<NseState> nse_;
  diag::Monitor monitor_;
  double growth_limit_ = 0.0;
  double cfl_dt_ = 0.0;
};

struct RunSinks {
  std::function<void(const diag::DiagnosticsRecord&)> diagnostics;
  std::function<void(const Simulation&)> snapshot;
};

struct RunResult {
  Model model = Model::vvv;
  VectorField u;
  VectorField w;
  double t = 0.0;
  long steps = 0;
  std::vector<diag::DiagnosticsRecord> records;
};

/// Integrate to cfg.t_end, emitting diagnostics every cfg.diagnostics_every
/// steps (plus t = 0 and the final time) and snapshots at the snapshot
/// cadence (plus the final state). w0 is ignored for NSE and defaults to
/// curl u0 for VVV.
RunResult run(Model model, VectorField u0, std::optional<VectorField> w0, const ops::ModelParams& params,
              const SchemeConfig& cfg, const RunSinks& sinks = {}, int threads = 1);

}  // namespace vvv::models
