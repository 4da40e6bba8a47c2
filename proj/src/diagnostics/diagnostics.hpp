#pragma once

#include <span>
#include <utility>
#include <vector>

#include "models/state.hpp"

namespace vvv::diag {

using spectral::ScalarField;
using spectral::VectorField;

/// (sum_k (4 pi^2 |k|^2)^s |f_k|^2)^{1/2}, s in 0..4. Throws ConfigError otherwise.
double sobolev_norm(const ScalarField& f, int s);
double sobolev_norm(const VectorField& f, int s);

struct CurlMismatch {
  double l2 = 0.0;
  double h1 = 0.0;
};

/// ||w - curl u|| in L2 and the H1 seminorm.
CurlMismatch curl_mismatch(const VectorField& u, const VectorField& w);
CurlMismatch curl_mismatch(const models::VvvState& state);

/// alpha ||grad u||_L2
double blow_up_indicator(const models::VvvState& state);

/// One sampled instant of the energy balance
///   E(t) + 2 nu int_0^t ||grad u||^2 = E(0) + 2 int_0^t (u, f),
/// with E = alpha^2 ||grad u||^2 + ||u||^2.
struct EnergySample {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;  // ||grad u||^2
  double work = 0.0;         // (u, f(t))
};

EnergySample energy_sample(const VectorField& u, const ops::ModelParams& params, double t);

/// Max over samples of the defect of the energy balance, time integrals by
/// trapezoid rule. Throws ConfigError with fewer than 2 samples.
double energy_budget_residual(std::span<const EnergySample> samples, double nu);
double energy_budget_residual(std::span<const std::pair<double, VectorField>> trajectory,
                              const ops::ModelParams& params);

/// Running trapezoid accumulation of the energy balance.
class EnergyBudget {
 public:
  explicit EnergyBudget(double nu) : nu_(nu) {}
  /// Adds a sample and returns |defect| at its time.
  double add(const EnergySample& s);
  double residual() const { return residual_; }
  double max_residual() const { return max_residual_; }
  bool empty() const { return !have_first_; }

 private:
  double nu_;
  bool have_first_ = false;
  EnergySample first_{};
  EnergySample last_{};
  double dissipated_ = 0.0;  // int ||grad u||^2
  double worked_ = 0.0;      // int (u, f)
  double residual_ = 0.0;
  double max_residual_ = 0.0;
};

/// Least-squares slope of log(value) against t. Samples that are nonpositive or
/// below 1e-12 of the first sample end the fit window. Requires >= 10 samples;
/// throws ConfigError when none positive remain or too few are given.
double divergence_decay_rate(std::span<const double> times, std::span<const double> values);

struct DiagnosticsRecord {
  double t = 0.0;
  double l2_u = 0.0;
  double h1_u = 0.0;
  double l2_w = 0.0;
  double h1_w = 0.0;
  double div_w_l2 = 0.0;
  double curl_mismatch_l2 = 0.0;
  double curl_mismatch_h1 = 0.0;
  double energy_budget_residual = 0.0;
  double blow_up_indicator = 0.0;
  /// Running int_0^t ||grad(w - curl u)||^2.
  double curl_mismatch_h1_time_integral = 0.0;
  bool pressure_reconstructed = false;
};

/// Stateful evaluation of DiagnosticsRecord along a trajectory. The energy
/// budget and the mismatch time integral are trapezoid sums over every time
/// passed to accumulate() or observe().
class Monitor {
 public:
  explicit Monitor(const ops::ModelParams& params) : params_(params), budget_(params.nu) {}

  /// Adds a quadrature node; repeated calls at the same t are ignored.
  void accumulate(const VectorField& u, const VectorField& w, double t);
  /// w is the evolved vorticity (VVV) or curl u (NSE).
  DiagnosticsRecord observe(const VectorField& u, const VectorField& w, double t);
  const EnergyBudget& budget() const { return budget_; }

 private:
  ops::ModelParams params_;
  EnergyBudget budget_;
  bool have_last_ = false;
  double last_t_ = 0.0;
  double last_xi_h1_sq_ = 0.0;
  double xi_integral_ = 0.0;
};

}  // namespace vvv::diag
