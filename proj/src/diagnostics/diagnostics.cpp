#include "diagnostics/diagnostics.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"
#include "spectral/calculus.hpp"

namespace vvv::diag {

namespace {

void check_order(int s) {
  if (s < 0 || s > 4) throw ConfigError("sobolev_norm: unsupported order s=" + std::to_string(s));
}

}  // namespace

double sobolev_norm(const ScalarField& f, int s) {
  check_order(s);
  return std::sqrt(spectral::weighted_square_norm(f, s));
}

double sobolev_norm(const VectorField& f, int s) {
  check_order(s);
  return std::sqrt(spectral::weighted_square_norm(f, s));
}

CurlMismatch curl_mismatch(const VectorField& u, const VectorField& w) {
  const VectorField xi = w - spectral::curl(u);
  return {sobolev_norm(xi, 0), sobolev_norm(xi, 1)};
}

CurlMismatch curl_mismatch(const models::VvvState& state) { return curl_mismatch(state.u, state.w); }

double blow_up_indicator(const models::VvvState& state) {
  return state.params.alpha * sobolev_norm(state.u, 1);
}

EnergySample energy_sample(const VectorField& u, const ops::ModelParams& params, double t) {
  EnergySample s;
  s.t = t;
  s.dissipation = spectral::weighted_square_norm(u, 1);
  s.energy = params.alpha * params.alpha * s.dissipation + spectral::weighted_square_norm(u, 0);
  if (auto f = params.forcing.projected(t)) s.work = spectral::inner(u, *f);
  return s;
}

double EnergyBudget::add(const EnergySample& s) {
  if (!have_first_) {
    have_first_ = true;
    first_ = last_ = s;
    residual_ = 0.0;
    return residual_;
  }
  const double h = s.t - last_.t;
  dissipated_ += 0.5 * h * (s.dissipation + last_.dissipation);
  worked_ += 0.5 * h * (s.work + last_.work);
  last_ = s;
  residual_ = std::abs(s.energy - first_.energy + 2.0 * nu_ * dissipated_ - 2.0 * worked_);
  max_residual_ = std::max(max_residual_, residual_);
  return residual_;
}

double energy_budget_residual(std::span<const EnergySample> samples, double nu) {
  if (samples.size() < 2) throw ConfigError("energy_budget_residual: need at least 2 samples");
  EnergyBudget budget(nu);
  for (const auto& s : samples) budget.add(s);
  return budget.max_residual();
}

double energy_budget_residual(std::span<const std::pair<double, VectorField>> trajectory,
                              const ops::ModelParams& params) {
  std::vector<EnergySample> samples;
  samples.reserve(trajectory.size());
  for (const auto& [t, u] : trajectory) samples.push_back(energy_sample(u, params, t));
  return energy_budget_residual(samples, params.nu);
}

double divergence_decay_rate(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw ConfigError("divergence_decay_rate: length mismatch");
  if (values.size() < 10) throw ConfigError("divergence_decay_rate: need at least 10 samples");
  std::size_t window = 0;
  const double floor = values[0] > 0.0 ? 1e-12 * values[0] : 0.0;
  while (window < values.size() && values[window] > 0.0 && values[window] >= floor) ++window;
  if (window == 0) throw ConfigError("divergence_decay_rate: no positive samples to fit");
  if (window == 1) return 0.0;
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < window; ++i) {
    const double y = std::log(values[i]);
    st += times[i];
    sy += y;
    stt += times[i] * times[i];
    sty += times[i] * y;
  }
  const double n = static_cast<double>(window);
  const double denom = n * stt - st * st;
  if (denom == 0.0) throw ConfigError("divergence_decay_rate: degenerate sample times");
  return (n * sty - st * sy) / denom;
}

void Monitor::accumulate(const VectorField& u, const VectorField& w, double t) {
  if (have_last_ && t == last_t_) return;
  budget_.add(energy_sample(u, params_, t));
  const double h1 = curl_mismatch(u, w).h1;
  const double xi_sq = h1 * h1;
  if (have_last_) xi_integral_ += 0.5 * (t - last_t_) * (xi_sq + last_xi_h1_sq_);
  have_last_ = true;
  last_t_ = t;
  last_xi_h1_sq_ = xi_sq;
}

DiagnosticsRecord Monitor::observe(const VectorField& u, const VectorField& w, double t) {
  accumulate(u, w, t);
  DiagnosticsRecord rec;
  rec.t = t;
  rec.l2_u = sobolev_norm(u, 0);
  rec.h1_u = sobolev_norm(u, 1);
  rec.l2_w = sobolev_norm(w, 0);
  rec.h1_w = sobolev_norm(w, 1);
  rec.div_w_l2 = sobolev_norm(spectral::divergence(w), 0);
  const CurlMismatch xi = curl_mismatch(u, w);
  rec.curl_mismatch_l2 = xi.l2;
  rec.curl_mismatch_h1 = xi.h1;
  rec.blow_up_indicator = params_.alpha * rec.h1_u;
  rec.energy_budget_residual = budget_.residual();
  rec.curl_mismatch_h1_time_integral = xi_integral_;
  return rec;
}

}  // namespace vvv::diag
