#include "experiments/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "common/error.hpp"
#include "spectral/calculus.hpp"

namespace vvv::experiments {

using models::Model;
using models::Simulation;

namespace {

constexpr const char* kStrongSolutionAssumption =
    "assumption: the NSE reference stays a strong solution on [0, T] (not provable at this scale)";

// Runs fn(i) for i in [0, count) on up to `threads` workers; results are
// gathered by index so the outcome is independent of scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(count);
  const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i] = fn(i);
  } else {
    std::mutex m;
    std::size_t next = 0;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard lock(m);
            if (next >= count || failure) return;
            i = next++;
          }
          try {
            T value = fn(i);
            std::lock_guard lock(m);
            slots[i] = std::move(value);
          } catch (...) {
            std::lock_guard lock(m);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double l2(const VectorField& v) { return std::sqrt(spectral::weighted_square_norm(v, 0)); }

void finish(ConvergenceReport& r) {
  const std::size_t nn = r.norms.size();
  r.fits.assign(nn, {});
  r.status.assign(nn, FitStatus::indeterminate);
  r.monotone.assign(nn, true);
  for (std::size_t j = 0; j < nn; ++j) {
    const auto& e = r.errors[j];
    const bool at_floor = std::all_of(e.begin(), e.end(), [](double x) { return x < kRoundOffFloor; });
    // Ordered from largest to smallest value: error may not grow beyond 10%.
    std::vector<std::size_t> idx(r.values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return r.values[a] > r.values[b]; });
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (e[idx[i]] > 1.1 * e[idx[i - 1]]) r.monotone[j] = false;
    if (at_floor) {
      r.notes.push_back(r.norms[j] + ": at round-off floor, order indeterminate");
      continue;
    }
    if (std::any_of(e.begin(), e.end(), [](double x) { return !(x > 0.0); })) {
      r.status[j] = FitStatus::fail;
      r.notes.push_back(r.norms[j] + ": nonpositive error entry, no fit");
      continue;
    }
    r.fits[j] = fit_order(r.values, e);
    const double q = r.fits[j].order;
    r.status[j] = (std::isfinite(q) && q >= r.min_order && q <= r.max_order) ? FitStatus::pass : FitStatus::fail;
  }
}

void validate_alpha_values(std::span<const double> values) {
  for (double a : values)
    if (!(a > 0.0) || a > 1.0)
      throw ConfigError("alpha sweep values must lie in (0, 1] (got " + std::to_string(a) +
                        "); alpha = 0 is covered by the reduction check");
}

void require_curl_initial_vorticity(const Scenario& s) {
  if (!s.w0) return;
  const double mismatch = l2(*s.w0 - spectral::curl(s.u0));
  if (mismatch > 1e-12 * std::max(1.0, l2(*s.w0)))
    throw ConfigError("alpha sweeps require w0 = curl u0 (mismatch " + std::to_string(mismatch) + ")");
}

}  // namespace

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::dt: return "dt";
    case SweepVariable::n: return "n";
  }
  return "?";
}

const char* to_string(ReferencePolicy r) {
  switch (r) {
    case ReferencePolicy::analytic: return "analytic";
    case ReferencePolicy::finest_member: return "finest-member";
    case ReferencePolicy::nse: return "nse";
  }
  return "?";
}

const char* to_string(FitStatus s) {
  switch (s) {
    case FitStatus::pass: return "pass";
    case FitStatus::fail: return "fail";
    case FitStatus::indeterminate: return "indeterminate";
  }
  return "?";
}

void SweepPlan::validate() const {
  if (values.size() < 3) throw ConfigError("sweep needs at least 3 values (got " + std::to_string(values.size()) + ")");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("sweep values must be positive");
  const bool decreasing = std::is_sorted(values.begin(), values.end(), std::greater_equal<>());
  const bool increasing = std::is_sorted(values.begin(), values.end(), std::less_equal<>());
  bool strict = true;
  for (std::size_t i = 1; i < values.size(); ++i) strict = strict && values[i] != values[i - 1];
  if (!strict || !(decreasing || increasing)) throw ConfigError("sweep values must be strictly monotone");
  if (variable == SweepVariable::alpha && reference == ReferencePolicy::finest_member)
    throw ConfigError("alpha sweeps cannot use the finest-member reference");
  if (variable != SweepVariable::alpha && reference == ReferencePolicy::nse)
    throw ConfigError("the NSE reference is only defined for alpha sweeps");
  if (!(min_order <= max_order)) throw ConfigError("empty order window");
}

FitResult fit_order(std::span<const double> h, std::span<const double> error) {
  if (h.size() != error.size()) throw ConfigError("fit_order: length mismatch");
  if (h.size() < 3) throw ConfigError("fit_order: need at least 3 pairs");
  const std::size_t n = h.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(h[i] > 0.0) || !(error[i] > 0.0)) throw ConfigError("fit_order: entries must be positive");
    x[i] = std::log(h[i]);
    y[i] = std::log(error[i]);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("fit_order: all h values are equal");
  FitResult out;
  out.order = sxy / sxx;
  const double intercept = my - out.order * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = y[i] - (intercept + out.order * x[i]);
    ss += d * d;
  }
  out.residual = std::sqrt(ss / n);
  return out;
}

bool ConvergenceReport::passed() const {
  return !status.empty() && std::all_of(status.begin(), status.end(), [](FitStatus s) { return s == FitStatus::pass; });
}

void ConvergenceReport::write_csv(std::ostream& os) const {
  os << std::setprecision(17);
  os << variable;
  for (const auto& n : norms) os << ',' << n;
  os << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << values[i];
    for (const auto& col : errors) os << ',' << col[i];
    os << '\n';
  }
}

void ConvergenceReport::write_summary(std::ostream& os) const {
  os << std::setprecision(6);
  os << "# " << title << '\n';
  os << "# variable: " << variable << ", members: " << values.size() << '\n';
  os << "# order window: [" << min_order << ", " << max_order << "]\n";
  for (const auto& n : notes) os << "# " << n << '\n';
  for (std::size_t j = 0; j < norms.size(); ++j) {
    os << "# " << norms[j] << ": order " << fits[j].order << ", fit residual "
       << fits[j].residual << ", " << to_string(status[j]) << (monotone[j] ? "" : " (non-monotone)") << '\n';
  }
  os << "# overall: " << (passed() ? "PASS" : "FAIL") << '\n';
}

ConvergenceReport sweep_alpha_curl_mismatch(const SweepPlan& plan) {
  plan.validate();
  if (plan.variable != SweepVariable::alpha) throw ConfigError("curl-mismatch sweep requires variable = alpha");
  if (plan.reference != ReferencePolicy::analytic)
    throw ConfigError("curl-mismatch sweep measures w against curl u; reference must be analytic");
  validate_alpha_values(plan.values);
  require_curl_initial_vorticity(plan.base);

  struct Member {
    double max_l2 = 0.0;
    double time_h1 = 0.0;
  };
  const auto members = parallel_map<Member>(plan.values.size(), plan.parallel, [&](std::size_t i) {
    ops::ModelParams p = plan.base.params;
    p.alpha = plan.values[i];
    models::SchemeConfig cfg = plan.base.scheme;
    cfg.diagnostics_every = 1;
    Member m;
    try {
      Simulation sim(Model::vvv, plan.base.u0, plan.base.w0, p, cfg, plan.base.threads);
      diag::DiagnosticsRecord rec = sim.observe();
      m.max_l2 = rec.curl_mismatch_l2;
      const long steps = cfg.step_count();
      for (long s = 0; s < steps; ++s) {
        sim.advance();
        rec = sim.observe();
        m.max_l2 = std::max(m.max_l2, rec.curl_mismatch_l2);
      }
      m.time_h1 = std::sqrt(rec.curl_mismatch_h1_time_integral);
    } catch (const DivergenceError& e) {
      throw DivergenceError("alpha=" + std::to_string(plan.values[i]) + ": " + e.what(), e.step(), e.time());
    }
    return m;
  });

  ConvergenceReport r;
  r.title = "curl mismatch |w - curl u| versus alpha";
  r.variable = "alpha";
  r.values = plan.values;
  r.norms = {"max_t_l2_curl_mismatch", "l2_time_h1_curl_mismatch"};
  r.errors.assign(2, {});
  for (const auto& m : members) {
    r.errors[0].push_back(m.max_l2);
    r.errors[1].push_back(m.time_h1);
  }
  r.min_order = plan.min_order;
  r.max_order = plan.max_order;
  r.notes.push_back("n=" + std::to_string(plan.base.u0.grid().n()) + ", dt=" + std::to_string(plan.base.scheme.dt) +
                    ", T=" + std::to_string(plan.base.scheme.t_end));
  finish(r);
  return r;
}

ConvergenceReport sweep_alpha_nse_deviation(const SweepPlan& plan) {
  plan.validate();
  if (plan.variable != SweepVariable::alpha) throw ConfigError("NSE-deviation sweep requires variable = alpha");
  if (plan.reference != ReferencePolicy::nse) throw ConfigError("NSE-deviation sweep requires reference = nse");
  validate_alpha_values(plan.values);
  require_curl_initial_vorticity(plan.base);

  struct Member {
    double max_u = 0.0;
    double max_vort = 0.0;
  };
  const auto members = parallel_map<Member>(plan.values.size(), plan.parallel, [&](std::size_t i) {
    ops::ModelParams p = plan.base.params;
    p.alpha = plan.values[i];
    Member m;
    try {
      Simulation vvv(Model::vvv, plan.base.u0, plan.base.w0, p, plan.base.scheme, plan.base.threads);
      Simulation nse(Model::nse, plan.base.u0, std::nullopt, plan.base.params, plan.base.scheme, plan.base.threads);
      const long steps = plan.base.scheme.step_count();
      for (long s = 0; s < steps; ++s) {
        vvv.advance();
        nse.advance();
        const VectorField du = vvv.u() - nse.u();
        m.max_u = std::max(m.max_u, l2(du));
        m.max_vort = std::max(m.max_vort, l2(spectral::curl(du)));
      }
    } catch (const DivergenceError& e) {
      throw DivergenceError("alpha=" + std::to_string(plan.values[i]) + ": " + e.what(), e.step(), e.time());
    }
    return m;
  });

  ConvergenceReport r;
  r.title = "deviation from the Navier-Stokes reference versus alpha";
  r.variable = "alpha";
  r.values = plan.values;
  r.norms = {"max_t_l2_velocity", "max_t_l2_vorticity"};
  r.errors.assign(2, {});
  for (const auto& m : members) {
    r.errors[0].push_back(m.max_u);
    r.errors[1].push_back(m.max_vort);
  }
  r.min_order = plan.min_order;
  r.max_order = plan.max_order;
  r.notes.push_back(kStrongSolutionAssumption);
  r.notes.push_back("n=" + std::to_string(plan.base.u0.grid().n()) + ", dt=" + std::to_string(plan.base.scheme.dt) +
                    ", T=" + std::to_string(plan.base.scheme.t_end));
  finish(r);
  return r;
}

ConvergenceReport dt_refinement_energy(const Scenario& scenario, std::span<const double> dts, double min_order,
                                       double max_order, int parallel) {
  if (dts.size() < 3) throw ConfigError("dt refinement needs at least 3 time steps");
  SweepPlan check;
  check.variable = SweepVariable::dt;
  check.values.assign(dts.begin(), dts.end());
  check.min_order = min_order;
  check.max_order = max_order;
  check.validate();

  const auto residuals = parallel_map<double>(dts.size(), parallel, [&](std::size_t i) {
    models::SchemeConfig cfg = scenario.scheme;
    cfg.dt = dts[i];
    cfg.diagnostics_every = 1;
    try {
      Simulation sim(Model::vvv, scenario.u0, scenario.w0, scenario.params, cfg, scenario.threads);
      double worst = sim.observe().energy_budget_residual;
      const long steps = cfg.step_count();
      for (long s = 0; s < steps; ++s) {
        sim.advance();
        worst = std::max(worst, sim.observe().energy_budget_residual);
      }
      return worst;
    } catch (const DivergenceError& e) {
      throw DivergenceError("dt=" + std::to_string(dts[i]) + ": " + e.what(), e.step(), e.time());
    }
  });

  ConvergenceReport r;
  r.title = "energy balance residual versus dt";
  r.variable = "dt";
  r.values.assign(dts.begin(), dts.end());
  r.norms = {"max_t_energy_budget_residual"};
  r.errors = {residuals};
  r.min_order = min_order;
  r.max_order = max_order;
  r.notes.push_back("n=" + std::to_string(scenario.u0.grid().n()) + ", alpha=" + std::to_string(scenario.params.alpha) +
                    ", T=" + std::to_string(scenario.scheme.t_end));
  finish(r);
  return r;
}

ReductionResult reduction_check_alpha_zero(const Scenario& scenario, double threshold) {
  if (scenario.params.alpha != 0.0) throw ConfigError("reduction check requires alpha = 0");
  Simulation vvv(Model::vvv, scenario.u0, scenario.w0, scenario.params, scenario.scheme, scenario.threads);
  Simulation nse(Model::nse, scenario.u0, std::nullopt, scenario.params, scenario.scheme, scenario.threads);
  ReductionResult r;
  r.threshold = threshold;
  r.max_deviation = l2(vvv.u() - nse.u());
  const long steps = scenario.scheme.step_count();
  for (long s = 0; s < steps; ++s) {
    vvv.advance();
    nse.advance();
    const double d = l2(vvv.u() - nse.u());
    if (d > threshold && std::isnan(r.first_offending_time)) r.first_offending_time = vvv.t();
    r.max_deviation = std::max(r.max_deviation, d);
  }
  r.steps = steps;
  r.passed = r.max_deviation <= threshold;
  return r;
}

}  // namespace vvv::experiments
