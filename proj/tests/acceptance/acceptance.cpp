// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Pass a list of criterion numbers to run a subset.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "experiments/experiments.hpp"
#include "io/config.hpp"
#include "io/runner.hpp"
#include "models/initial_data.hpp"
#include "models/simulation.hpp"
#include "operators/operators.hpp"
#include "spectral/calculus.hpp"
#include "spectral/transform.hpp"
#include "support/ode_oracle.hpp"

using namespace vvv;
using namespace vvv::spectral;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

double norm(const VectorField& v, int s = 0) { return std::sqrt(weighted_square_norm(v, s)); }
double norm(const ScalarField& v, int s = 0) { return std::sqrt(weighted_square_norm(v, s)); }

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string orders(const experiments::ConvergenceReport& r) {
  std::string s;
  for (std::size_t j = 0; j < r.norms.size(); ++j)
    s += fmt("%s%s order %.3f (%s)", j ? ", " : "", r.norms[j].c_str(), r.fits[j].order, to_string(r.status[j]));
  s += "; errors";
  for (const auto& col : r.errors)
    for (double e : col) s += fmt(" %.3e", e);
  return s;
}

experiments::Scenario taylor_green_scenario(int n, double dt, double t_end, double alpha) {
  experiments::Scenario s{models::taylor_green(Grid::make(n)), std::nullopt, {}, {}};
  s.params.nu = 1.0;
  s.params.alpha = alpha;
  s.scheme.dt = dt;
  s.scheme.t_end = t_end;
  return s;
}

Outcome spectral_identities() {
  const double tol = 1e-12;
  double worst = 0;
  for (int n : {16, 32}) {
    auto g = Grid::make(n);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const VectorField v = models::random_field(g, {seed * 101 + n, 0, 1.0, false});
      worst = std::max(worst, norm(divergence(curl(v))) / norm(v, 2));
      worst = std::max(worst, norm(curl(gradient(v[1]))) / norm(v[1], 2));
      const VectorField p = ops::leray_project(v);
      worst = std::max(worst, norm(ops::leray_project(p) - p) / norm(v));
      for (double a : {0.1, 1.0})
        worst = std::max(worst, norm(ops::helmholtz_invert(ops::helmholtz_apply(p, a), a) - p) / norm(p));
    }
  }
  return {worst <= tol, fmt("worst relative defect %.3e (tol %.0e), 40 fields", worst, tol)};
}

Outcome trilinear_identities() {
  const double tol = 1e-12;
  auto g = Grid::make(16);
  Transformer tr(g);
  double worst_skew = 0, worst_anti = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const VectorField u = models::random_field(g, {3 * seed, 0, 1.0, true});
    const VectorField v = models::random_field(g, {3 * seed + 1, 0, 1.0, true});
    const VectorField w = models::random_field(g, {3 * seed + 2, 0, 1.0, true});
    const double scale_vv = norm(u, 1) * norm(v, 1) * norm(v, 1);
    const double scale_vw = norm(u, 1) * norm(v, 1) * norm(w, 1);
    const VectorField buv = ops::advect(tr, u, v, ops::Projection::leray);
    const VectorField buw = ops::advect(tr, u, w, ops::Projection::leray);
    worst_skew = std::max(worst_skew, std::abs(inner(buv, v)) / scale_vv);
    worst_anti = std::max(worst_anti, std::abs(inner(buv, w) + inner(buw, v)) / scale_vw);
  }
  return {worst_skew <= tol && worst_anti <= tol,
          fmt("b(u,v,v) %.3e, b(u,v,w)+b(u,w,v) %.3e relative (tol %.0e), 20 triples", worst_skew, worst_anti, tol)};
}

Outcome energy_order() {
  const auto s = taylor_green_scenario(32, 1e-3, 0.25, 0.1);
  const std::vector<double> dts{4e-3, 2e-3, 1e-3};
  const auto r = experiments::dt_refinement_energy(s, dts, 1.8, 2.2);
  return {r.passed(), orders(r) + " (window [1.8, 2.2])"};
}

Outcome divergence_decay() {
  auto g = Grid::make(16);
  const VectorField u0 = models::taylor_green(g, 1e-3);
  const VectorField w0 = models::add_divergence_perturbation(curl(u0), 17, 1.0);
  ops::ModelParams p;
  p.alpha = 0.1;
  models::SchemeConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.2;
  std::vector<double> t, d;
  models::RunSinks sinks;
  sinks.diagnostics = [&](const diag::DiagnosticsRecord& r) {
    t.push_back(r.t);
    d.push_back(r.div_w_l2);
  };
  models::run(models::Model::vvv, u0, w0, p, cfg, sinks);
  const double rate = diag::divergence_decay_rate(t, d);
  const double expected = -4 * kPi * kPi;
  const double rel = std::abs(rate / expected - 1);
  return {rel <= 0.02, fmt("fitted rate %.4f vs %.4f (relative gap %.2e, tol 2e-2)", rate, expected, rel)};
}

experiments::SweepPlan alpha_sweep(experiments::ReferencePolicy ref) {
  experiments::SweepPlan p;
  p.base = taylor_green_scenario(32, 1e-3, 0.5, 0.1);
  p.values = {0.1, 0.05, 0.025, 0.0125};
  p.reference = ref;
  p.min_order = 0.85;
  return p;
}

Outcome curl_mismatch_rate() {
  const auto r = experiments::sweep_alpha_curl_mismatch(alpha_sweep(experiments::ReferencePolicy::analytic));
  return {r.passed(), orders(r) + " (min 0.85)"};
}

Outcome nse_deviation_rate() {
  const auto r = experiments::sweep_alpha_nse_deviation(alpha_sweep(experiments::ReferencePolicy::nse));
  return {r.passed(), orders(r) + " (min 0.85)"};
}

Outcome alpha_zero_reduction() {
  auto s = taylor_green_scenario(16, 1e-3, 0.25, 0.0);
  const auto r = experiments::reduction_check_alpha_zero(s, 1e-9);
  return {r.passed, fmt("max ||u - u_nse|| %.3e over %ld steps (tol 1e-9)", r.max_deviation, r.steps)};
}

Outcome ode_oracle() {
  auto g = Grid::make(16);
  Transformer tr(g);
  ops::ModelParams p;
  p.alpha = 0.1;
  const VectorField u0 = models::random_field(g, {41, 0, 1.0, true});
  const VectorField w0 = curl(u0) + models::random_field(g, {42, 0, 0.5, false});
  const auto ref = oracle::rk4_integrate(tr, {u0, w0}, p, 0.01, 400);
  models::SchemeConfig cfg;
  cfg.dt = 1e-5;
  cfg.t_end = 0.01;
  const auto r = models::run(models::Model::vvv, u0, w0, p, cfg);
  const double eu = norm(r.u - ref.u) / norm(ref.u);
  const double ew = norm(r.w - ref.w) / norm(ref.w);
  return {eu <= 1e-6 && ew <= 1e-6, fmt("relative L2 gap u %.3e, w %.3e (tol 1e-6)", eu, ew)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome reproducibility() {
  const fs::path dir = fs::temp_directory_path() / ("vvv_acceptance_" + std::to_string(::getpid()));
  const std::string text =
      "[model]\nmodel = vvv\nalpha = 0.1\nu0 = random-smooth\nu0_seed = 2024\nw0 = perturbed-divergence\n"
      "w0_seed = 5\nw0_amplitude = 0.1\nforcing = modulated-taylor-green\n[grid]\nn = 16\n"
      "[time]\ndt = 1e-3\nt_end = 0.1\n[output]\nthreads = 1\n";
  for (const char* sub : {"a", "b"}) {
    auto cfg = io::parse_config(text);
    cfg.output_dir = dir / sub;
    io::run_config(cfg);
  }
  const std::string a = slurp(dir / "a" / "timeseries.csv");
  const std::string b = slurp(dir / "b" / "timeseries.csv");
  const bool same_snap = slurp(dir / "a" / "final.vvvf") == slurp(dir / "b" / "final.vvvf");
  fs::remove_all(dir);
  return {!a.empty() && a == b && same_snap,
          fmt("CSV %zu bytes, %s; final snapshot %s", a.size(), a == b ? "identical" : "DIFFERENT",
              same_snap ? "identical" : "DIFFERENT")};
}

Outcome blow_up_indicator() {
  // Checked early (t = 0.05, before viscous decay separates the runs) and at
  // the sweep horizon t = 0.5.
  const double times[] = {0.05, 0.5};
  std::vector<std::vector<double>> values(2);
  for (double alpha : {0.1, 0.05, 0.025}) {
    const auto s = taylor_green_scenario(32, 1e-3, 0.5, alpha);
    const auto r = models::run(models::Model::vvv, s.u0, s.w0, s.params, s.scheme);
    for (int j = 0; j < 2; ++j)
      for (const auto& rec : r.records)
        if (std::abs(rec.t - times[j]) < 1e-9) values[j].push_back(rec.blow_up_indicator);
  }
  bool ok = true;
  std::string detail = "alpha*||grad u||";
  for (int j = 0; j < 2; ++j) {
    ok = ok && values[j].size() == 3;
    detail += fmt(" at t=%.2g:", times[j]);
    for (std::size_t i = 0; i < values[j].size(); ++i) {
      detail += fmt(" %.4e", values[j][i]);
      if (i > 0) ok = ok && values[j][i] <= 1.05 * values[j][i - 1];
    }
  }
  return {ok, detail + " (non-increasing within 5%)"};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> all{
      {1, "spectral identities", spectral_identities},
      {2, "trilinear form identities", trilinear_identities},
      {3, "energy balance temporal order", energy_order},
      {4, "divergence decay rate", divergence_decay},
      {5, "curl mismatch rate in alpha", curl_mismatch_rate},
      {6, "Navier-Stokes deviation rate in alpha", nse_deviation_rate},
      {7, "alpha = 0 reduction", alpha_zero_reduction},
      {8, "agreement with RK4 Galerkin integrator", ode_oracle},
      {9, "reproducible output", reproducibility},
      {10, "blow-up indicator along alpha", blow_up_indicator},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.contains(c.id)) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %s: %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
