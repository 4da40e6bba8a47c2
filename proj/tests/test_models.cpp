#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "common/error.hpp"
#include "models/initial_data.hpp"
#include "models/simulation.hpp"
#include "spectral/calculus.hpp"
#include "support/ode_oracle.hpp"
#include "support/oracle.hpp"

using namespace vvv;
using namespace vvv::spectral;
using namespace vvv::models;

namespace {

constexpr double kPi = std::numbers::pi;
double norm(const VectorField& v, int s = 0) { return std::sqrt(weighted_square_norm(v, s)); }
double norm(const ScalarField& v, int s = 0) { return std::sqrt(weighted_square_norm(v, s)); }

// (0, 0, sin 2 pi x): a solenoidal |k| = 1 mode
VectorField shear_mode(const GridPtr& g, double amp = 1.0) {
  VectorField u(g);
  u[2][g->index_of({1, 0, 0})] = Complex(0, -0.5 * amp);
  u[2][g->index_of({-1, 0, 0})] = Complex(0, 0.5 * amp);
  return u;
}

}  // namespace

TEST_CASE("Taylor-Green initial data") {
  auto g = Grid::make(16);
  const VectorField u0 = taylor_green(g);
  CHECK(norm(divergence(u0)) < 1e-14);
  // quadrature of the analytic field
  const double tp = 2 * kPi;
  const auto u1 = oracle::sample(16, [&](double x, double y, double z) { return std::sin(tp * x) * std::cos(tp * y) * std::cos(tp * z); });
  const auto u2 = oracle::sample(16, [&](double x, double y, double z) { return -std::cos(tp * x) * std::sin(tp * y) * std::cos(tp * z); });
  double quad = 0;
  for (std::size_t q = 0; q < u1.values.size(); ++q) quad += u1.values[q] * u1.values[q] + u2.values[q] * u2.values[q];
  quad /= static_cast<double>(u1.values.size());
  CHECK(quad == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(weighted_square_norm(u0, 0) == doctest::Approx(quad).epsilon(1e-14));
  CHECK(oracle::max_abs_diff(inverse_transform(u0[0]), u1) < 1e-14);
  CHECK(oracle::max_abs_diff(inverse_transform(u0[1]), u2) < 1e-14);
}

TEST_CASE("single Crank-Nicolson step on a |k|=1 mode") {
  auto g = Grid::make(16);
  Transformer tr(g);
  const double dt = 1e-3, nu = 1.0, lam = 4 * kPi * kPi;
  SchemeConfig cfg;
  cfg.dt = dt;
  for (double alpha : {0.0, 1.0}) {
    ops::ModelParams p;
    p.nu = nu;
    p.alpha = alpha;
    const VectorField u0 = shear_mode(g);
    VvvState s = make_vvv_state(u0, VectorField(g), p);
    const VvvState next = step_vvv(tr, s, cfg);
    const double m = 1 + alpha * alpha * lam;
    const double expected = (m - 0.5 * nu * dt * lam) / (m + 0.5 * nu * dt * lam);
    const auto r = static_cast<std::size_t>(g->index_of({1, 0, 0}));
    CHECK(std::abs(next.u[2][r] / u0[2][r] - expected) < 1e-14);
    CHECK(next.step == 1);
    CHECK(next.t == doctest::Approx(dt));
  }
}

TEST_CASE("CNAB2 matches an RK4 integration of the Galerkin system") {
  auto g = Grid::make(16);
  Transformer tr(g);
  ops::ModelParams p;
  p.alpha = 0.1;
  const VectorField u0 = 4.0 * models::random_field(g, {3, 3, 1.0, true});
  const VectorField w0 = curl(u0) + models::random_field(g, {4, 3, 2.0, true});
  const auto ref = oracle::rk4_integrate(tr, {u0, w0}, p, 0.01, 400);
  SchemeConfig cfg;
  cfg.dt = 2e-5;
  cfg.t_end = 0.01;
  const RunResult r = run(Model::vvv, u0, w0, p, cfg);
  CHECK(norm(r.u - ref.u) < 1e-6 * norm(ref.u));
  CHECK(norm(r.w - ref.w) < 1e-6 * norm(ref.w));
}

TEST_CASE("VVV at alpha = 0 with w0 = curl u0 reproduces NSE") {
  auto g = Grid::make(16);
  ops::ModelParams p;
  p.alpha = 0.0;
  SchemeConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;
  const VectorField u0 = 3.0 * taylor_green(g) + models::random_field(g, {9, 3, 0.5, true});
  const RunResult v = run(Model::vvv, u0, std::nullopt, p, cfg);
  const RunResult n = run(Model::nse, u0, std::nullopt, p, cfg);
  CHECK(norm(v.u - n.u) < 1e-10);
  CHECK(norm(v.w - curl(n.u)) < 1e-9);
}

TEST_CASE("step_nse edge cases") {
  auto g = Grid::make(16);
  Transformer tr(g);
  ops::ModelParams p;
  SchemeConfig cfg;
  cfg.dt = 1e-3;

  NseState zero = make_nse_state(VectorField(g), p);
  for (int i = 0; i < 5; ++i) zero = step_nse(tr, zero, cfg);
  CHECK(norm(zero.u) == 0.0);

  // Stokes limit: second-order convergence to exp(-nu lambda t)
  const VectorField u0 = shear_mode(g) + taylor_green(g);
  cfg.nonlinear = false;
  cfg.t_end = 0.1;
  auto error_at = [&](double dt) {
    cfg.dt = dt;
    const RunResult r = run(Model::nse, u0, std::nullopt, p, cfg);
    VectorField exact = u0;
    for (std::size_t m = 0; m < g->mode_count(); ++m)
      for (int i = 0; i < 3; ++i) exact[i][m] *= std::exp(-p.nu * g->laplace_eigenvalue(m) * cfg.t_end);
    return norm(r.u - exact);
  };
  const double e1 = error_at(2e-3), e2 = error_at(1e-3);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("run emits the initial row for t_end = 0") {
  auto g = Grid::make(16);
  SchemeConfig cfg;
  cfg.t_end = 0.0;
  const RunResult r = run(Model::vvv, taylor_green(g), std::nullopt, {}, cfg);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].t == 0.0);
  CHECK(r.steps == 0);
  CHECK(norm(r.u - taylor_green(g)) == 0.0);
}

TEST_CASE("unforced Taylor-Green energy decays monotonically") {
  auto g = Grid::make(32);
  ops::ModelParams p;
  p.alpha = 0.1;
  SchemeConfig cfg;
  cfg.dt = 5e-3;
  cfg.t_end = 0.5;
  cfg.diagnostics_every = 5;
  const RunResult r = run(Model::vvv, taylor_green(g), std::nullopt, p, cfg);
  double previous = INFINITY;
  for (const auto& rec : r.records) {
    const double e = p.alpha * p.alpha * rec.h1_u * rec.h1_u + rec.l2_u * rec.l2_u;
    CHECK(e < previous);
    previous = e;
  }
}

TEST_CASE("runs are deterministic") {
  auto g = Grid::make(16);
  SchemeConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.02;
  const VectorField u0 = taylor_green(g, 5.0);
  const RunResult a = run(Model::vvv, u0, std::nullopt, {}, cfg);
  const RunResult b = run(Model::vvv, u0, std::nullopt, {}, cfg);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].l2_u == b.records[i].l2_u);
    CHECK(a.records[i].curl_mismatch_h1 == b.records[i].curl_mismatch_h1);
  }
  for (std::size_t m = 0; m < g->mode_count(); ++m) CHECK(a.w[1][m] == b.w[1][m]);
}

TEST_CASE("huge time step is reported as divergence") {
  auto g = Grid::make(16);
  SchemeConfig cfg;
  cfg.dt = 1.0;
  cfg.t_end = 50.0;
  // with unit amplitude at nu = 1 the viscous factor keeps dt = 1 stable
  CHECK_NOTHROW(run(Model::vvv, taylor_green(g), std::nullopt, {}, cfg));
  try {
    run(Model::vvv, taylor_green(g, 30.0), std::nullopt, {}, cfg);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step() > 0);
    CHECK(e.step() < 50);
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}

TEST_CASE("scheme and state validation") {
  auto g = Grid::make(16);
  SchemeConfig cfg;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.dt = 3e-3;
  cfg.t_end = 0.01;
  CHECK(cfg.step_count() == 4);
  cfg.t_end = 0.3;
  cfg.dt = 0.1;
  CHECK(cfg.step_count() == 3);
  CHECK_THROWS_AS(make_vvv_state(models::random_field(g, {1, 0, 1.0, false}), std::nullopt, {}), InvariantError);
}

TEST_CASE("CFL advisory") {
  auto g = Grid::make(16);
  SchemeConfig cfg;
  Simulation sim(Model::vvv, taylor_green(g), std::nullopt, {}, cfg);
  CHECK(sim.cfl_dt() == doctest::Approx(0.5 / 16 / 1.0).epsilon(1e-2));
}
