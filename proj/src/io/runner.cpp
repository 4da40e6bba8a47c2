#include "io/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "io/snapshot.hpp"
#include "io/timeseries.hpp"
#include "models/initial_data.hpp"
#include "spectral/calculus.hpp"

namespace vvv::io {

namespace fs = std::filesystem;
using spectral::VectorField;

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create '" + p.string() + "'");
  return out;
}

std::string step_name(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%08ld.vvvf", step);
  return buf;
}

Snapshot snapshot_of(const models::Simulation& sim) {
  Snapshot s;
  s.alpha = sim.model() == models::Model::vvv ? sim.params().alpha : 0.0;
  s.nu = sim.params().nu;
  s.t = sim.t();
  s.u = sim.u();
  if (sim.model() == models::Model::vvv) s.w = sim.w();
  return s;
}

double l2(const VectorField& v, int s = 0) { return std::sqrt(spectral::weighted_square_norm(v, s)); }

}  // namespace

experiments::Scenario build_scenario(const RunConfig& cfg) {
  auto g = spectral::Grid::make(cfg.n);
  VectorField u0(g);
  std::optional<Snapshot> u0_snap;
  switch (cfg.u0) {
    case U0Kind::taylor_green: u0 = models::taylor_green(g, cfg.u0_amplitude); break;
    case U0Kind::random_smooth:
      u0 = models::random_field(g, {*cfg.u0_seed, cfg.u0_mode_cutoff, cfg.u0_amplitude, true});
      break;
    case U0Kind::snapshot:
      u0_snap = read_snapshot(cfg.u0_path, g);
      u0 = u0_snap->u;
      break;
  }
  std::optional<VectorField> w0;
  switch (cfg.w0) {
    case W0Kind::curl_of_u0: break;
    case W0Kind::perturbed_divergence:
      w0 = models::add_divergence_perturbation(spectral::curl(u0), *cfg.w0_seed, cfg.w0_amplitude);
      break;
    case W0Kind::snapshot: {
      Snapshot s = read_snapshot(cfg.w0_path, g);
      if (!s.w) throw ConfigError("w0_path '" + cfg.w0_path.string() + "' holds no vorticity field");
      w0 = std::move(*s.w);
      break;
    }
  }

  ops::ModelParams p;
  p.nu = cfg.nu;
  p.alpha = cfg.model == models::Model::vvv ? cfg.alpha : 0.0;
  switch (cfg.forcing) {
    case ForcingKind::none: break;
    case ForcingKind::taylor_green: p.forcing = ops::Forcing::steady(models::taylor_green(g, cfg.forcing_amplitude)); break;
    case ForcingKind::modulated_taylor_green:
      p.forcing = ops::Forcing::modulated(models::taylor_green(g, cfg.forcing_amplitude), cfg.forcing_frequency);
      break;
  }
  return {std::move(u0), std::move(w0), std::move(p), cfg.scheme(), cfg.resolved_threads()};
}

RunOutcome run_config(const RunConfig& cfg) {
  experiments::Scenario sc = build_scenario(cfg);
  fs::create_directories(cfg.output_dir);
  RunOutcome out;
  out.timeseries = cfg.output_dir / "timeseries.csv";
  out.final_snapshot = cfg.output_dir / "final.vvvf";
  std::ofstream csv = open_out(out.timeseries);
  TimeseriesWriter writer(csv);
  const fs::path snap_dir = cfg.output_dir / "snapshots";

  models::RunSinks sinks;
  sinks.diagnostics = [&](const diag::DiagnosticsRecord& r) {
    writer.append(r);
    out.last = r;
  };
  sinks.snapshot = [&](const models::Simulation& sim) {
    const bool final = sim.step_count() == sc.scheme.step_count();
    if (final) write_snapshot(snapshot_of(sim), out.final_snapshot);
    if (cfg.snapshot_every > 0 && sim.step_count() % cfg.snapshot_every == 0)
      write_snapshot(snapshot_of(sim), snap_dir / step_name(sim.step_count()));
  };
  try {
    const auto result = models::run(cfg.model, sc.u0, sc.w0, sc.params, sc.scheme, sinks, sc.threads);
    out.steps = result.steps;
    out.t = result.t;
  } catch (const DivergenceError&) {
    csv.flush();
    throw;
  }
  out.rows = writer.rows();
  csv.close();
  if (!csv) throw IoError("failed writing '" + out.timeseries.string() + "'");
  return out;
}

SweepOutcome run_sweep(const RunConfig& cfg) {
  const SweepSection& sw = cfg.sweep;
  if (sw.experiment == ExperimentKind::none) throw ConfigError("plan has no [sweep] experiment");
  experiments::Scenario sc = build_scenario(cfg);
  fs::create_directories(cfg.output_dir);
  SweepOutcome out;
  out.csv = cfg.output_dir / "sweep.csv";
  out.summary_file = cfg.output_dir / "sweep_summary.txt";
  std::ostringstream summary;

  if (sw.experiment == ExperimentKind::alpha_zero_reduction) {
    if (cfg.model != models::Model::vvv) throw ConfigError("alpha-zero-reduction compares a vvv model to nse");
    sc.params.alpha = 0.0;
    const auto r = experiments::reduction_check_alpha_zero(sc);
    std::ofstream csv = open_out(out.csv);
    csv << "steps,max_l2_deviation,threshold,first_offending_time\n"
        << r.steps << ',' << format_real(r.max_deviation) << ',' << format_real(r.threshold) << ','
        << (std::isnan(r.first_offending_time) ? std::string("") : format_real(r.first_offending_time)) << '\n';
    summary << "# alpha = 0 reduction against the Navier-Stokes reference\n";
    summary << "# max L2 deviation " << format_real(r.max_deviation) << " over " << r.steps << " steps (threshold "
            << r.threshold << ")\n";
    if (!r.passed) summary << "# first exceeded at t = " << format_real(r.first_offending_time) << '\n';
    summary << "# overall: " << (r.passed ? "PASS" : "FAIL") << '\n';
    out.passed = r.passed;
  } else {
    if (cfg.model != models::Model::vvv) throw ConfigError("sweeps run the vvv model");
    experiments::ConvergenceReport report;
    if (sw.experiment == ExperimentKind::energy_dt) {
      report = experiments::dt_refinement_energy(sc, sw.values, sw.min_order.value_or(1.8),
                                                 sw.max_order.value_or(2.2), sw.parallel);
    } else {
      experiments::SweepPlan plan;
      plan.base = sc;
      plan.variable = sw.variable;
      plan.values = sw.values;
      plan.reference = sw.reference;
      plan.parallel = sw.parallel;
      if (sw.min_order) plan.min_order = *sw.min_order;
      if (sw.max_order) plan.max_order = *sw.max_order;
      report = sw.experiment == ExperimentKind::curl_mismatch ? experiments::sweep_alpha_curl_mismatch(plan)
                                                              : experiments::sweep_alpha_nse_deviation(plan);
    }
    std::ofstream csv = open_out(out.csv);
    report.write_csv(csv);
    report.write_summary(summary);
    out.passed = report.passed();
  }
  out.summary = summary.str();
  std::ofstream sf = open_out(out.summary_file);
  sf << out.summary;
  return out;
}

SnapshotDistance snapshot_distance(const fs::path& a, const fs::path& b) {
  const Snapshot sa = read_snapshot(a);
  const Snapshot sb = read_snapshot(b, sa.u.grid_ptr());
  SnapshotDistance d;
  const VectorField du = sa.u - sb.u;
  d.l2_u = l2(du);
  d.h1_u = l2(du, 1);
  if (sa.w && sb.w) {
    const VectorField dw = *sa.w - *sb.w;
    d.has_w = true;
    d.l2_w = l2(dw);
    d.h1_w = l2(dw, 1);
  }
  return d;
}

}  // namespace vvv::io
