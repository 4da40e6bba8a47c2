#pragma once

#include <filesystem>
#include <string>

#include "experiments/experiments.hpp"
#include "io/config.hpp"

namespace vvv::io {

/// Initial data, parameters and scheme described by a config.
experiments::Scenario build_scenario(const RunConfig& cfg);

struct RunOutcome {
  long steps = 0;
  double t = 0.0;
  long rows = 0;
  diag::DiagnosticsRecord last;
  std::filesystem::path timeseries;
  std::filesystem::path final_snapshot;
};

/// One simulation: writes timeseries.csv, snapshots/step_<k>.vvvf at the
/// snapshot cadence and final.vvvf under cfg.output_dir. Divergence
/// propagates as DivergenceError after the partial CSV is flushed.
RunOutcome run_config(const RunConfig& cfg);

struct SweepOutcome {
  bool passed = false;
  std::string summary;
  std::filesystem::path csv;
  std::filesystem::path summary_file;
};

/// Executes cfg.sweep and writes sweep.csv and sweep_summary.txt under
/// cfg.output_dir. Throws ConfigError when no experiment is configured.
SweepOutcome run_sweep(const RunConfig& cfg);

struct SnapshotDistance {
  double l2_u = 0.0;
  double h1_u = 0.0;
  /// Only when both files carry a vorticity.
  bool has_w = false;
  double l2_w = 0.0;
  double h1_w = 0.0;
};

/// Distances between two snapshots on the same grid (GridMismatchError otherwise).
SnapshotDistance snapshot_distance(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace vvv::io
