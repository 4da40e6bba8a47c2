#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "experiments/experiments.hpp"
#include "models/state.hpp"

namespace vvv::io {

enum class U0Kind { taylor_green, snapshot, random_smooth };
enum class W0Kind { curl_of_u0, snapshot, perturbed_divergence };
enum class ForcingKind { none, taylor_green, modulated_taylor_green };
enum class ExperimentKind { none, curl_mismatch, nse_deviation, energy_dt, alpha_zero_reduction };

struct SweepSection {
  ExperimentKind experiment = ExperimentKind::none;
  experiments::SweepVariable variable = experiments::SweepVariable::alpha;
  std::vector<double> values;
  experiments::ReferencePolicy reference = experiments::ReferencePolicy::analytic;
  std::optional<double> min_order;
  std::optional<double> max_order;
  int parallel = 1;
};

struct RunConfig {
  models::Model model = models::Model::vvv;
  int n = 0;
  double nu = 1.0;
  double alpha = 0.1;

  U0Kind u0 = U0Kind::taylor_green;
  std::filesystem::path u0_path;
  std::optional<std::uint64_t> u0_seed;
  int u0_mode_cutoff = 0;
  double u0_amplitude = 1.0;

  W0Kind w0 = W0Kind::curl_of_u0;
  std::filesystem::path w0_path;
  std::optional<std::uint64_t> w0_seed;
  double w0_amplitude = 1.0;

  ForcingKind forcing = ForcingKind::none;
  double forcing_amplitude = 1.0;
  double forcing_frequency = 1.0;

  double dt = 0.0;
  double t_end = 0.0;
  int diagnostics_every = 1;
  int snapshot_every = 0;
  bool nonlinear = true;

  std::filesystem::path output_dir = "vvv-output";
  /// 0 = one per hardware thread.
  int threads = 1;

  SweepSection sweep;

  /// Worker count with 0 resolved.
  int resolved_threads() const;
  models::SchemeConfig scheme() const;
};

/// Parses the `key = value` format. Relative paths resolve against base_dir
/// and must exist. Throws ConfigError naming the offending line.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

/// Applies a single `key = value` override (CLI flags) with the same rules;
/// the result is re-validated.
void apply_override(RunConfig& cfg, std::string_view key, std::string_view value,
                    const std::filesystem::path& base_dir = ".");

/// Canonical `key = value` dump, parseable by parse_config.
std::string to_text(const RunConfig& cfg);

}  // namespace vvv::io
