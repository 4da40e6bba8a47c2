#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "models/simulation.hpp"

namespace vvv::experiments {

using spectral::VectorField;

/// Everything a single run needs apart from the swept variable.
struct Scenario {
  VectorField u0;
  /// Defaults to curl u0.
  std::optional<VectorField> w0;
  ops::ModelParams params;
  models::SchemeConfig scheme;
  int threads = 1;
};

enum class SweepVariable { alpha, dt, n };
enum class ReferencePolicy { analytic, finest_member, nse };

const char* to_string(SweepVariable v);
const char* to_string(ReferencePolicy r);

struct SweepPlan {
  Scenario base;
  SweepVariable variable = SweepVariable::alpha;
  /// >= 3 positive values, strictly monotone.
  std::vector<double> values;
  ReferencePolicy reference = ReferencePolicy::analytic;
  /// Acceptance window for the fitted order.
  double min_order = 0.85;
  double max_order = std::numeric_limits<double>::infinity();
  /// Members run concurrently on up to this many threads.
  int parallel = 1;

  void validate() const;
};

struct FitResult {
  double order = 0.0;
  /// RMS of the log-log fit residuals.
  double residual = 0.0;
};

/// Least-squares slope of log(error) against log(h). Throws ConfigError for
/// fewer than 3 pairs or nonpositive entries.
FitResult fit_order(std::span<const double> h, std::span<const double> error);

enum class FitStatus { pass, fail, indeterminate };
const char* to_string(FitStatus s);

struct ConvergenceReport {
  std::string title;
  std::string variable;
  std::vector<double> values;
  std::vector<std::string> norms;
  /// errors[norm][row]
  std::vector<std::vector<double>> errors;
  std::vector<FitResult> fits;
  std::vector<FitStatus> status;
  /// Halving the variable never grew the error by more than 10%.
  std::vector<bool> monotone;
  double min_order = 0.0;
  double max_order = 0.0;
  std::vector<std::string> notes;

  bool passed() const;
  void write_csv(std::ostream& os) const;
  /// Human-readable block; every line starts with '#' so the file stays
  /// gnuplot-readable.
  void write_summary(std::ostream& os) const;
};

/// Errors below this are treated as round-off; a column made only of them
/// yields FitStatus::indeterminate.
inline constexpr double kRoundOffFloor = 1e-13;

/// max_t ||w - curl u||_L2 and (int_0^T ||grad(w - curl u)||^2)^{1/2} per alpha.
/// The run horizon is plan.base.scheme.t_end.
ConvergenceReport sweep_alpha_curl_mismatch(const SweepPlan& plan);

/// max_t ||u - u_nse||_L2 and max_t ||curl u - curl u_nse||_L2 per alpha, the
/// NSE reference integrated in lockstep at identical (n, dt).
ConvergenceReport sweep_alpha_nse_deviation(const SweepPlan& plan);

/// Energy-balance residual per dt; fitted temporal order. Requires >= 3 dts.
ConvergenceReport dt_refinement_energy(const Scenario& scenario, std::span<const double> dts,
                                       double min_order = 1.8, double max_order = 2.2, int parallel = 1);

struct ReductionResult {
  bool passed = false;
  double max_deviation = 0.0;
  /// Time at which the deviation first exceeded the threshold (NaN if never).
  double first_offending_time = std::numeric_limits<double>::quiet_NaN();
  long steps = 0;
  double threshold = 1e-9;
};

/// VVV at alpha = 0 against NSE from the same u0; passes when
/// max_t ||u - u_nse||_L2 <= threshold. Throws ConfigError unless alpha = 0.
ReductionResult reduction_check_alpha_zero(const Scenario& scenario, double threshold = 1e-9);

}  // namespace vvv::experiments
