// Command-line front end; talks to the solver only through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "vvv/vvv.h"

namespace {

// 1 validation, 2 divergence, 3 check failure.
int exit_code(vvv_status s) {
  switch (s) {
    case VVV_OK: return 0;
    case VVV_ERR_DIVERGENCE: return 2;
    case VVV_ERR_CHECK: return 3;
    default: return 1;
  }
}

int report_error(vvv_status s) {
  std::cerr << "vvv: error: " << vvv_last_error() << '\n';
  return exit_code(s);
}

struct CommonRunOptions {
  std::string config;
  std::string output;
  int threads = -1;
  std::vector<std::string> overrides;
};

bool overrides_well_formed(const CommonRunOptions& o) {
  for (const auto& kv : o.overrides)
    if (kv.find('=') == std::string::npos) {
      std::cerr << "vvv: error: --set expects key=value, got '" << kv << "'\n";
      return false;
    }
  return true;
}

vvv_status load(const CommonRunOptions& o, vvv_config** cfg) {
  vvv_status s = vvv_config_load(o.config.c_str(), cfg);
  if (s != VVV_OK) return s;
  auto set = [&](const std::string& k, const std::string& v) {
    if (s == VVV_OK) s = vvv_config_set(*cfg, k.c_str(), v.c_str());
  };
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    auto trim = [](std::string x) {
      x.erase(0, x.find_first_not_of(' '));
      x.erase(x.find_last_not_of(' ') + 1);
      return x;
    };
    set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  if (!o.output.empty()) set("output_dir", o.output);
  if (o.threads >= 0) set("threads", std::to_string(o.threads));
  return s;
}

void add_common(CLI::App* sub, CommonRunOptions& o, const char* what) {
  sub->add_option("config", o.config, what)->required()->check(CLI::ExistingFile);
  sub->add_option("-o,--output", o.output, "Output directory (overrides output_dir)");
  sub->add_option("-t,--threads", o.threads, "FFT threads, 0 = auto (overrides threads)")->check(CLI::NonNegativeNumber);
  sub->add_option("-s,--set", o.overrides, "Override a config key: key=value (repeatable)");
}

void print(const vvv_diagnostics& d) {
  std::printf("t=%.6g  |u|=%.6g  |grad u|=%.6g  |w - curl u|=%.3e  energy residual=%.3e  alpha|grad u|=%.6g\n", d.t,
              d.l2_u, d.h1_u, d.curl_mismatch_l2, d.energy_budget_residual, d.blow_up_indicator);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral solver for the velocity-vorticity-Voigt model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vvv_version()));

  CommonRunOptions run_opts;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Integrate one configured simulation");
  add_common(run, run_opts, "Run configuration file");
  run->add_flag("-q,--quiet", quiet, "Suppress the summary line");

  CommonRunOptions sweep_opts;
  int parallel = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a convergence experiment from a plan file");
  add_common(sweep, sweep_opts, "Plan file with a [sweep] section");
  sweep->add_option("-p,--parallel", parallel, "Members run concurrently")->check(CLI::PositiveNumber);

  int seeds = 20;
  std::vector<int> grids;
  auto* check = app.add_subcommand("check", "Run the built-in property suite");
  check->add_option("--seeds", seeds, "Random fields per grid")->check(CLI::PositiveNumber);
  check->add_option("--grid", grids, "Grid sizes (default 16 32)");

  std::string snap_a, snap_b, snap_info;
  auto* diff = app.add_subcommand("diff", "L2/H1 distances between two snapshots");
  diff->add_option("a", snap_a, "First snapshot")->required()->check(CLI::ExistingFile);
  diff->add_option("b", snap_b, "Second snapshot")->required()->check(CLI::ExistingFile);
  auto* info = app.add_subcommand("info", "Print a snapshot header");
  info->add_option("snapshot", snap_info, "Snapshot file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*run) {
    if (!overrides_well_formed(run_opts)) return 1;
    vvv_config* cfg = nullptr;
    vvv_status s = load(run_opts, &cfg);
    if (s != VVV_OK) {
      vvv_config_free(cfg);
      return report_error(s);
    }
    vvv_run_summary sum{};
    s = vvv_run(cfg, &sum);
    vvv_config_free(cfg);
    if (s == VVV_ERR_DIVERGENCE) {
      std::cerr << "vvv: diverged at step " << sum.divergence_step << " (t=" << sum.divergence_time << ")\n";
      return report_error(s);
    }
    if (s != VVV_OK) return report_error(s);
    if (!quiet) {
      std::printf("%ld steps, %ld rows\n", sum.steps, sum.rows);
      print(sum.last);
    }
    return 0;
  }

  if (*sweep) {
    if (!overrides_well_formed(sweep_opts)) return 1;
    vvv_config* cfg = nullptr;
    if (parallel > 0) sweep_opts.overrides.push_back("parallel=" + std::to_string(parallel));
    vvv_status s = load(sweep_opts, &cfg);
    if (s != VVV_OK) {
      vvv_config_free(cfg);
      return report_error(s);
    }
    vvv_report* rep = nullptr;
    s = vvv_sweep(cfg, &rep);
    vvv_config_free(cfg);
    if (s != VVV_OK) return report_error(s);
    std::cout << vvv_report_text(rep);
    const int passed = vvv_report_passed(rep);
    vvv_report_free(rep);
    return passed ? 0 : exit_code(VVV_ERR_CHECK);
  }

  if (*check) {
    vvv_report* rep = nullptr;
    const vvv_status s = vvv_check(seeds, grids.empty() ? nullptr : grids.data(), grids.size(), &rep);
    if (s != VVV_OK) return report_error(s);
    std::cout << vvv_report_text(rep);
    const int passed = vvv_report_passed(rep);
    vvv_report_free(rep);
    if (!passed) {
      std::cerr << "vvv: property suite failed\n";
      return exit_code(VVV_ERR_CHECK);
    }
    return 0;
  }

  if (*diff) {
    vvv_distance d{};
    const vvv_status s = vvv_snapshot_diff(snap_a.c_str(), snap_b.c_str(), &d);
    if (s != VVV_OK) return report_error(s);
    std::printf("l2_u %.17g\nh1_u %.17g\n", d.l2_u, d.h1_u);
    if (d.has_w) std::printf("l2_w %.17g\nh1_w %.17g\n", d.l2_w, d.h1_w);
    return 0;
  }

  vvv_report* rep = nullptr;
  const vvv_status s = vvv_snapshot_info(snap_info.c_str(), &rep);
  if (s != VVV_OK) return report_error(s);
  std::cout << vvv_report_text(rep);
  vvv_report_free(rep);
  return 0;
}
