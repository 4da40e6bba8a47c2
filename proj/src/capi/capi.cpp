#include "vvv/vvv.h"

#include <new>
#include <string>

#include "common/error.hpp"
#include "io/checks.hpp"
#include "io/config.hpp"
#include "io/runner.hpp"
#include "io/snapshot.hpp"

struct vvv_config {
  vvv::io::RunConfig cfg;
  std::filesystem::path base_dir;
  std::string text;
};

struct vvv_sim {
  vvv::models::Simulation sim;
};

struct vvv_report {
  std::string text;
  bool passed = false;
};

namespace {

thread_local std::string last_error;

vvv_status fail(vvv_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

template <class F>
vvv_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const vvv::DivergenceError& e) {
    return fail(VVV_ERR_DIVERGENCE, e.what());
  } catch (const vvv::GridMismatchError& e) {
    return fail(VVV_ERR_GRID, e.what());
  } catch (const vvv::FormatError& e) {
    return fail(VVV_ERR_FORMAT, e.what());
  } catch (const vvv::IoError& e) {
    return fail(VVV_ERR_IO, e.what());
  } catch (const vvv::InvariantError& e) {
    return fail(VVV_ERR_INVARIANT, e.what());
  } catch (const vvv::ConfigError& e) {
    return fail(VVV_ERR_CONFIG, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(VVV_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VVV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(VVV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VVV_ERR_INTERNAL, "unknown error");
  }
}

#define VVV_REQUIRE(ptr)                                              \
  do {                                                                \
    if (!(ptr)) return fail(VVV_ERR_CONFIG, #ptr " must not be NULL"); \
  } while (0)

void fill(vvv_diagnostics& out, const vvv::diag::DiagnosticsRecord& r) {
  out.t = r.t;
  out.l2_u = r.l2_u;
  out.h1_u = r.h1_u;
  out.l2_w = r.l2_w;
  out.h1_w = r.h1_w;
  out.div_w_l2 = r.div_w_l2;
  out.curl_mismatch_l2 = r.curl_mismatch_l2;
  out.curl_mismatch_h1 = r.curl_mismatch_h1;
  out.energy_budget_residual = r.energy_budget_residual;
  out.blow_up_indicator = r.blow_up_indicator;
}

}  // namespace

extern "C" {

const char* vvv_last_error(void) { return last_error.c_str(); }
const char* vvv_version(void) { return "1.0.0"; }

vvv_status vvv_config_parse(const char* text, const char* base_dir, vvv_config** out) {
  VVV_REQUIRE(text);
  VVV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const std::filesystem::path base = base_dir ? base_dir : ".";
    *out = new vvv_config{vvv::io::parse_config(text, base), base, {}};
    return VVV_OK;
  });
}

vvv_status vvv_config_load(const char* path, vvv_config** out) {
  VVV_REQUIRE(path);
  VVV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const std::filesystem::path p(path);
    *out = new vvv_config{vvv::io::load_config(p), p.has_parent_path() ? p.parent_path() : ".", {}};
    return VVV_OK;
  });
}

vvv_status vvv_config_set(vvv_config* cfg, const char* key, const char* value) {
  VVV_REQUIRE(cfg);
  VVV_REQUIRE(key);
  VVV_REQUIRE(value);
  // CLI overrides are relative to the working directory, not the config file.
  return guarded([&] {
    vvv::io::apply_override(cfg->cfg, key, value, ".");
    return VVV_OK;
  });
}

const char* vvv_config_text(vvv_config* cfg) {
  if (!cfg) return "";
  cfg->text = vvv::io::to_text(cfg->cfg);
  return cfg->text.c_str();
}

void vvv_config_free(vvv_config* cfg) { delete cfg; }

vvv_status vvv_run(const vvv_config* cfg, vvv_run_summary* summary) {
  VVV_REQUIRE(cfg);
  if (summary) *summary = {};
  try {
    last_error.clear();
    const auto r = vvv::io::run_config(cfg->cfg);
    if (summary) {
      summary->steps = r.steps;
      summary->t = r.t;
      summary->rows = r.rows;
      fill(summary->last, r.last);
    }
    return VVV_OK;
  } catch (const vvv::DivergenceError& e) {
    if (summary) {
      summary->divergence_step = e.step();
      summary->divergence_time = e.time();
    }
    return fail(VVV_ERR_DIVERGENCE, e.what());
  } catch (...) {
    return guarded([] () -> vvv_status { throw; });
  }
}

vvv_status vvv_sim_create(const vvv_config* cfg, vvv_sim** out) {
  VVV_REQUIRE(cfg);
  VVV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto sc = vvv::io::build_scenario(cfg->cfg);
    *out = new vvv_sim{vvv::models::Simulation(cfg->cfg.model, std::move(sc.u0), std::move(sc.w0), sc.params,
                                               sc.scheme, sc.threads)};
    return VVV_OK;
  });
}

vvv_status vvv_sim_advance(vvv_sim* sim, long steps) {
  VVV_REQUIRE(sim);
  if (steps < 0) return fail(VVV_ERR_CONFIG, "steps must be >= 0");
  return guarded([&] {
    for (long i = 0; i < steps; ++i) sim->sim.advance();
    return VVV_OK;
  });
}

vvv_status vvv_sim_diagnostics(vvv_sim* sim, vvv_diagnostics* out) {
  VVV_REQUIRE(sim);
  VVV_REQUIRE(out);
  return guarded([&] {
    fill(*out, sim->sim.observe());
    return VVV_OK;
  });
}

vvv_status vvv_sim_write_snapshot(const vvv_sim* sim, const char* path) {
  VVV_REQUIRE(sim);
  VVV_REQUIRE(path);
  return guarded([&] {
    const auto& s = sim->sim;
    vvv::io::Snapshot snap;
    snap.alpha = s.model() == vvv::models::Model::vvv ? s.params().alpha : 0.0;
    snap.nu = s.params().nu;
    snap.t = s.t();
    snap.u = s.u();
    if (s.model() == vvv::models::Model::vvv) snap.w = s.w();
    vvv::io::write_snapshot(snap, path);
    return VVV_OK;
  });
}

double vvv_sim_time(const vvv_sim* sim) { return sim ? sim->sim.t() : 0.0; }
long vvv_sim_step(const vvv_sim* sim) { return sim ? sim->sim.step_count() : 0; }
void vvv_sim_free(vvv_sim* sim) { delete sim; }

vvv_status vvv_sweep(const vvv_config* plan, vvv_report** out) {
  VVV_REQUIRE(plan);
  VVV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto r = vvv::io::run_sweep(plan->cfg);
    *out = new vvv_report{r.summary, r.passed};
    return VVV_OK;
  });
}

vvv_status vvv_check(int seeds, const int* grids, size_t grid_count, vvv_report** out) {
  VVV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    vvv::io::CheckOptions opts;
    opts.seeds = seeds;
    if (grids) opts.grids.assign(grids, grids + grid_count);
    const auto results = vvv::io::run_property_checks(opts);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed();
    *out = new vvv_report{vvv::io::format_checks(results), ok};
    return VVV_OK;
  });
}

vvv_status vvv_snapshot_info(const char* path, vvv_report** out) {
  VVV_REQUIRE(path);
  VVV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new vvv_report{vvv::io::describe(vvv::io::read_snapshot_header(path)), true};
    return VVV_OK;
  });
}

vvv_status vvv_snapshot_diff(const char* a, const char* b, vvv_distance* out) {
  VVV_REQUIRE(a);
  VVV_REQUIRE(b);
  VVV_REQUIRE(out);
  return guarded([&] {
    const auto d = vvv::io::snapshot_distance(a, b);
    *out = {d.l2_u, d.h1_u, d.has_w ? 1 : 0, d.l2_w, d.h1_w};
    return VVV_OK;
  });
}

const char* vvv_report_text(const vvv_report* r) { return r ? r->text.c_str() : ""; }
int vvv_report_passed(const vvv_report* r) { return r && r->passed ? 1 : 0; }
void vvv_report_free(vvv_report* r) { delete r; }

}  // extern "C"
