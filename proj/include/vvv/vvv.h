/* C interface to the velocity-vorticity-Voigt solver. */
#ifndef VVV_VVV_H
#define VVV_VVV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define VVV_API __declspec(dllexport)
#else
#define VVV_API __attribute__((visibility("default")))
#endif

typedef enum vvv_status {
  VVV_OK = 0,
  VVV_ERR_CONFIG = 1,     /* invalid configuration or argument */
  VVV_ERR_DIVERGENCE = 2, /* the integration blew up */
  VVV_ERR_CHECK = 3,      /* a property check or acceptance window failed */
  VVV_ERR_IO = 4,
  VVV_ERR_FORMAT = 5,     /* malformed snapshot */
  VVV_ERR_GRID = 6,       /* fields on different grids */
  VVV_ERR_INVARIANT = 7,  /* e.g. non-solenoidal velocity */
  VVV_ERR_INTERNAL = 8
} vvv_status;

typedef struct vvv_config vvv_config;
typedef struct vvv_sim vvv_sim;
/* Text plus pass/fail flag produced by sweep, check and info. */
typedef struct vvv_report vvv_report;

typedef struct vvv_diagnostics {
  double t;
  double l2_u;
  double h1_u;
  double l2_w;
  double h1_w;
  double div_w_l2;
  double curl_mismatch_l2;
  double curl_mismatch_h1;
  double energy_budget_residual;
  double blow_up_indicator;
} vvv_diagnostics;

typedef struct vvv_run_summary {
  long steps;
  double t;
  long rows;
  vvv_diagnostics last;
  /* Set when vvv_run returns VVV_ERR_DIVERGENCE. */
  long divergence_step;
  double divergence_time;
} vvv_run_summary;

typedef struct vvv_distance {
  double l2_u;
  double h1_u;
  int has_w;
  double l2_w;
  double h1_w;
} vvv_distance;

/* Message of the last failure on the calling thread ("" if none). */
VVV_API const char* vvv_last_error(void);
VVV_API const char* vvv_version(void);

VVV_API vvv_status vvv_config_parse(const char* text, const char* base_dir, vvv_config** out);
VVV_API vvv_status vvv_config_load(const char* path, vvv_config** out);
/* Overrides one key with the file grammar's rules; the config is revalidated. */
VVV_API vvv_status vvv_config_set(vvv_config* cfg, const char* key, const char* value);
/* Canonical text form; valid until the next call on this config. */
VVV_API const char* vvv_config_text(vvv_config* cfg);
VVV_API void vvv_config_free(vvv_config* cfg);

/* Runs the configured simulation, writing CSV and snapshots. summary may be NULL. */
VVV_API vvv_status vvv_run(const vvv_config* cfg, vvv_run_summary* summary);

VVV_API vvv_status vvv_sim_create(const vvv_config* cfg, vvv_sim** out);
VVV_API vvv_status vvv_sim_advance(vvv_sim* sim, long steps);
VVV_API vvv_status vvv_sim_diagnostics(vvv_sim* sim, vvv_diagnostics* out);
VVV_API vvv_status vvv_sim_write_snapshot(const vvv_sim* sim, const char* path);
VVV_API double vvv_sim_time(const vvv_sim* sim);
VVV_API long vvv_sim_step(const vvv_sim* sim);
VVV_API void vvv_sim_free(vvv_sim* sim);

/* Runs the [sweep] experiment of a plan. VVV_OK even when the fitted order
 * misses its window: inspect vvv_report_passed. */
VVV_API vvv_status vvv_sweep(const vvv_config* plan, vvv_report** out);
/* Property suite on `seeds` random fields per grid; grids may be NULL for {16, 32}. */
VVV_API vvv_status vvv_check(int seeds, const int* grids, size_t grid_count, vvv_report** out);
VVV_API vvv_status vvv_snapshot_info(const char* path, vvv_report** out);
VVV_API vvv_status vvv_snapshot_diff(const char* a, const char* b, vvv_distance* out);

VVV_API const char* vvv_report_text(const vvv_report* r);
VVV_API int vvv_report_passed(const vvv_report* r);
VVV_API void vvv_report_free(vvv_report* r);

#ifdef __cplusplus
}
#endif

#endif
