/* Copyright 2026 The vmpgen Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/*
 * C interface of libvmp: workload traces for dynamic VM placement, their
 * generator, environment classifier, duration adapter and replay simulator.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a vmp_status; on
 * failure vmp_last_error() holds a message and vmp_last_error_kind() a short
 * machine-readable kind ("parse", "invalid_trace", "contract", ...). Both are
 * thread-local and valid until the next failing call on the same thread.
 * Strings returned through char** are heap-allocated and released with
 * vmp_string_free.
 */

#ifndef VMP_VMP_H
#define VMP_VMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VMP_BUILDING_LIBRARY)
#    define VMP_API __declspec(dllexport)
#  else
#    define VMP_API __declspec(dllimport)
#  endif
#else
#  define VMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as CLI exit codes. */
typedef enum vmp_status {
  VMP_OK = 0,
  VMP_ERR_USAGE = 1,    /* null pointer, bad argument, unknown name */
  VMP_ERR_INVALID = 2,  /* malformed or invalid trace, config or fleet */
  VMP_ERR_CONTRACT = 3, /* placement algorithm broke the admission rule */
  VMP_ERR_IO = 4,       /* file could not be opened, read or written */
  VMP_ERR_INTERNAL = 5
} vmp_status;

typedef struct vmp_trace vmp_trace;
typedef struct vmp_config vmp_config;
typedef struct vmp_fleet vmp_fleet;
typedef struct vmp_sim_result vmp_sim_result;

VMP_API const char* vmp_version(void);
VMP_API const char* vmp_last_error(void);
VMP_API const char* vmp_last_error_kind(void);
VMP_API void vmp_string_free(char* s);

/* ---- environments ---------------------------------------------------- */

typedef struct vmp_environment {
  int elasticity;  /* 0 none, 1 horizontal, 2 vertical, 3 both */
  int overbooking; /* 0 none, 1 server, 2 network, 3 both */
} vmp_environment;

enum {
  VMP_TV_MS = 1 << 0,
  VMP_TV_VCPU = 1 << 1,
  VMP_TV_VRAM = 1 << 2,
  VMP_TV_UCPU = 1 << 3,
  VMP_TV_URAM = 1 << 4,
  VMP_TV_UNET = 1 << 5
};

/* Accepts "e,o" or "(e,o)". */
VMP_API vmp_status vmp_environment_parse(const char* text, vmp_environment* env);
/* Bit mask of VMP_TV_* permitted to vary in `env`. */
VMP_API vmp_status vmp_time_variables(vmp_environment env, unsigned* mask);
/* "mS, Unet" style listing, "-" for none. */
VMP_API vmp_status vmp_time_variables_text(vmp_environment env, char** text);
/* *result = 1 iff `a` permits every time variable `b` permits. */
VMP_API vmp_status vmp_covers(vmp_environment a, vmp_environment b, int* result);

/* ---- traces ---------------------------------------------------------- */

typedef struct vmp_row {
  int64_t t;
  int64_t service;
  int64_t datacenter;
  int64_t index;
  int64_t vcpu;
  int64_t vram;
  int64_t vnet;
  int64_t revenue_cents;
  int64_t sla;
  int64_t ucpu;
  int64_t uram;
  int64_t unet;
} vmp_row;

VMP_API vmp_status vmp_trace_from_rows(const vmp_row* rows, size_t count, vmp_trace** out);
/* `resorted` (may be NULL) is set to 1 when the input rows were out of order. */
VMP_API vmp_status vmp_trace_read_file(const char* path, vmp_trace** out, int* resorted);
VMP_API vmp_status vmp_trace_read_buffer(const char* data, size_t size, vmp_trace** out, int* resorted);
VMP_API vmp_status vmp_trace_write_file(const vmp_trace* trace, const char* path);
VMP_API vmp_status vmp_trace_write_buffer(const vmp_trace* trace, char** data, size_t* size);
VMP_API void vmp_trace_free(vmp_trace* trace);

VMP_API size_t vmp_trace_row_count(const vmp_trace* trace);
VMP_API int64_t vmp_trace_duration(const vmp_trace* trace);
VMP_API vmp_status vmp_trace_get_row(const vmp_trace* trace, size_t i, vmp_row* row);

/* Never fails on an invalid trace: the violations are reported in
 * *violation_count and, when `report` is non-NULL, as text. */
VMP_API vmp_status vmp_trace_validate(const vmp_trace* trace, size_t* violation_count, char** report);

VMP_API vmp_status vmp_classify(const vmp_trace* trace, vmp_environment* env);
VMP_API vmp_status vmp_dynamics_report(const vmp_trace* trace, char** text);
/* One event per line, e.g. "+S_1@0", "+V(1,1,2)@1", "~V(1,1,1)@4". */
VMP_API vmp_status vmp_derive_events(const vmp_trace* trace, char** text);
VMP_API vmp_status vmp_adapt_duration(const vmp_trace* trace, int64_t target_duration, uint64_t seed,
                                      vmp_trace** out);
VMP_API vmp_status vmp_fit_config(const vmp_trace* trace, vmp_config** out);

/* ---- generator configs ----------------------------------------------- */

VMP_API vmp_status vmp_config_create_default(vmp_config** out);
VMP_API vmp_status vmp_config_read_file(const char* path, vmp_config** out);
VMP_API vmp_status vmp_config_read_buffer(const char* data, size_t size, vmp_config** out);
VMP_API vmp_status vmp_config_write_file(const vmp_config* config, const char* path);
VMP_API vmp_status vmp_config_write_buffer(const vmp_config* config, char** data, size_t* size);
VMP_API vmp_status vmp_config_set_seed(vmp_config* config, uint64_t seed);
/* *has_seed = 0 when the config carries no seed. */
VMP_API vmp_status vmp_config_get_seed(const vmp_config* config, uint64_t* seed, int* has_seed);
VMP_API vmp_status vmp_config_set_environment(vmp_config* config, vmp_environment env);
VMP_API vmp_status vmp_config_get_environment(const vmp_config* config, vmp_environment* env, int* has_env);
VMP_API void vmp_config_free(vmp_config* config);

VMP_API vmp_status vmp_generate(const vmp_config* config, vmp_trace** out);

/* ---- fleets ---------------------------------------------------------- */

VMP_API vmp_status vmp_fleet_create(vmp_fleet** out);
VMP_API vmp_status vmp_fleet_add_machines(vmp_fleet* fleet, int64_t datacenter, size_t count, int64_t pcpu,
                                          int64_t pram, int64_t pnet);
VMP_API vmp_status vmp_fleet_set_ratios(vmp_fleet* fleet, double cpu, double ram, double net);
VMP_API vmp_status vmp_fleet_read_file(const char* path, vmp_fleet** out);
VMP_API vmp_status vmp_fleet_read_buffer(const char* data, size_t size, vmp_fleet** out);
VMP_API vmp_status vmp_fleet_default_for(const vmp_trace* trace, vmp_fleet** out);
VMP_API void vmp_fleet_free(vmp_fleet* fleet);

/* ---- simulation ------------------------------------------------------ */

typedef struct vmp_metrics {
  int64_t total_revenue_cents;
  uint64_t placed_vm_steps;
  uint64_t rejections;
  uint64_t resize_rejections;
  uint64_t sla_violation_steps;
  uint64_t migrations;
  uint64_t active_pm_steps;
  double peak_cpu_utilization;
  double peak_ram_utilization;
  double peak_net_utilization;
} vmp_metrics;

typedef struct vmp_vm_demand {
  int64_t service, datacenter, index;
  int64_t vcpu, vram, vnet;
  int64_t ucpu, uram, unet;
  int64_t sla;
} vmp_vm_demand;

typedef struct vmp_pm_load {
  int64_t datacenter, index;
  int64_t pcpu, pram, pnet;
  int64_t committed_vcpu, committed_vram, committed_vnet;
  int64_t committed_ucpu, committed_uram, committed_unet;
  uint64_t vm_count;
  int admits; /* 1 when the simulator's admission rule accepts `vm` here */
} vmp_pm_load;

/* Custom placement: return a 0-based position into `pms`, or -1 to reject. */
typedef int64_t (*vmp_place_fn)(const vmp_vm_demand* vm, const vmp_pm_load* pms, size_t pm_count,
                                void* user_data);

/* `algorithm` is "first-fit", "best-fit" or "worst-fit". */
VMP_API vmp_status vmp_simulate(const vmp_trace* trace, const vmp_fleet* fleet, const char* algorithm,
                                vmp_sim_result** out);
VMP_API vmp_status vmp_simulate_custom(const vmp_trace* trace, const vmp_fleet* fleet, vmp_place_fn place,
                                       void* user_data, vmp_sim_result** out);
VMP_API vmp_status vmp_sim_result_metrics(const vmp_sim_result* result, vmp_metrics* metrics);
VMP_API vmp_status vmp_sim_result_rejections_for_sla(const vmp_sim_result* result, int64_t sla,
                                                     uint64_t* count);
VMP_API vmp_status vmp_sim_result_metrics_csv(const vmp_sim_result* result, char** data, size_t* size);
VMP_API vmp_status vmp_sim_result_log_csv(const vmp_sim_result* result, char** data, size_t* size);
VMP_API void vmp_sim_result_free(vmp_sim_result* result);

#ifdef __cplusplus
}
#endif

#endif /* VMP_VMP_H */
