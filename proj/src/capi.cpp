// Copyright 2026 The vmpgen Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "vmp/vmp.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "vmp/adapter.hpp"
#include "vmp/classifier.hpp"
#include "vmp/error.hpp"
#include "vmp/events.hpp"
#include "vmp/generator.hpp"
#include "vmp/model.hpp"
#include "vmp/simulator.hpp"
#include "vmp/trace_io.hpp"

struct vmp_trace {
  vmp::WorkloadTrace value;
};
struct vmp_config {
  vmp::GeneratorConfig value;
};
struct vmp_fleet {
  vmp::DatacenterFleet value;
};
struct vmp_sim_result {
  vmp::SimulationResult value;
};

namespace {

thread_local std::string g_lastError;
thread_local std::string g_lastKind = "none";

vmp_status fail(vmp_status status, const char* kind, const std::string& message) {
  g_lastKind = kind;
  g_lastError = message;
  return status;
}

vmp_status statusFor(vmp::ErrorCode code) {
  switch (code) {
    case vmp::ErrorCode::kArgument:
      return VMP_ERR_USAGE;
    case vmp::ErrorCode::kContract:
      return VMP_ERR_CONTRACT;
    case vmp::ErrorCode::kIo:
      return VMP_ERR_IO;
    default:
      return VMP_ERR_INVALID;
  }
}

template <typename F>
vmp_status guarded(F&& body) {
  try {
    body();
    return VMP_OK;
  } catch (const vmp::Error& e) {
    return fail(statusFor(e.code()), vmp::errorCodeName(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(VMP_ERR_INTERNAL, "internal", "out of memory");
  } catch (const std::exception& e) {
    return fail(VMP_ERR_INTERNAL, "internal", e.what());
  }
}

vmp_status nullArgument(const char* name) {
  return fail(VMP_ERR_USAGE, "argument", std::string(name) + " must not be NULL");
}

#define VMP_REQUIRE(ptr)                        \
  do {                                          \
    if ((ptr) == nullptr) return nullArgument(#ptr); \
  } while (0)

char* dupString(const std::string& s, size_t* size = nullptr) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  if (size != nullptr) *size = s.size();
  return out;
}

vmp::EnvironmentCoordinate toEnv(vmp_environment env) {
  return vmp::EnvironmentCoordinate(env.elasticity, env.overbooking);
}

vmp_environment fromEnv(vmp::EnvironmentCoordinate env) {
  return vmp_environment{env.elasticity(), env.overbooking()};
}

std::ifstream openInput(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vmp::IoError(0, std::string("cannot open ") + path);
  return in;
}

std::ofstream openOutput(const char* path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw vmp::IoError(0, std::string("cannot create ") + path);
  return out;
}

void closeOutput(std::ofstream& out, const char* path) {
  out.close();
  if (!out) throw vmp::IoError(0, std::string("cannot finish writing ") + path);
}

vmp::TraceRow toRow(const vmp_row& r) {
  vmp::TraceRow row;
  row.t = r.t;
  row.vm = {r.service, r.datacenter, r.index};
  row.capacity = {r.vcpu, r.vram, r.vnet};
  row.revenue = vmp::Money::fromCents(r.revenue_cents);
  row.sla = r.sla;
  row.utilization = {r.ucpu, r.uram, r.unet};
  return row;
}

vmp_row fromRow(const vmp::TraceRow& row) {
  return vmp_row{row.t,
                 row.vm.service,
                 row.vm.datacenter,
                 row.vm.index,
                 row.capacity.cpu,
                 row.capacity.ram,
                 row.capacity.net,
                 row.revenue.cents(),
                 row.sla,
                 row.utilization.cpu,
                 row.utilization.ram,
                 row.utilization.net};
}

vmp_status runSimulation(const vmp_trace* trace, const vmp_fleet* fleet, const vmp::PlacementAlgorithm& algo,
                         vmp_sim_result** out) {
  return guarded([&] {
    auto result = vmp::simulate(trace->value, fleet->value, algo);
    *out = new vmp_sim_result{std::move(result)};
  });
}

}  // namespace

extern "C" {

const char* vmp_version(void) { return "1.0.0"; }
const char* vmp_last_error(void) { return g_lastError.c_str(); }
const char* vmp_last_error_kind(void) { return g_lastKind.c_str(); }
void vmp_string_free(char* s) { std::free(s); }

vmp_status vmp_environment_parse(const char* text, vmp_environment* env) {
  VMP_REQUIRE(text);
  VMP_REQUIRE(env);
  return guarded([&] { *env = fromEnv(vmp::EnvironmentCoordinate::parse(text)); });
}

vmp_status vmp_time_variables(vmp_environment env, unsigned* mask) {
  VMP_REQUIRE(mask);
  return guarded([&] { *mask = vmp::timeVariables(toEnv(env)).bits(); });
}

vmp_status vmp_time_variables_text(vmp_environment env, char** text) {
  VMP_REQUIRE(text);
  return guarded([&] { *text = dupString(vmp::timeVariables(toEnv(env)).toString()); });
}

vmp_status vmp_covers(vmp_environment a, vmp_environment b, int* result) {
  VMP_REQUIRE(result);
  return guarded([&] { *result = vmp::covers(toEnv(a), toEnv(b)) ? 1 : 0; });
}

// ---- traces

vmp_status vmp_trace_from_rows(const vmp_row* rows, size_t count, vmp_trace** out) {
  VMP_REQUIRE(out);
  if (count > 0 && rows == nullptr) return nullArgument("rows");
  return guarded([&] {
    std::vector<vmp::TraceRow> v;
    v.reserve(count);
    for (size_t i = 0; i < count; ++i) v.push_back(toRow(rows[i]));
    *out = new vmp_trace{vmp::WorkloadTrace(std::move(v))};
  });
}

vmp_status vmp_trace_read_file(const char* path, vmp_trace** out, int* resorted) {
  VMP_REQUIRE(path);
  VMP_REQUIRE(out);
  return guarded([&] {
    auto in = openInput(path);
    auto r = vmp::readTrace(in);
    if (resorted != nullptr) *resorted = r.resorted ? 1 : 0;
    *out = new vmp_trace{std::move(r.trace)};
  });
}

vmp_status vmp_trace_read_buffer(const char* data, size_t size, vmp_trace** out, int* resorted) {
  VMP_REQUIRE(out);
  if (size > 0 && data == nullptr) return nullArgument("data");
  return guarded([&] {
    auto r = vmp::readTraceString(std::string_view(data == nullptr ? "" : data, size));
    if (resorted != nullptr) *resorted = r.resorted ? 1 : 0;
    *out = new vmp_trace{std::move(r.trace)};
  });
}

vmp_status vmp_trace_write_file(const vmp_trace* trace, const char* path) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(path);
  return guarded([&] {
    auto out = openOutput(path);
    vmp::writeTrace(trace->value, out);
    closeOutput(out, path);
  });
}

vmp_status vmp_trace_write_buffer(const vmp_trace* trace, char** data, size_t* size) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(data);
  return guarded([&] { *data = dupString(vmp::writeTraceString(trace->value), size); });
}

void vmp_trace_free(vmp_trace* trace) { delete trace; }

size_t vmp_trace_row_count(const vmp_trace* trace) { return trace == nullptr ? 0 : trace->value.size(); }

int64_t vmp_trace_duration(const vmp_trace* trace) {
  return trace == nullptr ? 0 : trace->value.duration();
}

vmp_status vmp_trace_get_row(const vmp_trace* trace, size_t i, vmp_row* row) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(row);
  if (i >= trace->value.size()) {
    return fail(VMP_ERR_USAGE, "argument",
                "row " + std::to_string(i) + " out of range (" + std::to_string(trace->value.size()) + " rows)");
  }
  *row = fromRow(trace->value.rows()[i]);
  return VMP_OK;
}

vmp_status vmp_trace_validate(const vmp_trace* trace, size_t* violation_count, char** report) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(violation_count);
  return guarded([&] {
    auto r = vmp::validateTrace(trace->value);
    *violation_count = r.violations.size();
    if (report != nullptr) *report = dupString(r.toString());
  });
}

vmp_status vmp_classify(const vmp_trace* trace, vmp_environment* env) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(env);
  return guarded([&] { *env = fromEnv(vmp::classify(trace->value)); });
}

vmp_status vmp_dynamics_report(const vmp_trace* trace, char** text) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(text);
  return guarded([&] { *text = dupString(vmp::dynamicsReport(trace->value).toString()); });
}

vmp_status vmp_derive_events(const vmp_trace* trace, char** text) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(text);
  return guarded([&] {
    std::string s;
    for (const auto& e : vmp::deriveEvents(trace->value)) {
      s += vmp::toString(e);
      s += '\n';
    }
    *text = dupString(s);
  });
}

vmp_status vmp_adapt_duration(const vmp_trace* trace, int64_t target_duration, uint64_t seed, vmp_trace** out) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(out);
  return guarded([&] { *out = new vmp_trace{vmp::adaptDuration(trace->value, target_duration, seed)}; });
}

vmp_status vmp_fit_config(const vmp_trace* trace, vmp_config** out) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(out);
  return guarded([&] { *out = new vmp_config{vmp::fitConfig(trace->value)}; });
}

// ---- configs

vmp_status vmp_config_create_default(vmp_config** out) {
  VMP_REQUIRE(out);
  return guarded([&] { *out = new vmp_config{}; });
}

vmp_status vmp_config_read_file(const char* path, vmp_config** out) {
  VMP_REQUIRE(path);
  VMP_REQUIRE(out);
  return guarded([&] {
    auto in = openInput(path);
    *out = new vmp_config{vmp::readConfig(in)};
  });
}

vmp_status vmp_config_read_buffer(const char* data, size_t size, vmp_config** out) {
  VMP_REQUIRE(out);
  if (size > 0 && data == nullptr) return nullArgument("data");
  return guarded([&] {
    *out = new vmp_config{vmp::readConfigString(std::string_view(data == nullptr ? "" : data, size))};
  });
}

vmp_status vmp_config_write_file(const vmp_config* config, const char* path) {
  VMP_REQUIRE(config);
  VMP_REQUIRE(path);
  return guarded([&] {
    auto out = openOutput(path);
    vmp::writeConfig(config->value, out);
    closeOutput(out, path);
  });
}

vmp_status vmp_config_write_buffer(const vmp_config* config, char** data, size_t* size) {
  VMP_REQUIRE(config);
  VMP_REQUIRE(data);
  return guarded([&] { *data = dupString(vmp::writeConfigString(config->value), size); });
}

vmp_status vmp_config_set_seed(vmp_config* config, uint64_t seed) {
  VMP_REQUIRE(config);
  config->value.seed = seed;
  return VMP_OK;
}

vmp_status vmp_config_get_seed(const vmp_config* config, uint64_t* seed, int* has_seed) {
  VMP_REQUIRE(config);
  VMP_REQUIRE(seed);
  VMP_REQUIRE(has_seed);
  *has_seed = config->value.seed.has_value() ? 1 : 0;
  *seed = config->value.seed.value_or(0);
  return VMP_OK;
}

vmp_status vmp_config_set_environment(vmp_config* config, vmp_environment env) {
  VMP_REQUIRE(config);
  return guarded([&] { config->value.environment = toEnv(env); });
}

vmp_status vmp_config_get_environment(const vmp_config* config, vmp_environment* env, int* has_env) {
  VMP_REQUIRE(config);
  VMP_REQUIRE(env);
  VMP_REQUIRE(has_env);
  *has_env = config->value.environment.has_value() ? 1 : 0;
  *env = fromEnv(config->value.environment.value_or(vmp::EnvironmentCoordinate{}));
  return VMP_OK;
}

void vmp_config_free(vmp_config* config) { delete config; }

vmp_status vmp_generate(const vmp_config* config, vmp_trace** out) {
  VMP_REQUIRE(config);
  VMP_REQUIRE(out);
  return guarded([&] { *out = new vmp_trace{vmp::generate(config->value)}; });
}

// ---- fleets

vmp_status vmp_fleet_create(vmp_fleet** out) {
  VMP_REQUIRE(out);
  return guarded([&] { *out = new vmp_fleet{}; });
}

vmp_status vmp_fleet_add_machines(vmp_fleet* fleet, int64_t datacenter, size_t count, int64_t pcpu, int64_t pram,
                                  int64_t pnet) {
  VMP_REQUIRE(fleet);
  return guarded([&] { fleet->value.addMachines(datacenter, count, vmp::Resources{pcpu, pram, pnet}); });
}

vmp_status vmp_fleet_set_ratios(vmp_fleet* fleet, double cpu, double ram, double net) {
  VMP_REQUIRE(fleet);
  if (!(cpu >= 1.0) || !(ram >= 1.0) || !(net >= 1.0)) {
    return fail(VMP_ERR_USAGE, "argument", "overbooking ratios must be >= 1");
  }
  fleet->value.ratios = {cpu, ram, net};
  return VMP_OK;
}

vmp_status vmp_fleet_read_file(const char* path, vmp_fleet** out) {
  VMP_REQUIRE(path);
  VMP_REQUIRE(out);
  return guarded([&] {
    auto in = openInput(path);
    *out = new vmp_fleet{vmp::readFleet(in)};
  });
}

vmp_status vmp_fleet_read_buffer(const char* data, size_t size, vmp_fleet** out) {
  VMP_REQUIRE(out);
  if (size > 0 && data == nullptr) return nullArgument("data");
  return guarded([&] {
    *out = new vmp_fleet{vmp::readFleetString(std::string_view(data == nullptr ? "" : data, size))};
  });
}

vmp_status vmp_fleet_default_for(const vmp_trace* trace, vmp_fleet** out) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(out);
  return guarded([&] { *out = new vmp_fleet{vmp::DatacenterFleet::defaultFor(trace->value)}; });
}

void vmp_fleet_free(vmp_fleet* fleet) { delete fleet; }

// ---- simulation

vmp_status vmp_simulate(const vmp_trace* trace, const vmp_fleet* fleet, const char* algorithm,
                        vmp_sim_result** out) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(fleet);
  VMP_REQUIRE(algorithm);
  VMP_REQUIRE(out);
  vmp::PlacementAlgorithm algo;
  vmp_status st = guarded([&] { algo = vmp::algorithmByName(algorithm); });
  if (st != VMP_OK) return st;
  return runSimulation(trace, fleet, algo, out);
}

vmp_status vmp_simulate_custom(const vmp_trace* trace, const vmp_fleet* fleet, vmp_place_fn place, void* user_data,
                               vmp_sim_result** out) {
  VMP_REQUIRE(trace);
  VMP_REQUIRE(fleet);
  VMP_REQUIRE(place);
  VMP_REQUIRE(out);
  vmp::PlacementAlgorithm algo = [place, user_data](const vmp::VmDemand& vm,
                                                    const vmp::DatacenterState& dc) -> std::optional<std::size_t> {
    vmp_vm_demand d{vm.id.service,       vm.id.datacenter,    vm.id.index,         vm.capacity.cpu,
                    vm.capacity.ram,     vm.capacity.net,     vm.utilization.cpu,  vm.utilization.ram,
                    vm.utilization.net,  vm.sla};
    std::vector<vmp_pm_load> loads(dc.size());
    for (std::size_t i = 0; i < dc.size(); ++i) {
      const auto& pm = dc.pm(i);
      loads[i] = vmp_pm_load{pm.machine.datacenter,
                             pm.machine.index,
                             pm.machine.capacity.cpu,
                             pm.machine.capacity.ram,
                             pm.machine.capacity.net,
                             pm.committedCapacity.cpu,
                             pm.committedCapacity.ram,
                             pm.committedCapacity.net,
                             pm.committedUtilization.cpu,
                             pm.committedUtilization.ram,
                             pm.committedUtilization.net,
                             pm.vmCount,
                             dc.admits(i, vm) ? 1 : 0};
    }
    int64_t pick = place(&d, loads.data(), loads.size(), user_data);
    // Out-of-range picks are passed through so the simulator reports them.
    if (pick < 0) return std::nullopt;
    return static_cast<std::size_t>(pick);
  };
  return runSimulation(trace, fleet, algo, out);
}

vmp_status vmp_sim_result_metrics(const vmp_sim_result* result, vmp_metrics* metrics) {
  VMP_REQUIRE(result);
  VMP_REQUIRE(metrics);
  const auto& m = result->value.metrics;
  *metrics = vmp_metrics{m.totalRevenue.cents(),
                         m.placedVmSteps,
                         m.totalRejections(),
                         m.resizeRejections,
                         m.slaViolationSteps,
                         m.migrations,
                         m.activePmSteps,
                         m.peakUtilization[0],
                         m.peakUtilization[1],
                         m.peakUtilization[2]};
  return VMP_OK;
}

vmp_status vmp_sim_result_rejections_for_sla(const vmp_sim_result* result, int64_t sla, uint64_t* count) {
  VMP_REQUIRE(result);
  VMP_REQUIRE(count);
  const auto& by = result->value.metrics.rejectionsBySla;
  auto it = by.find(sla);
  *count = it == by.end() ? 0 : it->second;
  return VMP_OK;
}

vmp_status vmp_sim_result_metrics_csv(const vmp_sim_result* result, char** data, size_t* size) {
  VMP_REQUIRE(result);
  VMP_REQUIRE(data);
  return guarded([&] {
    std::ostringstream os;
    vmp::writeMetricsCsv(result->value.metrics, os);
    *data = dupString(os.str(), size);
  });
}

vmp_status vmp_sim_result_log_csv(const vmp_sim_result* result, char** data, size_t* size) {
  VMP_REQUIRE(result);
  VMP_REQUIRE(data);
  return guarded([&] {
    std::ostringstream os;
    vmp::writePlacementLogCsv(result->value.log, os);
    *data = dupString(os.str(), size);
  });
}

void vmp_sim_result_free(vmp_sim_result* result) { delete result; }

}  // extern "C"
