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


#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "vmp/vmp.h"

namespace vmpcli {
namespace {

struct Failure {
  int exitCode;
  std::string kind;
  std::string message;
};

int exitFor(vmp_status status) {
  switch (status) {
    case VMP_ERR_INVALID:
      return kExitInvalid;
    case VMP_ERR_CONTRACT:
      return kExitContract;
    default:
      return kExitUsage;
  }
}

void check(vmp_status status) {
  if (status != VMP_OK) throw Failure{exitFor(status), vmp_last_error_kind(), vmp_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Trace = std::unique_ptr<vmp_trace, Deleter<vmp_trace, vmp_trace_free>>;
using Config = std::unique_ptr<vmp_config, Deleter<vmp_config, vmp_config_free>>;
using Fleet = std::unique_ptr<vmp_fleet, Deleter<vmp_fleet, vmp_fleet_free>>;
using SimResult = std::unique_ptr<vmp_sim_result, Deleter<vmp_sim_result, vmp_sim_result_free>>;

std::string take(char* s) {
  std::string out = s == nullptr ? std::string() : std::string(s);
  vmp_string_free(s);
  return out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out + "\"";
}

std::string envText(vmp_environment env) {
  return std::to_string(env.elasticity) + "," + std::to_string(env.overbooking);
}

std::string money(std::int64_t cents) {
  std::string out = std::to_string(cents / 100);
  std::int64_t frac = cents % 100;
  if (frac == 0) return out;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  if (frac % 10 != 0) out += static_cast<char>('0' + frac % 10);
  return out;
}

Trace readTrace(const std::string& path) {
  vmp_trace* t = nullptr;
  check(vmp_trace_read_file(path.c_str(), &t, nullptr));
  return Trace(t);
}

void writeText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Failure{kExitUsage, "io", "cannot write " + path};
}

vmp_environment parseEnv(const std::string& text) {
  vmp_environment env{};
  check(vmp_environment_parse(text.c_str(), &env));
  return env;
}

int cmdEnvs(std::ostream& out) {
  for (int e = 0; e < 4; ++e) {
    for (int o = 0; o < 4; ++o) {
      char* vars = nullptr;
      check(vmp_time_variables_text(vmp_environment{e, o}, &vars));
      out << "(" << e << "," << o << ") " << take(vars) << "\n";
    }
  }
  return kExitOk;
}

struct GenerateArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::string env;
  CLI::Option* seedOpt = nullptr;
  CLI::Option* envOpt = nullptr;
};

int cmdGenerate(const GenerateArgs& a, std::ostream& out) {
  vmp_config* raw = nullptr;
  check(vmp_config_read_file(a.config.c_str(), &raw));
  Config config(raw);
  if (*a.seedOpt) check(vmp_config_set_seed(config.get(), a.seed));
  if (*a.envOpt) check(vmp_config_set_environment(config.get(), parseEnv(a.env)));

  std::uint64_t seed = 0;
  int hasSeed = 0;
  check(vmp_config_get_seed(config.get(), &seed, &hasSeed));
  vmp_environment env{};
  int hasEnv = 0;
  check(vmp_config_get_environment(config.get(), &env, &hasEnv));
  if (!hasSeed) throw Failure{kExitUsage, "argument", "no seed: pass --seed or set seed in the config"};
  if (!hasEnv) throw Failure{kExitUsage, "argument", "no environment: pass --env or set environment in the config"};

  vmp_trace* t = nullptr;
  check(vmp_generate(config.get(), &t));
  Trace trace(t);
  check(vmp_trace_write_file(trace.get(), a.out.c_str()));
  out << "seed=" << seed << " env=" << envText(env) << " rows=" << vmp_trace_row_count(trace.get())
      << " duration=" << vmp_trace_duration(trace.get()) << " out=" << a.out << "\n";
  return kExitOk;
}

int cmdValidate(const std::string& path, std::ostream& out) {
  Trace trace = readTrace(path);
  size_t count = 0;
  char* report = nullptr;
  check(vmp_trace_validate(trace.get(), &count, &report));
  out << take(report) << "\n";
  return count == 0 ? kExitOk : kExitInvalid;
}

int cmdClassify(const std::string& path, std::ostream& out) {
  Trace trace = readTrace(path);
  vmp_environment env{};
  check(vmp_classify(trace.get(), &env));
  char* report = nullptr;
  check(vmp_dynamics_report(trace.get(), &report));
  out << envText(env) << "\n" << take(report);
  return kExitOk;
}

struct AdaptArgs {
  std::int64_t duration = 0;
  std::uint64_t seed = 0;
  std::string in;
  std::string out;
};

int cmdAdapt(const AdaptArgs& a, std::ostream& out) {
  Trace trace = readTrace(a.in);
  vmp_trace* t = nullptr;
  check(vmp_adapt_duration(trace.get(), a.duration, a.seed, &t));
  Trace adapted(t);
  check(vmp_trace_write_file(adapted.get(), a.out.c_str()));
  out << "seed=" << a.seed << " duration=" << vmp_trace_duration(adapted.get())
      << " rows=" << vmp_trace_row_count(adapted.get()) << " out=" << a.out << "\n";
  return kExitOk;
}

int cmdFitConfig(const std::string& in, const std::string& outPath, std::ostream& out) {
  Trace trace = readTrace(in);
  vmp_config* raw = nullptr;
  check(vmp_fit_config(trace.get(), &raw));
  Config config(raw);
  check(vmp_config_write_file(config.get(), outPath.c_str()));
  vmp_environment env{};
  int hasEnv = 0;
  check(vmp_config_get_environment(config.get(), &env, &hasEnv));
  out << "env=" << (hasEnv ? envText(env) : std::string("-")) << " out=" << outPath << "\n";
  return kExitOk;
}

struct SimulateArgs {
  std::string trace;
  std::string fleet;
  std::string algo = "first-fit";
  std::string out;
  std::string log;
};

int cmdSimulate(const SimulateArgs& a, std::ostream& out) {
  Trace trace = readTrace(a.trace);
  vmp_fleet* f = nullptr;
  if (a.fleet.empty()) {
    check(vmp_fleet_default_for(trace.get(), &f));
  } else {
    check(vmp_fleet_read_file(a.fleet.c_str(), &f));
  }
  Fleet fleet(f);
  vmp_sim_result* r = nullptr;
  check(vmp_simulate(trace.get(), fleet.get(), a.algo.c_str(), &r));
  SimResult result(r);

  vmp_metrics m{};
  check(vmp_sim_result_metrics(result.get(), &m));
  if (!a.out.empty()) {
    char* csv = nullptr;
    check(vmp_sim_result_metrics_csv(result.get(), &csv, nullptr));
    writeText(a.out, take(csv));
  }
  if (!a.log.empty()) {
    char* csv = nullptr;
    check(vmp_sim_result_log_csv(result.get(), &csv, nullptr));
    writeText(a.log, take(csv));
  }
  out << "algo=" << a.algo << " revenue=" << money(m.total_revenue_cents) << " placed_vm_steps=" << m.placed_vm_steps
      << " rejections=" << m.rejections << " resize_rejections=" << m.resize_rejections
      << " sla_violation_steps=" << m.sla_violation_steps << " migrations=" << m.migrations << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workload traces for dynamic VM placement: generate, inspect, adapt and replay."};
  app.name("vmpgen");
  app.require_subcommand(1);

  auto* envs = app.add_subcommand("envs", "List the 16 environments and their time-varying variables");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a trace from a config file");
  generate->add_option("--config", gen.config, "Generator config (key=value)")->required();
  generate->add_option("--out", gen.out, "Output trace")->required();
  gen.seedOpt = generate->add_option("--seed", gen.seed, "Override the config seed");
  gen.envOpt = generate->add_option("--env", gen.env, "Override the config environment, e.g. 1,2");

  std::string validatePath;
  auto* validate = app.add_subcommand("validate", "Check a trace for structural violations");
  validate->add_option("trace", validatePath)->required();

  std::string classifyPath;
  auto* classify = app.add_subcommand("classify", "Print the environment of a trace and its dynamics");
  classify->add_option("trace", classifyPath)->required();

  AdaptArgs ad;
  auto* adapt = app.add_subcommand("adapt", "Truncate or extend a trace to a new duration");
  adapt->add_option("--duration", ad.duration)->required();
  adapt->add_option("--seed", ad.seed)->required();
  adapt->add_option("in", ad.in)->required();
  adapt->add_option("out", ad.out)->required();

  std::string fitIn, fitOut;
  auto* fit = app.add_subcommand("fit-config", "Derive a generator config from a trace");
  fit->add_option("in", fitIn)->required();
  fit->add_option("out", fitOut)->required();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Replay a trace against a fleet with a placement heuristic");
  simulate->add_option("--trace", sim.trace)->required();
  simulate->add_option("--fleet", sim.fleet, "Fleet file; sized from the trace when omitted");
  simulate->add_option("--algo", sim.algo)->check(CLI::IsMember({"first-fit", "best-fit", "worst-fit"}));
  simulate->add_option("--out", sim.out, "Metrics CSV");
  simulate->add_option("--log", sim.log, "Placement log CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << "error code=usage message=" << quoted(e.what()) << "\n";
    return kExitUsage;
  }

  try {
    if (*envs) return cmdEnvs(out);
    if (*generate) return cmdGenerate(gen, out);
    if (*validate) return cmdValidate(validatePath, out);
    if (*classify) return cmdClassify(classifyPath, out);
    if (*adapt) return cmdAdapt(ad, out);
    if (*fit) return cmdFitConfig(fitIn, fitOut, out);
    if (*simulate) return cmdSimulate(sim, out);
  } catch (const Failure& f) {
    err << "error code=" << f.kind << " message=" << quoted(f.message) << "\n";
    return f.exitCode;
  }
  return kExitUsage;
}

}  // namespace vmpcli
