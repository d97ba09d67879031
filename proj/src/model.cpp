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

#include "vmp/model.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <set>

#include "vmp/error.hpp"

namespace vmp {

std::string_view timeVariableName(TimeVariable v) noexcept {
  switch (v) {
    case TimeVariable::kServiceVmCount: return "mS";
    case TimeVariable::kVcpu: return "Vcpu";
    case TimeVariable::kVram: return "Vram";
    case TimeVariable::kUcpu: return "Ucpu";
    case TimeVariable::kUram: return "Uram";
    case TimeVariable::kUnet: return "Unet";
  }
  return "?";
}

std::size_t TimeVariableSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<TimeVariable> TimeVariableSet::members() const {
  std::vector<TimeVariable> out;
  for (auto v : kAllTimeVariables) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

std::string TimeVariableSet::toString() const {
  if (empty()) return "-";
  std::string out;
  for (auto v : members()) {
    if (!out.empty()) out += ", ";
    out += timeVariableName(v);
  }
  return out;
}

EnvironmentCoordinate::EnvironmentCoordinate(int elasticity, int overbooking)
    : elasticity_(elasticity), overbooking_(overbooking) {
  if (elasticity < 0 || elasticity > 3 || overbooking < 0 || overbooking > 3) {
    throw Error(ErrorCode::kArgument, "environment coordinate out of range: (" +
                                          std::to_string(elasticity) + "," +
                                          std::to_string(overbooking) + ")");
  }
}

std::string EnvironmentCoordinate::toString() const {
  return std::to_string(elasticity_) + "," + std::to_string(overbooking_);
}

EnvironmentCoordinate EnvironmentCoordinate::parse(std::string_view text) {
  auto bad = [&] {
    return Error(ErrorCode::kArgument,
                 "environment must be \"e,o\" with e,o in 0..3, got \"" + std::string(text) + "\"");
  };
  if (!text.empty() && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  if (text.size() != 3 || text[1] != ',') throw bad();
  const char e = text[0];
  const char o = text[2];
  if (e < '0' || e > '3' || o < '0' || o > '3') throw bad();
  return EnvironmentCoordinate(e - '0', o - '0');
}

std::array<EnvironmentCoordinate, 16> allEnvironments() {
  std::array<EnvironmentCoordinate, 16> out;
  for (int e = 0; e < 4; ++e) {
    for (int o = 0; o < 4; ++o) out[static_cast<std::size_t>(e * 4 + o)] = EnvironmentCoordinate(e, o);
  }
  return out;
}

TimeVariableSet timeVariables(EnvironmentCoordinate env) {
  TimeVariableSet vars;
  if (env.horizontal()) vars.insert(TimeVariable::kServiceVmCount);
  if (env.vertical()) {
    vars.insert(TimeVariable::kVcpu);
    vars.insert(TimeVariable::kVram);
  }
  if (env.serverOverbooking()) {
    vars.insert(TimeVariable::kUcpu);
    vars.insert(TimeVariable::kUram);
  }
  if (env.networkOverbooking()) vars.insert(TimeVariable::kUnet);
  return vars;
}

bool covers(EnvironmentCoordinate a, EnvironmentCoordinate b) {
  return timeVariables(a).isSupersetOf(timeVariables(b));
}

EnvironmentCoordinate join(EnvironmentCoordinate a, EnvironmentCoordinate b) {
  return EnvironmentCoordinate(a.elasticity() | b.elasticity(), a.overbooking() | b.overbooking());
}

std::string Money::toString() const {
  const std::int64_t whole = cents_ / 100;
  std::int64_t frac = cents_ % 100;
  std::string out = std::to_string(whole);
  if (cents_ < 0) {
    // Not produced by the parser; render sign-correctly anyway.
    out = "-" + std::to_string(-whole);
    frac = -frac;
  }
  if (frac == 0) return out;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  if (frac % 10 != 0) out += static_cast<char>('0' + frac % 10);
  return out;
}

std::optional<Money> Money::parse(std::string_view text) {
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || whole.size() > 15) return std::nullopt;
  if (dot != std::string_view::npos && (frac.empty() || frac.size() > 2)) return std::nullopt;
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits(whole) || !digits(frac)) return std::nullopt;
  std::int64_t w = 0;
  std::from_chars(whole.data(), whole.data() + whole.size(), w);
  std::int64_t f = 0;
  if (!frac.empty()) {
    f = (frac[0] - '0') * 10;
    if (frac.size() == 2) f += frac[1] - '0';
  }
  return Money::fromCents(w * 100 + f);
}

std::string_view resourceName(Resource r) noexcept {
  switch (r) {
    case Resource::kCpu: return "cpu";
    case Resource::kRam: return "ram";
    case Resource::kNet: return "net";
  }
  return "?";
}

std::string toString(const VmId& id) {
  return "(" + std::to_string(id.service) + "," + std::to_string(id.datacenter) + "," +
         std::to_string(id.index) + ")";
}

bool rowOrderLess(const TraceRow& a, const TraceRow& b) {
  if (a.t != b.t) return a.t < b.t;
  return a.vm < b.vm;
}

WorkloadTrace::WorkloadTrace(std::vector<TraceRow> rows) : rows_(std::move(rows)) {
  std::stable_sort(rows_.begin(), rows_.end(), rowOrderLess);
}

Time WorkloadTrace::duration() const { return rows_.empty() ? 0 : rows_.back().t; }

std::span<const TraceRow> WorkloadTrace::rowsAt(Time t) const {
  auto lo = std::lower_bound(rows_.begin(), rows_.end(), t,
                             [](const TraceRow& r, Time v) { return r.t < v; });
  auto hi = std::upper_bound(lo, rows_.end(), t, [](Time v, const TraceRow& r) { return v < r.t; });
  return {std::to_address(lo), static_cast<std::size_t>(hi - lo)};
}

std::vector<std::int64_t> WorkloadTrace::services() const {
  std::set<std::int64_t> ids;
  for (const auto& r : rows_) ids.insert(r.vm.service);
  return {ids.begin(), ids.end()};
}

std::int64_t WorkloadTrace::maxDatacenter() const {
  std::int64_t m = 0;
  for (const auto& r : rows_) m = std::max(m, r.vm.datacenter);
  return m;
}

std::size_t WorkloadTrace::serviceVmCount(std::int64_t service, Time t) const {
  const auto step = rowsAt(t);
  return static_cast<std::size_t>(std::count_if(
      step.begin(), step.end(), [&](const TraceRow& r) { return r.vm.service == service; }));
}

std::size_t WorkloadTrace::datacenterVmCount(std::int64_t datacenter, Time t) const {
  const auto step = rowsAt(t);
  return static_cast<std::size_t>(std::count_if(
      step.begin(), step.end(), [&](const TraceRow& r) { return r.vm.datacenter == datacenter; }));
}

std::vector<VmRecord> WorkloadTrace::vmRecords() const {
  std::map<VmId, VmRecord> byId;
  for (const auto& r : rows_) {
    auto [it, inserted] = byId.try_emplace(r.vm);
    if (inserted) {
      it->second = VmRecord{r.vm, r.capacity, r.revenue, r.sla, r.t, r.t};
    } else {
      it->second.tEnd = std::max(it->second.tEnd, r.t);
      it->second.tInit = std::min(it->second.tInit, r.t);
    }
  }
  std::vector<VmRecord> out;
  out.reserve(byId.size());
  for (auto& [id, rec] : byId) out.push_back(rec);
  return out;
}

std::string_view distributionName(Distribution d) noexcept {
  switch (d) {
    case Distribution::kUniform: return "uniform";
    case Distribution::kNormalTruncated: return "normal-truncated";
    case Distribution::kExponentialTruncated: return "exponential-truncated";
  }
  return "?";
}

std::optional<Distribution> parseDistribution(std::string_view name) {
  if (name == "uniform" || name == "random") return Distribution::kUniform;
  if (name == "normal-truncated") return Distribution::kNormalTruncated;
  if (name == "exponential-truncated") return Distribution::kExponentialTruncated;
  return std::nullopt;
}

std::string_view verticalStepModeName(VerticalStepMode m) noexcept {
  return m == VerticalStepMode::kResample ? "resample" : "halve-double";
}

std::optional<VerticalStepMode> parseVerticalStepMode(std::string_view name) {
  if (name == "resample") return VerticalStepMode::kResample;
  if (name == "halve-double") return VerticalStepMode::kHalveDouble;
  return std::nullopt;
}

namespace {

void checkRange(const char* name, std::int64_t min, std::int64_t max, std::int64_t floor) {
  if (min > max) {
    throw Error(ErrorCode::kRange, std::string(name) + ": min " + std::to_string(min) +
                                       " > max " + std::to_string(max));
  }
  if (min < floor) {
    throw Error(ErrorCode::kRange, std::string(name) + ": min " + std::to_string(min) +
                                       " below " + std::to_string(floor));
  }
}

}  // namespace

void GeneratorConfig::validate() const {
  checkRange("duration", duration.min, duration.max, 0);
  checkRange("vcpu", vcpu.min, vcpu.max, 1);
  checkRange("vram", vram.min, vram.max, 1);
  checkRange("vnet", vnet.min, vnet.max, 1);
  checkRange("ucpu", ucpu.min, ucpu.max, 0);
  checkRange("uram", uram.min, uram.max, 0);
  checkRange("unet", unet.min, unet.max, 0);
  checkRange("revenue", revenue.min.cents(), revenue.max.cents(), 0);
  checkRange("sla", sla.min, sla.max, 0);
  checkRange("vms", vmsPerService.min, vmsPerService.max, 1);
  checkRange("services", serviceCount.min, serviceCount.max, 0);
  if (datacenterCount < 1) {
    throw Error(ErrorCode::kRange, "datacenters must be >= 1, got " + std::to_string(datacenterCount));
  }
  if (!(elasticityEventProbability >= 0.0 && elasticityEventProbability <= 1.0)) {
    throw Error(ErrorCode::kRange, "elasticity_probability must be in [0,1]");
  }
}

std::string_view eventKindName(EventKind k) noexcept {
  switch (k) {
    case EventKind::kServiceCreate: return "service-create";
    case EventKind::kVmAdd: return "vm-add";
    case EventKind::kVmRemove: return "vm-remove";
    case EventKind::kVerticalResize: return "vertical-resize";
    case EventKind::kServiceDestroy: return "service-destroy";
  }
  return "?";
}

std::string toString(const ServiceEvent& e) {
  const std::string at = "@" + std::to_string(e.t);
  const std::string vm = e.vm ? "V" + toString(e.vm->id) : std::string("V?");
  switch (e.kind) {
    case EventKind::kServiceCreate: return "+S_" + std::to_string(e.service) + at;
    case EventKind::kServiceDestroy: return "-S_" + std::to_string(e.service) + at;
    case EventKind::kVmAdd: return "+" + vm + at;
    case EventKind::kVmRemove: return "-" + vm + at;
    case EventKind::kVerticalResize: return "~" + vm + at;
  }
  return "?";
}

}  // namespace vmp
