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

#include "vmp/classifier.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "vmp/events.hpp"
#include "vmp/trace_io.hpp"

namespace vmp {

namespace {

EnvironmentCoordinate classifyWith(const WorkloadTrace& trace, const std::vector<ServiceEvent>& events) {
  int elasticity = 0;
  int overbooking = 0;
  for (const auto& e : events) {
    if (e.kind == EventKind::kVmAdd || e.kind == EventKind::kVmRemove) elasticity |= kHorizontalElasticity;
    if (e.kind == EventKind::kVerticalResize) elasticity |= kVerticalElasticity;
  }
  for (const auto& r : trace.rows()) {
    if (r.utilization.cpu < r.capacity.cpu || r.utilization.ram < r.capacity.ram) {
      overbooking |= kServerOverbooking;
    }
    if (r.utilization.net < r.capacity.net) overbooking |= kNetworkOverbooking;
  }
  return EnvironmentCoordinate(elasticity, overbooking);
}

}  // namespace

EnvironmentCoordinate classify(const WorkloadTrace& trace) {
  return classifyWith(trace, deriveEvents(trace));
}

DynamicsReport dynamicsReport(const WorkloadTrace& trace) {
  const auto events = deriveEvents(trace);
  DynamicsReport report;
  report.environment = classifyWith(trace, events);

  std::map<std::int64_t, ServiceDynamics> byService;
  std::map<std::int64_t, std::size_t> rowCounts;
  std::map<std::int64_t, std::array<double, 3>> ratioSums;
  for (const auto& r : trace.rows()) {
    auto [it, inserted] = byService.try_emplace(r.vm.service);
    auto& s = it->second;
    if (inserted) {
      s.service = r.vm.service;
      s.firstT = r.t;
      s.lastT = r.t;
      for (auto& u : s.utilization) u = UtilizationRatio{1.0, 0.0};
      ratioSums[s.service] = {0.0, 0.0, 0.0};
    }
    s.firstT = std::min(s.firstT, r.t);
    s.lastT = std::max(s.lastT, r.t);
    ++rowCounts[s.service];
    for (auto res : kAllResources) {
      const auto idx = static_cast<std::size_t>(res);
      const double ratio = static_cast<double>(r.utilization[res]) / static_cast<double>(r.capacity[res]);
      s.utilization[idx].min = std::min(s.utilization[idx].min, ratio);
      ratioSums[s.service][idx] += ratio;
    }
  }

  std::map<VmId, Resources> lastCapacity;
  for (const auto& e : events) {
    if (e.kind == EventKind::kServiceCreate) {
      for (const auto& v : e.initialVms) lastCapacity[v.id] = v.capacity;
      continue;
    }
    if (!e.vm) continue;
    auto& s = byService[e.service];
    switch (e.kind) {
      case EventKind::kVmAdd:
        ++s.vmAdds;
        lastCapacity[e.vm->id] = e.vm->capacity;
        break;
      case EventKind::kVmRemove:
        ++s.vmRemoves;
        break;
      case EventKind::kVerticalResize:
        s.resizes.push_back({e.t, e.vm->id, lastCapacity[e.vm->id], e.vm->capacity});
        lastCapacity[e.vm->id] = e.vm->capacity;
        break;
      default:
        break;
    }
  }

  for (auto& [b, s] : byService) {
    for (Time t = s.firstT; t <= s.lastT; ++t) s.vmCounts.push_back(trace.serviceVmCount(b, t));
    const double n = static_cast<double>(rowCounts[b]);
    for (std::size_t i = 0; i < 3; ++i) s.utilization[i].mean = ratioSums[b][i] / n;
    report.services.push_back(std::move(s));
  }
  return report;
}

std::string DynamicsReport::toString() const {
  std::string out = "environment " + environment.toString() + " (time variables: " +
                    timeVariables(environment).toString() + ")\n";
  char buf[128];
  for (const auto& s : services) {
    out += "service " + std::to_string(s.service) + ": lifetime [" + std::to_string(s.firstT) + ", " +
           std::to_string(s.lastT) + "], mS =";
    for (auto c : s.vmCounts) out += " " + std::to_string(c);
    out += ", vm adds " + std::to_string(s.vmAdds) + ", vm removes " + std::to_string(s.vmRemoves) +
           ", vertical resizes " + std::to_string(s.verticalResizes()) + "\n";
    for (const auto& r : s.resizes) {
      out += "  resize t=" + std::to_string(r.t) + " vm " + vmp::toString(r.vm) + ": cpu " +
             std::to_string(r.from.cpu) + "->" + std::to_string(r.to.cpu) + ", ram " +
             std::to_string(r.from.ram) + "->" + std::to_string(r.to.ram) + ", net " +
             std::to_string(r.from.net) + "->" + std::to_string(r.to.net) + "\n";
    }
    for (auto res : kAllResources) {
      const auto& u = s.ratio(res);
      std::snprintf(buf, sizeof(buf), "  %s utilization ratio: min %.4f, mean %.4f\n",
                    std::string(resourceName(res)).c_str(), u.min, u.mean);
      out += buf;
    }
  }
  return out;
}

}  // namespace vmp
