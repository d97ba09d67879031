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

#include "vmp/events.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "vmp/error.hpp"
#include "vmp/trace_io.hpp"

namespace vmp {

std::size_t TimelineStep::serviceVmCount(std::int64_t service) const {
  return static_cast<std::size_t>(std::count_if(
      active.begin(), active.end(), [&](const VmSpec& v) { return v.id.service == service; }));
}

std::vector<std::size_t> Timeline::serviceVmCounts(std::int64_t service) const {
  std::vector<std::size_t> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.serviceVmCount(service));
  return out;
}

namespace {

VmSpec specOf(const TraceRow& r) { return VmSpec{r.vm, r.capacity, r.revenue, r.sla}; }

using StepMap = std::map<VmId, const TraceRow*>;

StepMap indexStep(std::span<const TraceRow> rows) {
  StepMap m;
  for (const auto& r : rows) m.emplace(r.vm, &r);
  return m;
}

std::set<std::int64_t> servicesOf(const StepMap& m) {
  std::set<std::int64_t> s;
  for (const auto& [id, row] : m) s.insert(id.service);
  return s;
}

ServiceEvent vmEvent(Time t, EventKind kind, VmSpec spec) {
  ServiceEvent e;
  e.t = t;
  e.kind = kind;
  e.service = spec.id.service;
  e.vm = std::move(spec);
  return e;
}

}  // namespace

std::vector<ServiceEvent> deriveEvents(const WorkloadTrace& trace) {
  requireValid(trace);
  std::vector<ServiceEvent> events;
  if (trace.empty()) return events;

  StepMap prev;
  std::set<std::int64_t> prevServices;
  for (Time t = 0; t <= trace.duration() + 1; ++t) {
    const StepMap cur = indexStep(trace.rowsAt(t));
    const std::set<std::int64_t> curServices = servicesOf(cur);
    std::vector<ServiceEvent> step;

    for (auto b : curServices) {
      if (prevServices.contains(b)) continue;
      ServiceEvent e;
      e.t = t;
      e.kind = EventKind::kServiceCreate;
      e.service = b;
      for (const auto& [id, row] : cur) {
        if (id.service == b) e.initialVms.push_back(specOf(*row));
      }
      step.push_back(std::move(e));
    }
    for (const auto& [id, row] : cur) {
      if (!prevServices.contains(id.service)) continue;
      auto it = prev.find(id);
      if (it == prev.end()) {
        step.push_back(vmEvent(t, EventKind::kVmAdd, specOf(*row)));
      } else if (!(it->second->capacity == row->capacity)) {
        step.push_back(vmEvent(t, EventKind::kVerticalResize, specOf(*row)));
      }
    }
    for (const auto& [id, row] : prev) {
      if (curServices.contains(id.service) && !cur.contains(id)) {
        step.push_back(vmEvent(t, EventKind::kVmRemove, specOf(*row)));
      }
    }
    for (auto b : prevServices) {
      if (curServices.contains(b)) continue;
      ServiceEvent e;
      e.t = t;
      e.kind = EventKind::kServiceDestroy;
      e.service = b;
      step.push_back(std::move(e));
    }

    std::stable_sort(step.begin(), step.end(), [](const ServiceEvent& a, const ServiceEvent& b) {
      const VmId ia = a.vm ? a.vm->id : VmId{a.service, 0, 0};
      const VmId ib = b.vm ? b.vm->id : VmId{b.service, 0, 0};
      return std::tie(a.kind, ia) < std::tie(b.kind, ib);
    });
    for (auto& e : step) events.push_back(std::move(e));
    prev = cur;
    prevServices = curServices;
  }
  return events;
}

Timeline applyEvents(std::span<const ServiceEvent> events) {
  Timeline timeline;
  if (events.empty()) return timeline;

  std::map<std::int64_t, std::map<VmId, VmSpec>> live;
  auto fail = [](const ServiceEvent& e, const std::string& why) {
    return Error(ErrorCode::kCausality, "causality violation at t=" + std::to_string(e.t) + ", event " +
                                            toString(e) + ": " + why);
  };
  auto snapshot = [&](Time t) {
    TimelineStep s;
    s.t = t;
    for (const auto& [b, vms] : live) {
      for (const auto& [id, spec] : vms) s.active.push_back(spec);
    }
    std::sort(s.active.begin(), s.active.end(),
              [](const VmSpec& a, const VmSpec& b) { return a.id < b.id; });
    timeline.steps.push_back(std::move(s));
  };

  Time current = 0;
  for (const auto& e : events) {
    if (e.t < current) throw fail(e, "time goes backwards (previous t=" + std::to_string(current) + ")");
    if (e.t < 0) throw fail(e, "negative time");
    while (current < e.t) snapshot(current++);

    auto svc = live.find(e.service);
    switch (e.kind) {
      case EventKind::kServiceCreate: {
        if (svc != live.end()) throw fail(e, "service already live");
        if (e.initialVms.empty()) throw fail(e, "service created without VMs");
        auto& vms = live[e.service];
        for (const auto& spec : e.initialVms) {
          if (spec.id.service != e.service) throw fail(e, "initial VM belongs to another service");
          if (!vms.emplace(spec.id, spec).second) throw fail(e, "duplicate initial VM " + toString(spec.id));
        }
        break;
      }
      case EventKind::kServiceDestroy:
        if (svc == live.end()) throw fail(e, "service is not live");
        live.erase(svc);
        break;
      case EventKind::kVmAdd:
      case EventKind::kVmRemove:
      case EventKind::kVerticalResize: {
        if (!e.vm) throw fail(e, "missing VM payload");
        if (svc == live.end()) throw fail(e, "service " + std::to_string(e.service) + " is not live");
        auto& vms = svc->second;
        auto it = vms.find(e.vm->id);
        if (e.kind == EventKind::kVmAdd) {
          if (it != vms.end()) throw fail(e, "VM already live");
          vms.emplace(e.vm->id, *e.vm);
        } else if (it == vms.end()) {
          throw fail(e, "VM is not live");
        } else if (e.kind == EventKind::kVmRemove) {
          vms.erase(it);
        } else {
          it->second.capacity = e.vm->capacity;
        }
        break;
      }
    }
  }
  // Steps after the last event keep the final state; close the timeline at
  // the last step that still has active VMs.
  if (!live.empty()) snapshot(current);
  while (!timeline.steps.empty() && timeline.steps.back().active.empty()) timeline.steps.pop_back();
  return timeline;
}

Timeline timelineOf(const WorkloadTrace& trace) {
  Timeline timeline;
  if (trace.empty()) return timeline;
  for (Time t = 0; t <= trace.duration(); ++t) {
    TimelineStep s;
    s.t = t;
    for (const auto& r : trace.rowsAt(t)) s.active.push_back(specOf(r));
    timeline.steps.push_back(std::move(s));
  }
  return timeline;
}

}  // namespace vmp
