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

#ifndef VMP_EVENTS_HPP
#define VMP_EVENTS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "vmp/model.hpp"

namespace vmp {

// Active VMs (identity, capacity, revenue, SLA) at one step.
struct TimelineStep {
  Time t = 0;
  std::vector<VmSpec> active;  // sorted by id

  std::size_t serviceVmCount(std::int64_t service) const;
  friend bool operator==(const TimelineStep&, const TimelineStep&) = default;
};

// Membership and capacity over t = 0 .. last step with an active VM.
struct Timeline {
  std::vector<TimelineStep> steps;

  bool empty() const { return steps.empty(); }
  // mS_b(t) for every step, 0 where the service is absent.
  std::vector<std::size_t> serviceVmCounts(std::int64_t service) const;
  friend bool operator==(const Timeline&, const Timeline&) = default;
};

// Event stream of a valid trace, ordered by t then kind (create, add, remove,
// resize, destroy) then identity:
//   +S_b at the first t of each contiguous presence of service b, carrying its
//        VMs at that t;
//   +V / -V when a VM appears / disappears while its service stays live;
//   ~V when any capacity of a VM differs from its previous row;
//   -S_b at the first t after the service's last row.
// Throws InvalidTraceError when the trace does not validate.
std::vector<ServiceEvent> deriveEvents(const WorkloadTrace& trace);

// Replays events into a timeline. Throws Error(kCausality) naming the event
// when an event refers to a service or VM that is not live, creates one that
// already is, or when t decreases.
Timeline applyEvents(std::span<const ServiceEvent> events);

// The same structure read straight from rows (utilization dropped).
Timeline timelineOf(const WorkloadTrace& trace);

}  // namespace vmp

#endif  // VMP_EVENTS_HPP
