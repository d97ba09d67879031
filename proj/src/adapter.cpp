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

#include "vmp/adapter.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <map>
#include <set>

#include "vmp/classifier.hpp"
#include "vmp/error.hpp"
#include "vmp/events.hpp"
#include "vmp/random.hpp"
#include "vmp/trace_io.hpp"

namespace vmp {

namespace {

struct Member {
  Resources capacity;
  Money revenue;
  std::int64_t sla = 0;
};

// Empirical distributions the extension draws from.
struct SourceStats {
  std::vector<std::int64_t> countDeltas;
  std::int64_t minCount = 0;
  std::int64_t maxCount = 0;
  std::size_t resizes = 0;
  std::size_t vmTransitions = 0;
  std::map<std::int64_t, std::vector<const TraceRow*>> rowsByService;
  std::array<std::vector<std::int64_t>, 3> utilization;  // sorted, per Resource

  double resizeRate() const {
    return vmTransitions == 0 ? 0.0 : static_cast<double>(resizes) / static_cast<double>(vmTransitions);
  }
};

SourceStats collectStats(const WorkloadTrace& trace, const std::vector<ServiceEvent>& events) {
  SourceStats stats;
  stats.minCount = std::numeric_limits<std::int64_t>::max();
  for (const auto& r : trace.rows()) {
    stats.rowsByService[r.vm.service].push_back(&r);
    for (auto res : kAllResources) stats.utilization[static_cast<std::size_t>(res)].push_back(r.utilization[res]);
  }
  for (auto& pool : stats.utilization) std::sort(pool.begin(), pool.end());

  for (const auto& [b, rows] : stats.rowsByService) {
    std::map<Time, std::int64_t> counts;
    for (const auto* r : rows) ++counts[r->t];
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      stats.minCount = std::min(stats.minCount, it->second);
      stats.maxCount = std::max(stats.maxCount, it->second);
      auto next = std::next(it);
      if (next != counts.end() && next->first == it->first + 1) {
        stats.countDeltas.push_back(next->second - it->second);
      }
    }
  }

  std::map<VmId, std::size_t> appearances;
  for (const auto& r : trace.rows()) ++appearances[r.vm];
  for (const auto& [id, n] : appearances) stats.vmTransitions += n - 1;
  for (const auto& e : events) {
    if (e.kind == EventKind::kVerticalResize) ++stats.resizes;
  }
  return stats;
}

class Extender {
 public:
  Extender(const WorkloadTrace& source, std::uint64_t seed)
      : source_(source), events_(deriveEvents(source)), rng_(seed) {
    env_ = classify(source);
    stats_ = collectStats(source, events_);
    for (const auto& r : source.rows()) {
      auto& next = nextIndex_[{r.vm.service, r.vm.datacenter}];
      next = std::max(next, r.vm.index + 1);
    }
    for (const auto& r : source.rowsAt(source.duration())) {
      live_[r.vm.service].emplace(r.vm, Member{r.capacity, r.revenue, r.sla});
    }
  }

  WorkloadTrace run(Time target) {
    std::vector<TraceRow> rows(source_.rows().begin(), source_.rows().end());
    for (Time t = source_.duration() + 1; t <= target; ++t) {
      for (auto& [b, members] : live_) {
        std::vector<VmId> continuing;
        for (const auto& [id, m] : members) continuing.push_back(id);
        if (env_.horizontal() && !stats_.countDeltas.empty()) scale(b, members);
        if (env_.vertical()) {
          for (const auto& id : continuing) {
            auto it = members.find(id);
            if (it != members.end() && rng_.bernoulli(stats_.resizeRate())) resize(b, it->second);
          }
        }
        for (const auto& [id, m] : members) {
          TraceRow row;
          row.t = t;
          row.vm = id;
          row.capacity = m.capacity;
          row.revenue = m.revenue;
          row.sla = m.sla;
          row.utilization = utilization(m.capacity);
          rows.push_back(row);
        }
      }
    }
    return WorkloadTrace(std::move(rows));
  }

 private:
  const TraceRow& sampleRow(std::int64_t service) {
    const auto& pool = stats_.rowsByService.at(service);
    return *pool[static_cast<std::size_t>(rng_.uniformInt(0, static_cast<std::int64_t>(pool.size()) - 1))];
  }

  void scale(std::int64_t service, std::map<VmId, Member>& members) {
    const auto& deltas = stats_.countDeltas;
    const std::int64_t delta = deltas[static_cast<std::size_t>(
        rng_.uniformInt(0, static_cast<std::int64_t>(deltas.size()) - 1))];
    const auto count = static_cast<std::int64_t>(members.size());
    const std::int64_t target = std::clamp(count + delta, stats_.minCount, stats_.maxCount);
    for (std::int64_t n = count; n < target; ++n) {
      const TraceRow& proto = sampleRow(service);
      auto& next = nextIndex_[{service, proto.vm.datacenter}];
      members.emplace(VmId{service, proto.vm.datacenter, next++},
                      Member{proto.capacity, proto.revenue, proto.sla});
    }
    for (std::int64_t n = count; n > target; --n) {
      auto victim = members.begin();
      std::advance(victim, rng_.uniformInt(0, static_cast<std::int64_t>(members.size()) - 1));
      members.erase(victim);
    }
  }

  void resize(std::int64_t service, Member& m) {
    const TraceRow& proto = sampleRow(service);
    m.capacity.cpu = proto.capacity.cpu;
    m.capacity.ram = proto.capacity.ram;
  }

  std::int64_t drawUtilization(Resource res, std::int64_t capacity) {
    const auto& pool = stats_.utilization[static_cast<std::size_t>(res)];
    // Some source row has U <= its V = capacity, so this prefix is non-empty.
    const auto n = std::upper_bound(pool.begin(), pool.end(), capacity) - pool.begin();
    if (n == 0) return capacity;
    return pool[static_cast<std::size_t>(rng_.uniformInt(0, n - 1))];
  }

  UtilizationSample utilization(const Resources& capacity) {
    UtilizationSample u = capacity;
    if (env_.serverOverbooking()) {
      u.cpu = drawUtilization(Resource::kCpu, capacity.cpu);
      u.ram = drawUtilization(Resource::kRam, capacity.ram);
    }
    if (env_.networkOverbooking()) u.net = drawUtilization(Resource::kNet, capacity.net);
    return u;
  }

  const WorkloadTrace& source_;
  std::vector<ServiceEvent> events_;
  Rng rng_;
  EnvironmentCoordinate env_;
  SourceStats stats_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> nextIndex_;
  std::map<std::int64_t, std::map<VmId, Member>> live_;
};

}  // namespace

WorkloadTrace adaptDuration(const WorkloadTrace& trace, Time targetDuration, std::uint64_t seed) {
  if (targetDuration < 1) {
    throw Error(ErrorCode::kArgument, "target duration must be >= 1, got " + std::to_string(targetDuration));
  }
  requireValid(trace);
  if (trace.empty() || targetDuration == trace.duration()) return trace;
  if (targetDuration < trace.duration()) {
    std::vector<TraceRow> kept;
    for (const auto& r : trace.rows()) {
      if (r.t <= targetDuration) kept.push_back(r);
    }
    return WorkloadTrace(std::move(kept));
  }
  return Extender(trace, seed).run(targetDuration);
}

GeneratorConfig fitConfig(const WorkloadTrace& trace) {
  if (trace.empty()) throw Error(ErrorCode::kArgument, "cannot fit a config to an empty trace");
  const auto events = deriveEvents(trace);
  const auto stats = collectStats(trace, events);

  GeneratorConfig config;
  auto observe = [&](auto field) {
    auto lo = field(trace.rows().front());
    auto hi = lo;
    for (const auto& r : trace.rows()) {
      lo = std::min(lo, field(r));
      hi = std::max(hi, field(r));
    }
    return std::pair{lo, hi};
  };
  auto intRange = [&](auto field) {
    auto [lo, hi] = observe(field);
    return IntRange{lo, hi};
  };
  config.duration = IntRange{trace.duration(), trace.duration()};
  config.vcpu = intRange([](const TraceRow& r) { return r.capacity.cpu; });
  config.vram = intRange([](const TraceRow& r) { return r.capacity.ram; });
  config.vnet = intRange([](const TraceRow& r) { return r.capacity.net; });
  config.ucpu = intRange([](const TraceRow& r) { return r.utilization.cpu; });
  config.uram = intRange([](const TraceRow& r) { return r.utilization.ram; });
  config.unet = intRange([](const TraceRow& r) { return r.utilization.net; });
  config.sla = intRange([](const TraceRow& r) { return r.sla; });
  {
    auto [lo, hi] = observe([](const TraceRow& r) { return r.revenue; });
    config.revenue = MoneyRange{lo, hi};
  }
  const auto serviceCount = static_cast<std::int64_t>(trace.services().size());
  config.serviceCount = IntRange{serviceCount, serviceCount};
  config.vmsPerService = IntRange{stats.minCount, stats.maxCount};
  config.datacenterCount = trace.maxDatacenter();
  config.distribution = Distribution::kUniform;
  config.verticalStep = VerticalStepMode::kResample;
  config.environment = classify(trace);

  // Observed frequency of the elasticity events the environment allows:
  // VM count changes per service step, resizes per VM step.
  std::size_t eventsSeen = 0;
  std::size_t opportunities = 0;
  if (config.environment->horizontal()) {
    opportunities += stats.countDeltas.size();
    eventsSeen += static_cast<std::size_t>(
        std::count_if(stats.countDeltas.begin(), stats.countDeltas.end(), [](std::int64_t d) { return d != 0; }));
  }
  if (config.environment->vertical()) {
    opportunities += stats.vmTransitions;
    eventsSeen += stats.resizes;
  }
  config.elasticityEventProbability =
      opportunities == 0 ? 0.0 : static_cast<double>(eventsSeen) / static_cast<double>(opportunities);
  config.validate();
  return config;
}

}  // namespace vmp
