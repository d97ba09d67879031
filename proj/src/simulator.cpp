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

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "keyvalue.hpp"
#include "vmp/classifier.hpp"
#include "vmp/events.hpp"
#include "vmp/simulator.hpp"
#include "vmp/trace_io.hpp"

namespace vmp {

std::size_t SimulationMetrics::totalRejections() const {
  std::size_t n = 0;
  for (const auto& [sla, count] : rejectionsBySla) n += count;
  return n;
}

std::string_view placementOutcomeName(PlacementOutcome o) noexcept {
  switch (o) {
    case PlacementOutcome::kPlaced: return "placed";
    case PlacementOutcome::kRejected: return "rejected";
    case PlacementOutcome::kReleased: return "released";
    case PlacementOutcome::kResized: return "resized";
    case PlacementOutcome::kMigrated: return "migrated";
    case PlacementOutcome::kResizeRejected: return "resize-rejected";
  }
  return "?";
}

ContractViolation::ContractViolation(Time t, std::int64_t datacenter, std::int64_t pm, Resource resource,
                                     const std::string& what)
    : Error(ErrorCode::kContract, "contract violation at t=" + std::to_string(t) + ", datacenter " +
                                      std::to_string(datacenter) + ", PM " + std::to_string(pm) +
                                      ", resource " + std::string(resourceName(resource)) + ": " + what),
      t_(t),
      datacenter_(datacenter),
      pm_(pm),
      resource_(resource) {}

namespace {

struct Placement {
  std::int64_t datacenter = 0;
  std::size_t pm = 0;  // position in the datacenter's PM list
  VmDemand demand;
};

Resources clampTo(const Resources& u, const Resources& cap) {
  return Resources{std::min(u.cpu, cap.cpu), std::min(u.ram, cap.ram), std::min(u.net, cap.net)};
}

bool higherPriority(const VmDemand& a, const VmDemand& b) {
  if (a.sla != b.sla) return a.sla > b.sla;
  return a.id < b.id;
}

class Replay {
 public:
  Replay(const WorkloadTrace& trace, const DatacenterFleet& fleet, const PlacementAlgorithm& algorithm,
         const SimulationOptions& options)
      : trace_(trace), algorithm_(algorithm), options_(options) {
    const EnvironmentCoordinate env = options.environment ? *options.environment : classify(trace);
    policy_ = AdmissionPolicy::forEnvironment(env, fleet.ratios);
    for (const auto& r : trace.rows()) {
      if (!fleet.hasDatacenter(r.vm.datacenter) || fleet.machines(r.vm.datacenter).empty()) {
        throw Error(ErrorCode::kArgument,
                    "fleet has no PMs for datacenter " + std::to_string(r.vm.datacenter));
      }
    }
    for (auto c : fleet.datacenters()) {
      auto& loads = loads_[c];
      for (const auto& pm : fleet.machines(c)) loads.push_back(PmLoad{pm, {}, {}, 0});
    }
  }

  SimulationResult run() {
    const auto events = deriveEvents(trace_);
    auto next = events.begin();
    if (trace_.empty()) return std::move(result_);
    for (Time t = 0; t <= trace_.duration(); ++t) {
      auto last = next;
      while (last != events.end() && last->t == t) ++last;
      step(t, std::span<const ServiceEvent>(std::to_address(next), static_cast<std::size_t>(last - next)));
      next = last;
    }
    return std::move(result_);
  }

 private:
  void step(Time t, std::span<const ServiceEvent> events) {
    std::map<VmId, const TraceRow*> rows;
    for (const auto& r : trace_.rowsAt(t)) rows.emplace(r.vm, &r);

    // Releases.
    for (const auto& e : events) {
      if (e.kind == EventKind::kVmRemove) {
        release(t, e.kind, e.vm->id);
      } else if (e.kind == EventKind::kServiceDestroy) {
        std::vector<VmId> members;
        for (const auto& [id, p] : placed_) {
          if (id.service == e.service) members.push_back(id);
        }
        for (const auto& id : members) release(t, e.kind, id);
        std::erase_if(rejected_, [&](const VmId& id) { return id.service == e.service; });
      }
    }

    // Utilization refresh for VMs that stay.
    for (auto& [id, p] : placed_) {
      const TraceRow& row = *rows.at(id);
      auto& load = loads_[p.datacenter][p.pm];
      const Resources u = clampTo(row.utilization, p.demand.capacity);
      load.committedUtilization -= p.demand.utilization;
      load.committedUtilization += u;
      p.demand.utilization = u;
    }

    // Resizes, then arrivals, each in SLA order.
    std::vector<VmDemand> resizes;
    std::vector<std::pair<EventKind, VmDemand>> arrivals;
    auto demandOf = [&](const VmId& id) {
      const TraceRow& row = *rows.at(id);
      return VmDemand{id, row.capacity, row.utilization, row.sla, row.revenue};
    };
    for (const auto& e : events) {
      if (e.kind == EventKind::kVerticalResize && placed_.contains(e.vm->id)) {
        resizes.push_back(demandOf(e.vm->id));
      } else if (e.kind == EventKind::kVmAdd) {
        arrivals.emplace_back(e.kind, demandOf(e.vm->id));
      } else if (e.kind == EventKind::kServiceCreate) {
        for (const auto& v : e.initialVms) arrivals.emplace_back(e.kind, demandOf(v.id));
      }
    }
    std::sort(resizes.begin(), resizes.end(), higherPriority);
    std::stable_sort(arrivals.begin(), arrivals.end(),
                     [](const auto& a, const auto& b) { return higherPriority(a.second, b.second); });
    for (const auto& d : resizes) resize(t, d);
    for (const auto& [kind, d] : arrivals) arrive(t, kind, d);

    verify(t);
    account(rows);
  }

  DatacenterState stateOf(std::int64_t dc) const { return DatacenterState(loads_.at(dc), policy_); }

  void commit(std::int64_t dc, std::size_t pm, const VmDemand& d) {
    auto& load = loads_[dc][pm];
    load.committedCapacity += d.capacity;
    load.committedUtilization += d.utilization;
    ++load.vmCount;
  }

  void uncommit(std::int64_t dc, std::size_t pm, const VmDemand& d) {
    auto& load = loads_[dc][pm];
    load.committedCapacity -= d.capacity;
    load.committedUtilization -= d.utilization;
    --load.vmCount;
  }

  std::int64_t pmLabel(std::int64_t dc, std::size_t pm) const { return loads_.at(dc)[pm].machine.index; }

  void log(Time t, EventKind kind, const VmId& id, std::int64_t pm, PlacementOutcome outcome) {
    result_.log.push_back(PlacementLogEntry{t, kind, id, pm, outcome});
  }

  // Asks the algorithm for a PM and checks its answer against the rule.
  std::optional<std::size_t> choose(Time t, const VmDemand& d) {
    const std::int64_t dc = d.id.datacenter;
    const DatacenterState state = stateOf(dc);
    const auto choice = algorithm_(d, state);
    if (!choice) return std::nullopt;
    if (*choice >= state.size()) {
      throw ContractViolation(t, dc, static_cast<std::int64_t>(*choice) + 1, Resource::kCpu,
                              "algorithm chose a PM outside the datacenter for VM " + toString(d.id));
    }
    if (auto blocked = state.blockingResource(*choice, d)) {
      throw ContractViolation(t, dc, pmLabel(dc, *choice), *blocked,
                              "algorithm placed VM " + toString(d.id) + " on a PM that does not admit it");
    }
    return choice;
  }

  void release(Time t, EventKind kind, const VmId& id) {
    rejected_.erase(id);
    auto it = placed_.find(id);
    if (it == placed_.end()) return;
    uncommit(it->second.datacenter, it->second.pm, it->second.demand);
    log(t, kind, id, pmLabel(it->second.datacenter, it->second.pm), PlacementOutcome::kReleased);
    placed_.erase(it);
  }

  void resize(Time t, const VmDemand& requested) {
    Placement& p = placed_.at(requested.id);
    const VmDemand old = p.demand;
    uncommit(p.datacenter, p.pm, old);
    if (stateOf(p.datacenter).admits(p.pm, requested)) {
      commit(p.datacenter, p.pm, requested);
      p.demand = requested;
      log(t, EventKind::kVerticalResize, requested.id, pmLabel(p.datacenter, p.pm), PlacementOutcome::kResized);
      return;
    }
    if (options_.resize == ResizePolicy::kInPlaceThenMigrate) {
      if (auto target = choose(t, requested)) {
        commit(p.datacenter, *target, requested);
        p.pm = *target;
        p.demand = requested;
        ++result_.metrics.migrations;
        log(t, EventKind::kVerticalResize, requested.id, pmLabel(p.datacenter, p.pm), PlacementOutcome::kMigrated);
        return;
      }
    }
    // Keep the old size; utilization cannot exceed it.
    VmDemand kept = old;
    kept.utilization = clampTo(requested.utilization, old.capacity);
    commit(p.datacenter, p.pm, kept);
    p.demand = kept;
    ++result_.metrics.resizeRejections;
    log(t, EventKind::kVerticalResize, requested.id, pmLabel(p.datacenter, p.pm), PlacementOutcome::kResizeRejected);
  }

  void arrive(Time t, EventKind kind, const VmDemand& d) {
    if (auto pm = choose(t, d)) {
      commit(d.id.datacenter, *pm, d);
      placed_.emplace(d.id, Placement{d.id.datacenter, *pm, d});
      log(t, kind, d.id, pmLabel(d.id.datacenter, *pm), PlacementOutcome::kPlaced);
    } else {
      rejected_.insert(d.id);
      ++result_.metrics.rejectionsBySla[d.sla];
      log(t, kind, d.id, 0, PlacementOutcome::kRejected);
    }
  }

  void verify(Time t) {
    std::map<std::pair<std::int64_t, std::size_t>, PmLoad> expected;
    for (const auto& [id, p] : placed_) {
      auto& e = expected[{p.datacenter, p.pm}];
      e.committedCapacity += p.demand.capacity;
      e.committedUtilization += p.demand.utilization;
      ++e.vmCount;
    }
    for (const auto& [dc, loads] : loads_) {
      for (std::size_t i = 0; i < loads.size(); ++i) {
        const PmLoad& load = loads[i];
        const PmLoad e = expected.contains({dc, i}) ? expected.at({dc, i}) : PmLoad{};
        if (!(load.committedCapacity == e.committedCapacity) ||
            !(load.committedUtilization == e.committedUtilization) || load.vmCount != e.vmCount) {
          throw std::logic_error("committed totals of datacenter " + std::to_string(dc) + " PM " +
                                 std::to_string(load.machine.index) + " diverge from placed VMs at t=" +
                                 std::to_string(t));
        }
        for (auto r : kAllResources) {
          if (policy_.basisOf(r) == AdmissionBasis::kCapacity &&
              load.committedCapacity[r] > load.machine.capacity[r]) {
            throw ContractViolation(t, dc, load.machine.index, r, "committed capacity exceeds the PM");
          }
        }
      }
    }
    ++result_.conservationChecks;
  }

  void account(const std::map<VmId, const TraceRow*>& rows) {
    auto& m = result_.metrics;
    std::set<std::pair<std::int64_t, std::size_t>> violating;
    for (const auto& [dc, loads] : loads_) {
      for (std::size_t i = 0; i < loads.size(); ++i) {
        const PmLoad& load = loads[i];
        if (load.vmCount > 0) ++m.activePmSteps;
        for (auto r : kAllResources) {
          const auto used = static_cast<double>(load.committedUtilization[r]);
          const auto physical = load.machine.capacity[r];
          if (used > policy_.limit(r, physical)) {
            ++m.slaViolationSteps;
            violating.insert({dc, i});
          }
          auto& peak = m.peakUtilization[static_cast<std::size_t>(r)];
          peak = std::max(peak, used / static_cast<double>(physical));
        }
      }
    }
    for (const auto& [id, p] : placed_) {
      m.totalRevenue += rows.at(id)->revenue;
      ++m.placedVmSteps;
      if (violating.contains({p.datacenter, p.pm})) ++m.violationsBySla[p.demand.sla];
    }
  }

  const WorkloadTrace& trace_;
  const PlacementAlgorithm& algorithm_;
  SimulationOptions options_;
  AdmissionPolicy policy_;
  std::map<std::int64_t, std::vector<PmLoad>> loads_;
  std::map<VmId, Placement> placed_;
  std::set<VmId> rejected_;
  SimulationResult result_;
};

}  // namespace

SimulationResult simulate(const WorkloadTrace& trace, const DatacenterFleet& fleet,
                          const PlacementAlgorithm& algorithm, const SimulationOptions& options) {
  requireValid(trace);
  return Replay(trace, fleet, algorithm, options).run();
}

void writeMetricsCsv(const SimulationMetrics& m, std::ostream& out) {
  std::set<std::int64_t> levels;
  for (const auto& [sla, n] : m.rejectionsBySla) levels.insert(sla);
  for (const auto& [sla, n] : m.violationsBySla) levels.insert(sla);
  auto countAt = [](const std::map<std::int64_t, std::size_t>& by, std::int64_t sla) {
    auto it = by.find(sla);
    return it == by.end() ? std::size_t{0} : it->second;
  };
  out << "metric,value\n";
  out << "total_revenue," << m.totalRevenue.toString() << '\n';
  out << "placed_vm_steps," << m.placedVmSteps << '\n';
  out << "rejections," << m.totalRejections() << '\n';
  for (auto sla : levels) out << "rejections_sla_" << sla << ',' << countAt(m.rejectionsBySla, sla) << '\n';
  out << "resize_rejections," << m.resizeRejections << '\n';
  out << "sla_violation_steps," << m.slaViolationSteps << '\n';
  for (auto sla : levels) out << "violations_sla_" << sla << ',' << countAt(m.violationsBySla, sla) << '\n';
  out << "migrations," << m.migrations << '\n';
  out << "active_pm_steps," << m.activePmSteps << '\n';
  for (auto r : kAllResources) {
    out << "peak_" << resourceName(r) << "_utilization,"
        << detail::formatDouble(m.peakUtilization[static_cast<std::size_t>(r)]) << '\n';
  }
}

void writePlacementLogCsv(std::span<const PlacementLogEntry> log, std::ostream& out) {
  out << "t,event,sb,dc,vj,pm,outcome\n";
  for (const auto& e : log) {
    out << e.t << ',' << eventKindName(e.event) << ',' << e.vm.service << ',' << e.vm.datacenter << ','
        << e.vm.index << ',' << e.pm << ',' << placementOutcomeName(e.outcome) << '\n';
  }
}

}  // namespace vmp
