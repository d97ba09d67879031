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

#ifndef VMP_SIMULATOR_HPP
#define VMP_SIMULATOR_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vmp/error.hpp"
#include "vmp/model.hpp"

namespace vmp {

// ---------------------------------------------------------------------------
// Fleet
// ---------------------------------------------------------------------------

struct PhysicalMachine {
  std::int64_t datacenter = 0;
  std::int64_t index = 0;  // 1-based within the datacenter
  Resources capacity;      // Pcpu, Pram, Pnet
};

struct OverbookingRatios {
  double cpu = 1.0;
  double ram = 1.0;
  double net = 1.0;
  double operator[](Resource r) const {
    return r == Resource::kCpu ? cpu : (r == Resource::kRam ? ram : net);
  }
};

class DatacenterFleet {
 public:
  // Appends `count` identical PMs to datacenter `id`.
  void addMachines(std::int64_t datacenter, std::size_t count, Resources capacity);

  bool hasDatacenter(std::int64_t datacenter) const { return machines_.contains(datacenter); }
  std::span<const PhysicalMachine> machines(std::int64_t datacenter) const;
  std::vector<std::int64_t> datacenters() const;

  OverbookingRatios ratios;

  // One datacenter per id in the trace; each with ceil(peak VMs / 4) PMs
  // (at least one) sized 4x the largest observed VM capacity per resource.
  static DatacenterFleet defaultFor(const WorkloadTrace& trace);

 private:
  std::map<std::int64_t, std::vector<PhysicalMachine>> machines_;
};

// Flat key=value fleet description:
//   datacenters=N            (required)
//   pms= pcpu= pram= pnet=   defaults for every datacenter
//   dc.<c>.pms= dc.<c>.pcpu= dc.<c>.pram= dc.<c>.pnet=   per-datacenter overrides
//   ratio_cpu= ratio_ram= ratio_net=   overbooking ratios (>= 1, default 1)
DatacenterFleet readFleet(std::istream& in);
DatacenterFleet readFleetString(std::string_view text);

// ---------------------------------------------------------------------------
// Admission
// ---------------------------------------------------------------------------

enum class AdmissionBasis {
  kCapacity,     // sum of requested V <= P
  kUtilization,  // sum of utilization U <= ratio * P
};

struct AdmissionPolicy {
  std::array<AdmissionBasis, 3> basis{AdmissionBasis::kCapacity, AdmissionBasis::kCapacity,
                                      AdmissionBasis::kCapacity};
  OverbookingRatios ratios;

  AdmissionBasis basisOf(Resource r) const { return basis[static_cast<std::size_t>(r)]; }
  // Admission and violation threshold on a PM with physical amount `physical`.
  double limit(Resource r, std::int64_t physical) const;

  // Server overbooking puts CPU and RAM on the utilization basis, network
  // overbooking puts the network there; everything else is capacity-based.
  static AdmissionPolicy forEnvironment(EnvironmentCoordinate env, OverbookingRatios ratios);
};

struct VmDemand {
  VmId id;
  Resources capacity;
  UtilizationSample utilization;
  std::int64_t sla = 0;
  Money revenue;
};

struct PmLoad {
  PhysicalMachine machine;
  Resources committedCapacity;
  Resources committedUtilization;
  std::size_t vmCount = 0;
};

// Read-only view of one datacenter handed to placement algorithms.
class DatacenterState {
 public:
  DatacenterState(std::span<const PmLoad> pms, const AdmissionPolicy& policy)
      : pms_(pms), policy_(&policy) {}

  std::size_t size() const { return pms_.size(); }
  const PmLoad& pm(std::size_t i) const { return pms_[i]; }
  const AdmissionPolicy& policy() const { return *policy_; }

  // First resource whose limit PM `i` would exceed after adding `vm`.
  std::optional<Resource> blockingResource(std::size_t i, const VmDemand& vm) const;
  bool admits(std::size_t i, const VmDemand& vm) const { return !blockingResource(i, vm); }
  // Headroom left on resource `r` of PM `i` after adding `vm`, on the
  // resource's admission basis.
  double residualAfter(std::size_t i, Resource r, const VmDemand& vm) const;

 private:
  std::span<const PmLoad> pms_;
  const AdmissionPolicy* policy_;
};

// Returns the position (0-based) of the chosen PM, or nullopt to reject.
// Must be a deterministic function of its arguments.
using PlacementAlgorithm = std::function<std::optional<std::size_t>(const VmDemand&, const DatacenterState&)>;

// Lowest-index admissible PM.
std::optional<std::size_t> firstFit(const VmDemand& vm, const DatacenterState& dc);
// Admissible PM with the least CPU headroom left (ties: lowest index).
std::optional<std::size_t> bestFit(const VmDemand& vm, const DatacenterState& dc);
// Admissible PM with the most CPU headroom left (ties: lowest index).
std::optional<std::size_t> worstFit(const VmDemand& vm, const DatacenterState& dc);

const std::vector<std::string_view>& algorithmNames();
// "first-fit", "best-fit", "worst-fit"; throws Error(kArgument) otherwise.
PlacementAlgorithm algorithmByName(std::string_view name);

// ---------------------------------------------------------------------------
// Exhaustive feasibility oracle
// ---------------------------------------------------------------------------

inline constexpr std::size_t kBruteForceMaxVms = 12;
inline constexpr std::size_t kBruteForceMaxPms = 4;

struct FeasibilityResult {
  bool feasible = false;
  std::vector<std::size_t> witness;  // PM position per VM when feasible
};

// True iff some assignment of all `vms` to `pms` (empty PMs) satisfies the
// admission rule on every PM. Throws Error(kArgument) beyond 12 VMs or 4 PMs.
FeasibilityResult bruteForceFeasible(std::span<const VmDemand> vms, std::span<const PhysicalMachine> pms,
                                     const AdmissionPolicy& policy);

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

enum class ResizePolicy {
  kInPlaceThenMigrate,  // same PM if admissible, else another PM of the datacenter
  kInPlaceOnly,
};

struct SimulationOptions {
  // Selects the admission basis per resource; classify(trace) when unset.
  std::optional<EnvironmentCoordinate> environment;
  ResizePolicy resize = ResizePolicy::kInPlaceThenMigrate;
};

struct SimulationMetrics {
  Money totalRevenue;
  std::size_t placedVmSteps = 0;
  std::map<std::int64_t, std::size_t> rejectionsBySla;
  std::size_t resizeRejections = 0;
  // (PM, t, resource) triples where sum of U exceeded the resource limit.
  std::size_t slaViolationSteps = 0;
  // VM-steps spent on a PM with a violation at that step, per SLA level.
  std::map<std::int64_t, std::size_t> violationsBySla;
  std::size_t migrations = 0;
  std::size_t activePmSteps = 0;
  std::array<double, 3> peakUtilization{0.0, 0.0, 0.0};  // max sum(U)/P per Resource

  std::size_t totalRejections() const;
  friend bool operator==(const SimulationMetrics&, const SimulationMetrics&) = default;
};

enum class PlacementOutcome { kPlaced, kRejected, kReleased, kResized, kMigrated, kResizeRejected };
std::string_view placementOutcomeName(PlacementOutcome o) noexcept;

struct PlacementLogEntry {
  Time t = 0;
  EventKind event = EventKind::kVmAdd;
  VmId vm;
  std::int64_t pm = 0;  // 1-based PM index, 0 when none
  PlacementOutcome outcome = PlacementOutcome::kPlaced;
  friend bool operator==(const PlacementLogEntry&, const PlacementLogEntry&) = default;
};

struct SimulationResult {
  SimulationMetrics metrics;
  std::vector<PlacementLogEntry> log;
  std::size_t conservationChecks = 0;
};

class ContractViolation : public Error {
 public:
  ContractViolation(Time t, std::int64_t datacenter, std::int64_t pm, Resource resource,
                    const std::string& what);
  Time t() const noexcept { return t_; }
  std::int64_t datacenter() const noexcept { return datacenter_; }
  std::int64_t pm() const noexcept { return pm_; }
  Resource resource() const noexcept { return resource_; }

 private:
  Time t_;
  std::int64_t datacenter_;
  std::int64_t pm_;
  Resource resource_;
};

// Replays the trace step by step. Within a step: releases, utilization
// refresh, resizes, then arrivals; resizes and arrivals are served in
// descending SLA order so lower-SLA requests are the ones rejected when
// capacity runs out. A rejected VM stays rejected for its lifetime.
//
// Throws InvalidTraceError for an invalid trace, Error(kArgument) when the
// fleet lacks a datacenter of the trace, and ContractViolation when the
// algorithm picks a PM that does not admit the VM.
SimulationResult simulate(const WorkloadTrace& trace, const DatacenterFleet& fleet,
                          const PlacementAlgorithm& algorithm, const SimulationOptions& options = {});

// "metric,value" lines.
void writeMetricsCsv(const SimulationMetrics& metrics, std::ostream& out);
// t,event,sb,dc,vj,pm,outcome
void writePlacementLogCsv(std::span<const PlacementLogEntry> log, std::ostream& out);

}  // namespace vmp

#endif  // VMP_SIMULATOR_HPP
