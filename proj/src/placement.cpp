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
#include <functional>

#include "vmp/simulator.hpp"

namespace vmp {

double AdmissionPolicy::limit(Resource r, std::int64_t physical) const {
  const double p = static_cast<double>(physical);
  return basisOf(r) == AdmissionBasis::kUtilization ? ratios[r] * p : p;
}

AdmissionPolicy AdmissionPolicy::forEnvironment(EnvironmentCoordinate env, OverbookingRatios ratios) {
  AdmissionPolicy policy;
  policy.ratios = ratios;
  const auto server = env.serverOverbooking() ? AdmissionBasis::kUtilization : AdmissionBasis::kCapacity;
  policy.basis[static_cast<std::size_t>(Resource::kCpu)] = server;
  policy.basis[static_cast<std::size_t>(Resource::kRam)] = server;
  policy.basis[static_cast<std::size_t>(Resource::kNet)] =
      env.networkOverbooking() ? AdmissionBasis::kUtilization : AdmissionBasis::kCapacity;
  return policy;
}

double DatacenterState::residualAfter(std::size_t i, Resource r, const VmDemand& vm) const {
  const PmLoad& load = pms_[i];
  const double limit = policy_->limit(r, load.machine.capacity[r]);
  if (policy_->basisOf(r) == AdmissionBasis::kUtilization) {
    return limit - static_cast<double>(load.committedUtilization[r] + vm.utilization[r]);
  }
  return limit - static_cast<double>(load.committedCapacity[r] + vm.capacity[r]);
}

std::optional<Resource> DatacenterState::blockingResource(std::size_t i, const VmDemand& vm) const {
  for (auto r : kAllResources) {
    if (residualAfter(i, r, vm) < 0.0) return r;
  }
  return std::nullopt;
}

std::optional<std::size_t> firstFit(const VmDemand& vm, const DatacenterState& dc) {
  for (std::size_t i = 0; i < dc.size(); ++i) {
    if (dc.admits(i, vm)) return i;
  }
  return std::nullopt;
}

namespace {

template <typename Better>
std::optional<std::size_t> selectByCpuResidual(const VmDemand& vm, const DatacenterState& dc, Better better) {
  std::optional<std::size_t> chosen;
  double chosenResidual = 0.0;
  for (std::size_t i = 0; i < dc.size(); ++i) {
    if (!dc.admits(i, vm)) continue;
    const double residual = dc.residualAfter(i, Resource::kCpu, vm);
    if (!chosen || better(residual, chosenResidual)) {
      chosen = i;
      chosenResidual = residual;
    }
  }
  return chosen;
}

}  // namespace

std::optional<std::size_t> bestFit(const VmDemand& vm, const DatacenterState& dc) {
  return selectByCpuResidual(vm, dc, std::less<double>());
}

std::optional<std::size_t> worstFit(const VmDemand& vm, const DatacenterState& dc) {
  return selectByCpuResidual(vm, dc, std::greater<double>());
}

const std::vector<std::string_view>& algorithmNames() {
  static const std::vector<std::string_view> names = {"first-fit", "best-fit", "worst-fit"};
  return names;
}

PlacementAlgorithm algorithmByName(std::string_view name) {
  if (name == "first-fit") return firstFit;
  if (name == "best-fit") return bestFit;
  if (name == "worst-fit") return worstFit;
  throw Error(ErrorCode::kArgument,
              "unknown placement algorithm '" + std::string(name) + "' (first-fit, best-fit, worst-fit)");
}

FeasibilityResult bruteForceFeasible(std::span<const VmDemand> vms, std::span<const PhysicalMachine> pms,
                                     const AdmissionPolicy& policy) {
  if (vms.size() > kBruteForceMaxVms || pms.size() > kBruteForceMaxPms) {
    throw Error(ErrorCode::kArgument, "brute force bound exceeded: " + std::to_string(vms.size()) +
                                          " VMs (max 12), " + std::to_string(pms.size()) + " PMs (max 4)");
  }
  std::vector<PmLoad> loads;
  for (const auto& pm : pms) loads.push_back(PmLoad{pm, {}, {}, 0});
  FeasibilityResult result;
  std::vector<std::size_t> assignment(vms.size());

  // Depth-first over every VM-to-PM assignment; a branch is cut only when a
  // PM would break its limit, which no extension of that branch can repair.
  // Empty PMs with equal capacity are interchangeable, so only the first of
  // them is tried.
  std::function<bool(std::size_t)> search = [&](std::size_t k) {
    if (k == vms.size()) return true;
    const DatacenterState state(loads, policy);
    for (std::size_t i = 0; i < loads.size(); ++i) {
      if (loads[i].vmCount == 0) {
        bool duplicate = false;
        for (std::size_t j = 0; j < i && !duplicate; ++j) {
          duplicate = loads[j].vmCount == 0 && loads[j].machine.capacity == loads[i].machine.capacity;
        }
        if (duplicate) continue;
      }
      if (!state.admits(i, vms[k])) continue;
      loads[i].committedCapacity += vms[k].capacity;
      loads[i].committedUtilization += vms[k].utilization;
      ++loads[i].vmCount;
      assignment[k] = i;
      const bool ok = search(k + 1);
      loads[i].committedCapacity -= vms[k].capacity;
      loads[i].committedUtilization -= vms[k].utilization;
      --loads[i].vmCount;
      if (ok) return true;
    }
    return false;
  };
  result.feasible = search(0);
  if (result.feasible) result.witness = assignment;
  return result;
}

}  // namespace vmp
