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

#include "vmp/generator.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "vmp/error.hpp"
#include "vmp/events.hpp"
#include "vmp/random.hpp"

namespace vmp {

namespace {

struct LiveVm {
  Resources capacity;
  Money revenue;
};

// Capacity ranges actually drawn from. On an overbooked resource the
// capacity floor is raised to the utilization minimum so that U <= V and
// U >= umin both hold.
struct CapacityRanges {
  IntRange cpu, ram, net;
};

CapacityRanges effectiveCapacityRanges(const GeneratorConfig& config, EnvironmentCoordinate env) {
  auto narrow = [](const char* name, IntRange cap, IntRange util, bool overbooked) {
    if (!overbooked) return cap;
    if (util.min > cap.max) {
      throw Error(ErrorCode::kConfig, std::string("u") + name + "_min=" + std::to_string(util.min) +
                                          " exceeds v" + name + "_max=" + std::to_string(cap.max) +
                                          ": no utilization value fits under any capacity");
    }
    return IntRange{std::max(cap.min, util.min), cap.max};
  };
  return {narrow("cpu", config.vcpu, config.ucpu, env.serverOverbooking()),
          narrow("ram", config.vram, config.uram, env.serverOverbooking()),
          narrow("net", config.vnet, config.unet, env.networkOverbooking())};
}

class ServiceGenerator {
 public:
  ServiceGenerator(const GeneratorConfig& config, EnvironmentCoordinate env, CapacityRanges caps,
                   Rng& rng)
      : config_(config), env_(env), caps_(caps), rng_(rng) {}

  ServiceLifetime run(std::int64_t service, Time tInit, Time tEnd, std::vector<TraceRow>& rows) {
    const auto dist = config_.distribution;
    const std::int64_t sla = distributionSample(dist, config_.sla, rng_);
    const auto initial = static_cast<std::size_t>(distributionSample(dist, config_.vmsPerService, rng_));
    service_ = service;
    members_.clear();
    nextIndex_.clear();
    for (std::size_t i = 0; i < initial; ++i) spawn(service);

    for (Time t = tInit; t <= tEnd; ++t) {
      if (t > tInit) step();
      for (const auto& [id, vm] : members_) {
        TraceRow row;
        row.t = t;
        row.vm = id;
        row.capacity = vm.capacity;
        row.revenue = vm.revenue;
        row.sla = sla;
        row.utilization = utilization(vm.capacity);
        rows.push_back(row);
      }
    }
    return ServiceLifetime{service, tInit, tEnd, initial};
  }

 private:
  void spawn(std::int64_t service) {
    const auto dist = config_.distribution;
    const std::int64_t dc = rng_.uniformInt(1, config_.datacenterCount);
    const VmId id{service, dc, ++nextIndex_[dc]};
    LiveVm vm;
    vm.capacity.cpu = distributionSample(dist, caps_.cpu, rng_);
    vm.capacity.ram = distributionSample(dist, caps_.ram, rng_);
    vm.capacity.net = distributionSample(dist, caps_.net, rng_);
    vm.revenue = distributionSample(dist, config_.revenue, rng_);
    members_.emplace(id, vm);
  }

  void step() {
    std::vector<VmId> continuing;
    continuing.reserve(members_.size());
    for (const auto& [id, vm] : members_) continuing.push_back(id);

    const double p = config_.elasticityEventProbability;
    if (env_.horizontal() && rng_.bernoulli(p)) scaleHorizontally(service_);
    if (env_.vertical()) {
      for (const auto& id : continuing) {
        auto it = members_.find(id);
        if (it == members_.end()) continue;  // removed by this step's scale-down
        if (rng_.bernoulli(p)) resize(it->second);
      }
    }
  }

  void scaleHorizontally(std::int64_t service) {
    const auto count = static_cast<std::int64_t>(members_.size());
    const bool canUp = count < config_.vmsPerService.max;
    const bool canDown = count > config_.vmsPerService.min;
    // Fair coin for the direction; a draw pointing past a bound holds the count.
    const bool up = rng_.uniformInt(0, 1) == 1;
    if (up ? !canUp : !canDown) return;
    const std::int64_t headroom = up ? config_.vmsPerService.max - count : count - config_.vmsPerService.min;
    const std::int64_t magnitude = rng_.uniformInt(1, headroom);
    for (std::int64_t i = 0; i < magnitude; ++i) {
      if (up) {
        spawn(service);
      } else {
        auto victim = members_.begin();
        std::advance(victim, rng_.uniformInt(0, static_cast<std::int64_t>(members_.size()) - 1));
        members_.erase(victim);
      }
    }
  }

  void resize(LiveVm& vm) {
    if (config_.verticalStep == VerticalStepMode::kResample) {
      if (caps_.cpu.min == caps_.cpu.max && caps_.ram.min == caps_.ram.max) return;
      std::int64_t cpu = vm.capacity.cpu;
      std::int64_t ram = vm.capacity.ram;
      while (cpu == vm.capacity.cpu && ram == vm.capacity.ram) {
        cpu = distributionSample(config_.distribution, caps_.cpu, rng_);
        ram = distributionSample(config_.distribution, caps_.ram, rng_);
      }
      vm.capacity.cpu = cpu;
      vm.capacity.ram = ram;
      return;
    }
    auto canHalve = [](std::int64_t v, IntRange r) { return v / 2 != v && v / 2 >= r.min; };
    auto canDouble = [](std::int64_t v, IntRange r) { return v * 2 <= r.max; };
    const bool downCpu = canHalve(vm.capacity.cpu, caps_.cpu);
    const bool downRam = canHalve(vm.capacity.ram, caps_.ram);
    const bool upCpu = canDouble(vm.capacity.cpu, caps_.cpu);
    const bool upRam = canDouble(vm.capacity.ram, caps_.ram);
    const bool canDown = downCpu || downRam;
    const bool canUp = upCpu || upRam;
    if (!canDown && !canUp) return;
    const bool up = canUp && (!canDown || rng_.uniformInt(0, 1) == 1);
    if (up) {
      if (upCpu) vm.capacity.cpu *= 2;
      if (upRam) vm.capacity.ram *= 2;
    } else {
      if (downCpu) vm.capacity.cpu /= 2;
      if (downRam) vm.capacity.ram /= 2;
    }
  }

  UtilizationSample utilization(const Resources& capacity) {
    const auto dist = config_.distribution;
    UtilizationSample u = capacity;
    if (env_.serverOverbooking()) {
      u.cpu = std::min(distributionSample(dist, config_.ucpu, rng_), capacity.cpu);
      u.ram = std::min(distributionSample(dist, config_.uram, rng_), capacity.ram);
    }
    if (env_.networkOverbooking()) {
      u.net = std::min(distributionSample(dist, config_.unet, rng_), capacity.net);
    }
    return u;
  }

  const GeneratorConfig& config_;
  EnvironmentCoordinate env_;
  CapacityRanges caps_;
  Rng& rng_;
  std::int64_t service_ = 0;
  std::map<VmId, LiveVm> members_;
  std::map<std::int64_t, std::int64_t> nextIndex_;
};

}  // namespace

GenerationResult generateWithPlan(const GeneratorConfig& config) {
  config.validate();
  if (!config.seed) throw Error(ErrorCode::kConfig, "seed is required for generation");
  if (!config.environment) throw Error(ErrorCode::kConfig, "environment is required for generation");
  const EnvironmentCoordinate env = *config.environment;
  const CapacityRanges caps = effectiveCapacityRanges(config, env);

  Rng rng(*config.seed);
  const Time duration = distributionSample(config.distribution, config.duration, rng);
  const std::int64_t services = distributionSample(config.distribution, config.serviceCount, rng);

  GenerationResult result;
  std::vector<TraceRow> rows;
  ServiceGenerator gen(config, env, caps, rng);
  for (std::int64_t b = 1; b <= services; ++b) {
    // The first service spans the whole trace so its length is the drawn
    // duration; the rest arrive and leave at uniformly drawn steps.
    Time tInit = 0;
    Time tEnd = duration;
    if (b > 1) {
      tInit = rng.uniformInt(0, duration);
      tEnd = rng.uniformInt(tInit, duration);
    }
    result.plan.services.push_back(gen.run(b, tInit, tEnd, rows));
  }
  result.trace = WorkloadTrace(std::move(rows));
  result.plan.events = deriveEvents(result.trace);
  return result;
}

WorkloadTrace generate(const GeneratorConfig& config) { return generateWithPlan(config).trace; }

}  // namespace vmp
