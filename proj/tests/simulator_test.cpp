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


#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"
#include "vmp/error.hpp"
#include "vmp/generator.hpp"
#include "vmp/simulator.hpp"

namespace vmp {
namespace {

using vmptest::row;

DatacenterFleet uniformFleet(std::int64_t datacenters, std::size_t pms, Resources cap, OverbookingRatios ratios = {}) {
  DatacenterFleet fleet;
  for (std::int64_t c = 1; c <= datacenters; ++c) fleet.addMachines(c, pms, cap);
  fleet.ratios = ratios;
  return fleet;
}

VmDemand demand(Resources cap, Resources util = {}, std::int64_t sla = 0) {
  if (util == Resources{}) util = cap;
  return VmDemand{{1, 1, 1}, cap, util, sla, Money::fromCents(10)};
}

PmLoad load(std::int64_t index, Resources cap, Resources committed) {
  return PmLoad{PhysicalMachine{1, index, cap}, committed, committed, committed == Resources{} ? 0u : 1u};
}

const AdmissionPolicy kCapacityPolicy{};

// ---- heuristics

TEST(Placement, FirstFitSkipsFullPm) {
  std::vector<PmLoad> pms = {load(1, {8, 16, 1000}, {8, 16, 1000}), load(2, {8, 16, 1000}, {})};
  DatacenterState dc(pms, kCapacityPolicy);
  EXPECT_EQ(firstFit(demand({4, 8, 100}), dc), 1u);
}

TEST(Placement, BestAndWorstFitByResidualCpu) {
  std::vector<PmLoad> pms = {load(1, {10, 100, 1000}, {5, 0, 0}), load(2, {10, 100, 1000}, {6, 0, 0}),
                             load(3, {10, 100, 1000}, {1, 0, 0})};
  DatacenterState dc(pms, kCapacityPolicy);
  auto vm = demand({4, 1, 1});
  EXPECT_EQ(firstFit(vm, dc), 0u);
  EXPECT_EQ(bestFit(vm, dc), 1u);
  EXPECT_EQ(worstFit(vm, dc), 2u);
  auto big = demand({10, 1, 1});
  EXPECT_FALSE(firstFit(big, dc));
  EXPECT_FALSE(bestFit(big, dc));
  EXPECT_FALSE(worstFit(big, dc));
}

TEST(Placement, TiesGoToLowestIndex) {
  std::vector<PmLoad> pms = {load(1, {10, 10, 10}, {2, 0, 0}), load(2, {10, 10, 10}, {2, 0, 0})};
  DatacenterState dc(pms, kCapacityPolicy);
  auto vm = demand({3, 1, 1});
  EXPECT_EQ(bestFit(vm, dc), 0u);
  EXPECT_EQ(worstFit(vm, dc), 0u);
}

TEST(Placement, AlgorithmsByName) {
  EXPECT_EQ(algorithmNames(), (std::vector<std::string_view>{"first-fit", "best-fit", "worst-fit"}));
  EXPECT_TRUE(algorithmByName("best-fit"));
  EXPECT_THROW(algorithmByName("random-fit"), Error);
}

TEST(Admission, UtilizationBasisUsesRatio) {
  auto policy = AdmissionPolicy::forEnvironment(EnvironmentCoordinate(0, 1), OverbookingRatios{2.0, 2.0, 1.0});
  EXPECT_EQ(policy.basisOf(Resource::kCpu), AdmissionBasis::kUtilization);
  EXPECT_EQ(policy.basisOf(Resource::kNet), AdmissionBasis::kCapacity);
  std::vector<PmLoad> pms = {load(1, {8, 16, 1000}, {})};
  pms[0].committedCapacity = {8, 16, 500};
  pms[0].committedUtilization = {7, 10, 500};
  DatacenterState dc(pms, policy);
  EXPECT_TRUE(dc.admits(0, demand({8, 16, 400}, {7, 7, 400})));
  EXPECT_EQ(dc.blockingResource(0, demand({8, 16, 600}, {7, 7, 600})), Resource::kNet);
  EXPECT_EQ(dc.blockingResource(0, demand({8, 16, 100}, {10, 1, 100})), Resource::kCpu);
  // Without overbooking the ratio is ignored.
  auto plain = AdmissionPolicy::forEnvironment(EnvironmentCoordinate(3, 0), OverbookingRatios{2.0, 2.0, 2.0});
  EXPECT_DOUBLE_EQ(plain.limit(Resource::kCpu, 8), 8.0);
}

// ---- brute force

TEST(BruteForce, Examples) {
  std::vector<PhysicalMachine> one = {PhysicalMachine{1, 1, {8, 16, 1000}}};
  std::vector<VmDemand> two = {demand({8, 16, 1000}), demand({8, 16, 1000})};
  EXPECT_FALSE(bruteForceFeasible(two, one, kCapacityPolicy).feasible);

  auto overbooked = AdmissionPolicy::forEnvironment(EnvironmentCoordinate(0, 3), OverbookingRatios{2, 2, 2});
  std::vector<VmDemand> light = {demand({8, 16, 1000}, {4, 8, 500}), demand({8, 16, 1000}, {4, 8, 500})};
  auto r = bruteForceFeasible(light, one, overbooked);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 0}));

  auto empty = bruteForceFeasible({}, one, kCapacityPolicy);
  EXPECT_TRUE(empty.feasible);
  EXPECT_TRUE(empty.witness.empty());
}

TEST(BruteForce, FindsPackingHeuristicsMiss) {
  // First-fit puts 3 and 3 together and wastes the 6-slot.
  std::vector<PhysicalMachine> pms = {PhysicalMachine{1, 1, {6, 100, 100}}, PhysicalMachine{1, 2, {6, 100, 100}}};
  std::vector<VmDemand> vms = {demand({3, 1, 1}), demand({2, 1, 1}), demand({4, 1, 1}), demand({3, 1, 1})};
  auto r = bruteForceFeasible(vms, pms, kCapacityPolicy);
  ASSERT_TRUE(r.feasible);
  std::array<std::int64_t, 2> used{};
  for (std::size_t i = 0; i < vms.size(); ++i) used[r.witness[i]] += vms[i].capacity.cpu;
  EXPECT_LE(used[0], 6);
  EXPECT_LE(used[1], 6);
}

TEST(BruteForce, SizeLimits) {
  std::vector<PhysicalMachine> five(5, PhysicalMachine{1, 1, {8, 8, 8}});
  EXPECT_THROW(bruteForceFeasible({}, five, kCapacityPolicy), Error);
  std::vector<PhysicalMachine> one = {PhysicalMachine{1, 1, {8, 8, 8}}};
  std::vector<VmDemand> many(13, demand({1, 1, 1}));
  EXPECT_THROW(bruteForceFeasible(many, one, kCapacityPolicy), Error);
}

// ---- replay on the golden trace

TEST(Simulate, GoldenTraceOnLargePms) {
  auto trace = vmptest::loadTrace("golden.vmpt");
  auto result = simulate(trace, uniformFleet(2, 1, {32, 64, 4000}), firstFit);
  EXPECT_EQ(result.metrics.totalRevenue, Money::fromCents(750));
  EXPECT_EQ(result.metrics.totalRejections(), 0u);
  EXPECT_EQ(result.metrics.slaViolationSteps, 0u);
  EXPECT_EQ(result.metrics.placedVmSteps, 15u);
  EXPECT_EQ(result.metrics.resizeRejections, 0u);
  EXPECT_EQ(result.metrics.migrations, 0u);
  EXPECT_EQ(result.metrics.activePmSteps, 10u);
  EXPECT_EQ(result.conservationChecks, 5u);
}

bool loggedRejection(const SimulationResult& r, Time t, VmId id) {
  for (const auto& e : r.log) {
    if (e.t == t && e.vm == id && e.outcome == PlacementOutcome::kRejected) return true;
  }
  return false;
}

TEST(Simulate, GoldenTraceOnSmallPmsRejectsFirstAdd) {
  auto trace = vmptest::loadTrace("golden.vmpt");
  auto result = simulate(trace, uniformFleet(2, 1, {8, 16, 1000}), firstFit);
  EXPECT_TRUE(loggedRejection(result, 1, {1, 1, 2}));
  EXPECT_EQ(result.metrics.rejectionsBySla.at(1), result.metrics.totalRejections());
}

TEST(Simulate, GoldenTraceOverbookedAdmitsFirstAdd) {
  auto trace = vmptest::loadTrace("golden.vmpt");
  auto result = simulate(trace, uniformFleet(2, 1, {8, 16, 1000}, {2.0, 2.0, 1.0}), firstFit);
  EXPECT_FALSE(loggedRejection(result, 1, {1, 1, 2}));
  EXPECT_EQ(result.metrics.totalRejections(), 0u);
  EXPECT_EQ(result.metrics.slaViolationSteps, 0u);
  EXPECT_EQ(result.metrics.totalRevenue, Money::fromCents(750));
  // t=1, DC 1: utilization 14 of 8 ECU.
  EXPECT_DOUBLE_EQ(result.metrics.peakUtilization[0], 14.0 / 8.0);
}

TEST(Simulate, GoldenTraceAgreesWithBruteForceAtFirstAdd) {
  auto trace = vmptest::loadTrace("golden.vmpt");
  std::vector<VmDemand> dc1;
  for (const auto& r : trace.rowsAt(1)) {
    if (r.vm.datacenter == 1) dc1.push_back(VmDemand{r.vm, r.capacity, r.utilization, r.sla, r.revenue});
  }
  ASSERT_EQ(dc1.size(), 2u);
  std::vector<PhysicalMachine> pm = {PhysicalMachine{1, 1, {8, 16, 1000}}};
  auto env = EnvironmentCoordinate(3, 3);
  EXPECT_FALSE(bruteForceFeasible(dc1, pm, AdmissionPolicy::forEnvironment(env, {1, 1, 1})).feasible);
  EXPECT_TRUE(bruteForceFeasible(dc1, pm, AdmissionPolicy::forEnvironment(env, {2, 2, 1})).feasible);
}

TEST(Simulate, EmptyTraceGivesZeroMetrics) {
  auto result = simulate(WorkloadTrace(), uniformFleet(1, 1, {8, 8, 8}), firstFit);
  EXPECT_EQ(result.metrics, SimulationMetrics{});
  EXPECT_TRUE(result.log.empty());
}

TEST(Simulate, MissingDatacenterIsArgumentError) {
  auto trace = vmptest::loadTrace("golden.vmpt");
  try {
    simulate(trace, uniformFleet(1, 1, {32, 64, 4000}), firstFit);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArgument);
  }
}

TEST(Simulate, AlgorithmBreakingAdmissionAborts) {
  auto trace = vmptest::loadTrace("golden.vmpt");
  PlacementAlgorithm greedy = [](const VmDemand&, const DatacenterState&) { return std::optional<std::size_t>(0); };
  try {
    simulate(trace, uniformFleet(2, 1, {8, 16, 1000}), greedy);
    FAIL();
  } catch (const ContractViolation& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContract);
    EXPECT_EQ(e.t(), 1);
    EXPECT_EQ(e.datacenter(), 1);
    EXPECT_EQ(e.pm(), 1);
    EXPECT_EQ(e.resource(), Resource::kCpu);
  }
  PlacementAlgorithm outside = [](const VmDemand&, const DatacenterState& dc) {
    return std::optional<std::size_t>(dc.size());
  };
  EXPECT_THROW(simulate(trace, uniformFleet(2, 1, {32, 64, 4000}), outside), ContractViolation);
}

TEST(Simulate, HigherSlaWinsContestedCapacity) {
  std::vector<TraceRow> rows = {row(0, 1, 1, 1, {6, 6, 6}, 10, 0, {6, 6, 6}),
                                row(0, 2, 1, 1, {6, 6, 6}, 10, 2, {6, 6, 6})};
  auto result = simulate(WorkloadTrace(rows), uniformFleet(1, 1, {8, 8, 8}), firstFit);
  EXPECT_EQ(result.metrics.rejectionsBySla.at(0), 1u);
  EXPECT_FALSE(result.metrics.rejectionsBySla.contains(2));
  EXPECT_TRUE(loggedRejection(result, 0, {1, 1, 1}));
}

TEST(Simulate, RejectedVmStaysRejected) {
  std::vector<TraceRow> rows;
  for (Time t = 0; t < 3; ++t) rows.push_back(row(t, 1, 1, 1, {6, 6, 6}, 10, 1, {6, 6, 6}));
  rows.push_back(row(0, 2, 1, 1, {6, 6, 6}, 10, 0, {6, 6, 6}));
  auto result = simulate(WorkloadTrace(rows), uniformFleet(1, 1, {8, 8, 8}), firstFit);
  // Service 2 is rejected at t=0 and never retried; service 1 earns every step.
  EXPECT_EQ(result.metrics.totalRejections(), 1u);
  EXPECT_EQ(result.metrics.placedVmSteps, 3u);
}

std::vector<TraceRow> resizingTrace() {
  // VM (1,1,1) grows 4 -> 8 ECU at t=1 next to a 4-ECU neighbour.
  return {row(0, 1, 1, 1, {4, 4, 4}, 10, 1, {4, 4, 4}), row(1, 1, 1, 1, {8, 4, 4}, 10, 1, {8, 4, 4}),
          row(0, 2, 1, 1, {4, 4, 4}, 10, 0, {4, 4, 4}), row(1, 2, 1, 1, {4, 4, 4}, 10, 0, {4, 4, 4})};
}

TEST(Simulate, ResizeInPlaceWhenItFits) {
  auto result = simulate(WorkloadTrace(resizingTrace()), uniformFleet(1, 1, {12, 12, 12}), firstFit);
  EXPECT_EQ(result.metrics.migrations, 0u);
  EXPECT_EQ(result.metrics.resizeRejections, 0u);
}

TEST(Simulate, ResizeMigratesWhenPmIsFull) {
  auto result = simulate(WorkloadTrace(resizingTrace()), uniformFleet(1, 2, {8, 8, 8}), firstFit);
  EXPECT_EQ(result.metrics.migrations, 1u);
  EXPECT_EQ(result.metrics.resizeRejections, 0u);
  EXPECT_EQ(result.metrics.totalRejections(), 0u);
}

TEST(Simulate, ResizeRejectedKeepsOldSize) {
  SimulationOptions inPlace;
  inPlace.resize = ResizePolicy::kInPlaceOnly;
  auto result = simulate(WorkloadTrace(resizingTrace()), uniformFleet(1, 2, {8, 8, 8}), firstFit, inPlace);
  EXPECT_EQ(result.metrics.migrations, 0u);
  EXPECT_EQ(result.metrics.resizeRejections, 1u);
  EXPECT_EQ(result.metrics.placedVmSteps, 4u);
  EXPECT_EQ(result.metrics.slaViolationSteps, 0u);
}

TEST(Simulate, UtilizationAboveLimitCountsViolations) {
  // Admitted on utilization 3+3 <= 8, then both VMs rise to 5.
  std::vector<TraceRow> rows = {row(0, 1, 1, 1, {8, 8, 8}, 10, 0, {3, 8, 8}), row(1, 1, 1, 1, {8, 8, 8}, 10, 0, {5, 8, 8}),
                                row(0, 1, 1, 2, {8, 8, 8}, 10, 2, {3, 8, 8}), row(1, 1, 1, 2, {8, 8, 8}, 10, 2, {5, 8, 8})};
  DatacenterFleet fleet = uniformFleet(1, 1, {8, 16, 16});
  auto result = simulate(WorkloadTrace(rows), fleet, firstFit);
  EXPECT_EQ(result.metrics.totalRejections(), 0u);
  EXPECT_EQ(result.metrics.slaViolationSteps, 1u);
  EXPECT_EQ(result.metrics.violationsBySla.at(0), 1u);
  EXPECT_EQ(result.metrics.violationsBySla.at(2), 1u);
}

TEST(Simulate, RaisingRatiosNeverIncreasesRejections) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorConfig c;
    c.seed = seed;
    c.environment = EnvironmentCoordinate(3, 3);
    c.serviceCount = {2, 4};
    c.duration = {4, 8};
    auto trace = generate(c);
    const auto& algo = algorithmNames()[seed % 3];
    std::size_t previous = SIZE_MAX;
    for (double ratio : {1.0, 1.25, 1.5, 2.0, 3.0}) {
      auto r = simulate(trace, uniformFleet(2, 1, {16, 24, 1500}, {ratio, ratio, ratio}), algorithmByName(algo));
      EXPECT_LE(r.metrics.totalRejections(), previous) << "seed " << seed << " ratio " << ratio << " " << algo;
      previous = r.metrics.totalRejections();
    }
  }
}

TEST(Simulate, Deterministic) {
  GeneratorConfig c;
  c.seed = 31;
  c.environment = EnvironmentCoordinate(3, 3);
  c.serviceCount = {2, 5};
  c.duration = {6, 6};
  auto trace = generate(c);
  auto fleet = DatacenterFleet::defaultFor(trace);
  for (const auto& name : algorithmNames()) {
    auto a = simulate(trace, fleet, algorithmByName(name));
    auto b = simulate(trace, fleet, algorithmByName(name));
    EXPECT_EQ(a.metrics, b.metrics);
    EXPECT_EQ(a.log, b.log);
  }
}

TEST(Simulate, RevenueNeverExceedsTraceRevenue) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorConfig c;
    c.seed = seed;
    c.environment = allEnvironments()[seed % 16];
    c.serviceCount = {1, 4};
    auto trace = generate(c);
    Money total;
    for (const auto& r : trace.rows()) total += r.revenue;
    auto result = simulate(trace, uniformFleet(2, 1, {12, 20, 1200}), bestFit);
    EXPECT_LE(result.metrics.totalRevenue, total);
    EXPECT_EQ(result.conservationChecks, static_cast<std::size_t>(trace.duration() + 1));
  }
}

// ---- fleet files and output

TEST(Fleet, ReadsDefaultsOverridesAndRatios) {
  auto fleet = readFleetString(
      "datacenters=2\npms=2\npcpu=16\npram=32\npnet=1000\ndc.2.pms=1\ndc.2.pcpu=64\nratio_cpu=1.5\n");
  ASSERT_EQ(fleet.datacenters(), (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(fleet.machines(1).size(), 2u);
  EXPECT_EQ(fleet.machines(1)[1].index, 2);
  ASSERT_EQ(fleet.machines(2).size(), 1u);
  EXPECT_EQ(fleet.machines(2)[0].capacity, (Resources{64, 32, 1000}));
  EXPECT_DOUBLE_EQ(fleet.ratios.cpu, 1.5);
  EXPECT_DOUBLE_EQ(fleet.ratios.ram, 1.0);
}

TEST(Fleet, Errors) {
  EXPECT_THROW(readFleetString("pms=1\npcpu=1\npram=1\npnet=1\n"), Error);
  EXPECT_THROW(readFleetString("datacenters=1\npms=1\npcpu=1\npram=1\n"), Error);
  EXPECT_THROW(readFleetString("datacenters=1\npms=1\npcpu=1\npram=1\npnet=1\nratio_cpu=0.5\n"), Error);
  EXPECT_THROW(readFleetString("datacenters=1\npms=1\npcpu=1\npram=1\npnet=1\ncolour=red\n"), Error);
  EXPECT_THROW(readFleetString("datacenters=1\npms=1\npcpu=1\npram=1\npnet=1\ndc.3.pms=1\n"), Error);
}

TEST(Fleet, DataFilesParse) {
  auto large = readFleetString(vmptest::slurp(vmptest::dataPath("fleet_large.cfg")));
  EXPECT_EQ(large.machines(2)[0].capacity, (Resources{32, 64, 4000}));
  auto over = readFleetString(vmptest::slurp(vmptest::dataPath("fleet_small_overbooked.cfg")));
  EXPECT_DOUBLE_EQ(over.ratios.cpu, 2.0);
  EXPECT_DOUBLE_EQ(over.ratios.net, 1.0);
}

TEST(Fleet, DefaultSizedFromTrace) {
  auto trace = vmptest::loadTrace("golden.vmpt");
  auto fleet = DatacenterFleet::defaultFor(trace);
  EXPECT_EQ(fleet.datacenters(), (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(fleet.machines(1).size(), 1u);
  EXPECT_EQ(fleet.machines(1)[0].capacity, (Resources{32, 64, 4000}));
  EXPECT_EQ(simulate(trace, fleet, firstFit).metrics.totalRejections(), 0u);
}

TEST(Output, MetricsCsv) {
  auto result = simulate(vmptest::loadTrace("golden.vmpt"), uniformFleet(2, 1, {8, 16, 1000}), firstFit);
  std::ostringstream os;
  writeMetricsCsv(result.metrics, os);
  const auto text = os.str();
  EXPECT_EQ(text.rfind("metric,value\ntotal_revenue,", 0), 0u);
  EXPECT_NE(text.find("\nrejections_sla_1,"), std::string::npos);
  EXPECT_NE(text.find("\npeak_cpu_utilization,"), std::string::npos);
}

TEST(Output, PlacementLogCsv) {
  auto result = simulate(vmptest::loadTrace("golden.vmpt"), uniformFleet(2, 1, {32, 64, 4000}), firstFit);
  std::ostringstream os;
  writePlacementLogCsv(result.log, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,event,sb,dc,vj,pm,outcome");
  std::getline(in, line);
  EXPECT_EQ(line, "0,service-create,1,1,1,1,placed");
}

}  // namespace
}  // namespace vmp
