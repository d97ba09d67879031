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

#include "test_support.hpp"
#include "vmp/error.hpp"
#include "vmp/events.hpp"
#include "vmp/generator.hpp"

namespace vmp {
namespace {

std::vector<std::string> rendered(const std::vector<ServiceEvent>& events) {
  std::vector<std::string> out;
  for (const auto& e : events) out.push_back(toString(e));
  return out;
}

TEST(Events, TimelineExampleEvents) {
  auto events = deriveEvents(vmptest::loadTrace("timeline.vmpt"));
  EXPECT_EQ(rendered(events), (std::vector<std::string>{"+S_1@0", "+V(1,1,2)@1", "+V(1,2,2)@2", "-V(1,1,2)@4",
                                                        "-V(1,2,2)@4", "-S_1@5"}));
  ASSERT_EQ(events.front().initialVms.size(), 2u);
  EXPECT_EQ(events.front().initialVms[0].id, (VmId{1, 1, 1}));
  EXPECT_EQ(events.front().initialVms[1].id, (VmId{1, 2, 1}));
}

TEST(Events, TimelineExampleReplay) {
  auto timeline = applyEvents(deriveEvents(vmptest::loadTrace("timeline.vmpt")));
  EXPECT_EQ(timeline.serviceVmCounts(1), (std::vector<std::size_t>{2, 3, 4, 4, 2}));
}

TEST(Events, GoldenTraceEvents) {
  auto events = deriveEvents(vmptest::loadTrace("golden.vmpt"));
  std::size_t adds = 0, removes = 0, resizes = 0;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::kVmAdd:
        ++adds;
        EXPECT_TRUE(e.t == 1 || e.t == 2);
        break;
      case EventKind::kVmRemove:
        ++removes;
        EXPECT_EQ(e.t, 4);
        break;
      case EventKind::kVerticalResize:
        ++resizes;
        EXPECT_EQ(e.t, 4);
        EXPECT_EQ(e.vm->capacity.cpu, 4);
        EXPECT_EQ(e.vm->capacity.ram, 8);
        break;
      default:
        break;
    }
  }
  EXPECT_EQ(adds, 2u);
  EXPECT_EQ(removes, 2u);
  EXPECT_EQ(resizes, 2u);
  EXPECT_EQ(applyEvents(events).serviceVmCounts(1), (std::vector<std::size_t>{2, 3, 4, 4, 2}));
}

TEST(Events, ConstantServiceHasOnlyCreateAndDestroy) {
  std::vector<TraceRow> rows;
  for (Time t = 2; t <= 5; ++t) rows.push_back(vmptest::row(t, 1, 1, 1, {4, 4, 100}, 10, 0, {4, 4, 100}));
  EXPECT_EQ(rendered(deriveEvents(WorkloadTrace(rows))), (std::vector<std::string>{"+S_1@2", "-S_1@6"}));
}

TEST(Events, EmptyListGivesEmptyTimeline) {
  EXPECT_TRUE(applyEvents({}).empty());
  EXPECT_TRUE(deriveEvents(WorkloadTrace()).empty());
}

TEST(Events, AddForUnknownServiceIsCausalityError) {
  VmSpec spec{{7, 1, 1}, {4, 4, 100}, Money::fromCents(10), 0};
  std::vector<ServiceEvent> events = {ServiceEvent{3, EventKind::kVmAdd, 7, spec, {}}};
  try {
    applyEvents(events);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCausality);
    EXPECT_NE(std::string(e.what()).find("t=3"), std::string::npos) << e.what();
  }
}

TEST(Events, OutOfOrderTimesAreCausalityErrors) {
  VmSpec spec{{1, 1, 1}, {4, 4, 100}, Money::fromCents(10), 0};
  std::vector<ServiceEvent> events = {
      ServiceEvent{2, EventKind::kServiceCreate, 1, std::nullopt, {spec}},
      ServiceEvent{1, EventKind::kServiceDestroy, 1, std::nullopt, {}},
  };
  EXPECT_THROW(applyEvents(events), Error);
  std::vector<ServiceEvent> twice = {
      ServiceEvent{0, EventKind::kServiceCreate, 1, std::nullopt, {spec}},
      ServiceEvent{1, EventKind::kServiceCreate, 1, std::nullopt, {spec}},
  };
  EXPECT_THROW(applyEvents(twice), Error);
}

TEST(Events, InvalidTraceIsRejected) {
  WorkloadTrace trace({vmptest::row(0, 1, 1, 1, {4, 4, 100}, 10, 0, {5, 4, 100})});
  try {
    deriveEvents(trace);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidTrace);
  }
}

// Replaying the derived events gives back each step's membership and
// capacities.
TEST(Events, ReplayReconstructsGeneratedTraces) {
  for (auto env : allEnvironments()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GeneratorConfig c;
      c.seed = seed;
      c.environment = env;
      c.serviceCount = {1, 4};
      c.duration = {3, 9};
      auto trace = generate(c);
      auto timeline = applyEvents(deriveEvents(trace));
      ASSERT_EQ(timeline.steps.size(), static_cast<std::size_t>(trace.duration() + 1)) << env.toString();
      for (const auto& step : timeline.steps) {
        auto rows = trace.rowsAt(step.t);
        ASSERT_EQ(step.active.size(), rows.size()) << env.toString() << " t=" << step.t;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          EXPECT_EQ(step.active[i].id, rows[i].vm);
          EXPECT_EQ(step.active[i].capacity, rows[i].capacity);
          EXPECT_EQ(step.active[i].revenue, rows[i].revenue);
          EXPECT_EQ(step.active[i].sla, rows[i].sla);
        }
      }
    }
  }
}

}  // namespace
}  // namespace vmp
