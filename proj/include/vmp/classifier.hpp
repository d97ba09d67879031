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

#ifndef VMP_CLASSIFIER_HPP
#define VMP_CLASSIFIER_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vmp/model.hpp"

namespace vmp {

// Least environment whose time variables explain every dynamic observed:
//   a VM joins or leaves a service while the service stays live -> horizontal
//   a VM's capacities change between consecutive rows            -> vertical
//   any row with Ucpu < Vcpu or Uram < Vram                       -> server overbooking
//   any row with Unet < Vnet                                      -> network overbooking
// Services appearing and disappearing as a whole are baseline churn and do
// not count as elasticity. Throws InvalidTraceError on an invalid trace.
EnvironmentCoordinate classify(const WorkloadTrace& trace);

struct UtilizationRatio {
  double min = 1.0;
  double mean = 1.0;
};

struct ResizeRecord {
  Time t = 0;
  VmId vm;
  Resources from;
  Resources to;
};

struct ServiceDynamics {
  std::int64_t service = 0;
  Time firstT = 0;
  Time lastT = 0;
  std::vector<std::size_t> vmCounts;  // mS_b(t) for t in [firstT, lastT]
  std::size_t vmAdds = 0;
  std::size_t vmRemoves = 0;
  std::vector<ResizeRecord> resizes;
  std::array<UtilizationRatio, 3> utilization;  // indexed by Resource

  std::size_t verticalResizes() const { return resizes.size(); }
  const UtilizationRatio& ratio(Resource r) const { return utilization[static_cast<std::size_t>(r)]; }
};

struct DynamicsReport {
  EnvironmentCoordinate environment;
  std::vector<ServiceDynamics> services;

  std::string toString() const;
};

DynamicsReport dynamicsReport(const WorkloadTrace& trace);

}  // namespace vmp

#endif  // VMP_CLASSIFIER_HPP
