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

#ifndef VMP_GENERATOR_HPP
#define VMP_GENERATOR_HPP

#include <cstdint>
#include <vector>

#include "vmp/model.hpp"

namespace vmp {

struct ServiceLifetime {
  std::int64_t service = 0;
  Time tInit = 0;
  Time tEnd = 0;
  std::size_t initialVmCount = 0;
};

struct GenerationPlan {
  std::vector<ServiceLifetime> services;
  std::vector<ServiceEvent> events;
};

struct GenerationResult {
  WorkloadTrace trace;
  GenerationPlan plan;
};

// Seeded synthetic trace for config.environment. Only the time variables of
// that environment change during a VM's or service's lifetime; resources
// without overbooking report utilization equal to capacity.
//
// Throws Error(kConfig) when seed or environment is missing, or when an
// overbooked resource's utilization minimum exceeds its capacity maximum.
WorkloadTrace generate(const GeneratorConfig& config);
GenerationResult generateWithPlan(const GeneratorConfig& config);

}  // namespace vmp

#endif  // VMP_GENERATOR_HPP
