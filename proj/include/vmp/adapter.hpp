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

#ifndef VMP_ADAPTER_HPP
#define VMP_ADAPTER_HPP

#include <cstdint>

#include "vmp/model.hpp"

namespace vmp {

// Resizes a trace to `targetDuration` steps.
//
// Reducing keeps rows with t <= targetDuration; VMs still running at the cut
// simply end there. Extending appends steps by bootstrap resampling the
// source: per-step changes of each service's VM count, the per-VM resize
// rate, capacity/revenue/SLA tuples of the service's own rows, and observed
// utilization values (never above the row's capacity). Appended values stay
// inside the source's observed ranges and the classified environment of the
// result is covered by that of the source. Correlations between fields are
// not preserved.
//
// Throws Error(kArgument) if targetDuration < 1 and InvalidTraceError if the
// source does not validate. An empty source is returned unchanged.
WorkloadTrace adaptDuration(const WorkloadTrace& trace, Time targetDuration, std::uint64_t seed);

// Generator config reproducing the trace's observed ranges, service count,
// per-service VM count range, environment and elasticity event frequency.
// The seed is left unset. Throws Error(kArgument) on an empty trace.
GeneratorConfig fitConfig(const WorkloadTrace& trace);

}  // namespace vmp

#endif  // VMP_ADAPTER_HPP
