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
#include <istream>
#include <map>
#include <optional>
#include <sstream>

#include "keyvalue.hpp"
#include "vmp/simulator.hpp"

namespace vmp {

void DatacenterFleet::addMachines(std::int64_t datacenter, std::size_t count, Resources capacity) {
  auto& pms = machines_[datacenter];
  for (std::size_t i = 0; i < count; ++i) {
    pms.push_back(PhysicalMachine{datacenter, static_cast<std::int64_t>(pms.size()) + 1, capacity});
  }
}

std::span<const PhysicalMachine> DatacenterFleet::machines(std::int64_t datacenter) const {
  auto it = machines_.find(datacenter);
  if (it == machines_.end()) return {};
  return it->second;
}

std::vector<std::int64_t> DatacenterFleet::datacenters() const {
  std::vector<std::int64_t> out;
  for (const auto& [id, pms] : machines_) out.push_back(id);
  return out;
}

DatacenterFleet DatacenterFleet::defaultFor(const WorkloadTrace& trace) {
  Resources largest{1, 1, 1};
  for (const auto& r : trace.rows()) {
    for (auto res : kAllResources) largest[res] = std::max(largest[res], r.capacity[res]);
  }
  const Resources pmCapacity{4 * largest.cpu, 4 * largest.ram, 4 * largest.net};
  DatacenterFleet fleet;
  const std::int64_t dcs = std::max<std::int64_t>(1, trace.maxDatacenter());
  for (std::int64_t c = 1; c <= dcs; ++c) {
    std::size_t peak = 0;
    for (Time t = 0; t <= trace.duration(); ++t) peak = std::max(peak, trace.datacenterVmCount(c, t));
    fleet.addMachines(c, std::max<std::size_t>(1, (peak + 3) / 4), pmCapacity);
  }
  return fleet;
}

namespace {

struct DcSpec {
  std::optional<std::int64_t> pms, pcpu, pram, pnet;
};

bool assignSpecKey(DcSpec& spec, std::string_view field, std::int64_t value) {
  if (field == "pms") spec.pms = value;
  else if (field == "pcpu") spec.pcpu = value;
  else if (field == "pram") spec.pram = value;
  else if (field == "pnet") spec.pnet = value;
  else return false;
  return true;
}

}  // namespace

DatacenterFleet readFleet(std::istream& in) {
  std::optional<std::int64_t> datacenters;
  DcSpec defaults;
  std::map<std::int64_t, DcSpec> overrides;
  OverbookingRatios ratios;

  for (const auto& kv : detail::parseKeyValues(in)) {
    const std::string_view key = kv.key;
    auto unknown = [&] {
      return ParseError(ErrorCode::kUnknownKey, kv.line, 1, "unknown fleet key '" + kv.key + "'");
    };
    if (key == "datacenters") {
      datacenters = detail::parseInt(kv);
    } else if (key == "ratio_cpu" || key == "ratio_ram" || key == "ratio_net") {
      const double v = detail::parseDouble(kv);
      if (!(v >= 1.0)) {
        throw ParseError(ErrorCode::kRange, kv.line, kv.valueColumn, kv.key + " must be >= 1");
      }
      (key == "ratio_cpu" ? ratios.cpu : key == "ratio_ram" ? ratios.ram : ratios.net) = v;
    } else if (key.starts_with("dc.")) {
      const auto dot = key.find('.', 3);
      if (dot == std::string_view::npos) throw unknown();
      detail::KeyValue idKv = kv;
      idKv.value = std::string(key.substr(3, dot - 3));
      const std::int64_t id = detail::parseInt(idKv);
      if (!assignSpecKey(overrides[id], key.substr(dot + 1), detail::parseInt(kv))) throw unknown();
    } else if (!assignSpecKey(defaults, key, detail::parseInt(kv))) {
      throw unknown();
    }
  }

  if (!datacenters || *datacenters < 1) throw Error(ErrorCode::kRange, "fleet: datacenters must be given and >= 1");
  DatacenterFleet fleet;
  fleet.ratios = ratios;
  for (const auto& [id, spec] : overrides) {
    if (id < 1 || id > *datacenters) {
      throw Error(ErrorCode::kRange, "fleet: dc." + std::to_string(id) + " outside 1.." +
                                         std::to_string(*datacenters));
    }
  }
  for (std::int64_t c = 1; c <= *datacenters; ++c) {
    const DcSpec o = overrides.contains(c) ? overrides.at(c) : DcSpec{};
    auto pick = [&](std::optional<std::int64_t> over, std::optional<std::int64_t> def, const char* name) {
      auto v = over ? over : def;
      if (!v || *v < 1) {
        throw Error(ErrorCode::kRange, "fleet: datacenter " + std::to_string(c) + " needs " + name + " >= 1");
      }
      return *v;
    };
    const auto pms = pick(o.pms, defaults.pms, "pms");
    const Resources cap{pick(o.pcpu, defaults.pcpu, "pcpu"), pick(o.pram, defaults.pram, "pram"),
                        pick(o.pnet, defaults.pnet, "pnet")};
    fleet.addMachines(c, static_cast<std::size_t>(pms), cap);
  }
  return fleet;
}

DatacenterFleet readFleetString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return readFleet(in);
}

}  // namespace vmp
