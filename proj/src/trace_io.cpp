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

#include "vmp/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "keyvalue.hpp"

namespace vmp {

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::string_view violationKindName(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::kUtilizationExceedsCapacity: return "utilization exceeds capacity";
    case ViolationKind::kDuplicateRow: return "duplicate row";
    case ViolationKind::kLifetimeGap: return "lifetime gap";
    case ViolationKind::kNegativeField: return "negative field";
    case ViolationKind::kNonPositiveField: return "non-positive field";
  }
  return "?";
}

std::string Violation::toString() const {
  std::string out = "t=" + std::to_string(t) + " vm=" + vmp::toString(vm) + ": " +
                    std::string(violationKindName(kind));
  if (resource) out += " (" + std::string(resourceName(*resource)) + ")";
  if (!detail.empty()) out += ": " + detail;
  return out;
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

std::string ValidationReport::toString() const {
  std::string out = std::to_string(violations.size()) + " violations";
  for (const auto& v : violations) out += "\n  " + v.toString();
  return out;
}

namespace {

void checkField(std::vector<Violation>& out, const TraceRow& row, const char* name,
                std::int64_t value, std::int64_t floor) {
  if (value < 0) {
    out.push_back({ViolationKind::kNegativeField, row.t, row.vm, std::nullopt,
                   std::string(name) + "=" + std::to_string(value)});
  } else if (value < floor) {
    out.push_back({ViolationKind::kNonPositiveField, row.t, row.vm, std::nullopt,
                   std::string(name) + "=" + std::to_string(value)});
  }
}

}  // namespace

ValidationReport validateTrace(const WorkloadTrace& trace) {
  ValidationReport report;
  auto& out = report.violations;
  std::map<VmId, std::vector<Time>> appearances;

  const TraceRow* prev = nullptr;
  for (const auto& row : trace.rows()) {
    checkField(out, row, "t", row.t, 0);
    checkField(out, row, "sb", row.vm.service, 1);
    checkField(out, row, "dc", row.vm.datacenter, 1);
    checkField(out, row, "vj", row.vm.index, 1);
    checkField(out, row, "vcpu", row.capacity.cpu, 1);
    checkField(out, row, "vram", row.capacity.ram, 1);
    checkField(out, row, "vnet", row.capacity.net, 1);
    checkField(out, row, "r", row.revenue.cents(), 0);
    checkField(out, row, "sla", row.sla, 0);
    checkField(out, row, "ucpu", row.utilization.cpu, 0);
    checkField(out, row, "uram", row.utilization.ram, 0);
    checkField(out, row, "unet", row.utilization.net, 0);
    for (auto r : kAllResources) {
      if (row.utilization[r] > row.capacity[r]) {
        out.push_back({ViolationKind::kUtilizationExceedsCapacity, row.t, row.vm, r,
                       "U=" + std::to_string(row.utilization[r]) +
                           " > V=" + std::to_string(row.capacity[r])});
      }
    }
    if (prev != nullptr && prev->t == row.t && prev->vm == row.vm) {
      out.push_back({ViolationKind::kDuplicateRow, row.t, row.vm, std::nullopt, {}});
    } else {
      appearances[row.vm].push_back(row.t);
    }
    prev = &row;
  }

  for (const auto& [id, times] : appearances) {
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (times[i] > times[i - 1] + 1) {
        out.push_back({ViolationKind::kLifetimeGap, times[i - 1] + 1, id, std::nullopt,
                       "absent for t in [" + std::to_string(times[i - 1] + 1) + ", " +
                           std::to_string(times[i] - 1) + "]"});
      }
    }
  }
  return report;
}

InvalidTraceError::InvalidTraceError(ValidationReport report)
    : Error(ErrorCode::kInvalidTrace, "invalid trace: " + report.toString()),
      report_(std::move(report)) {}

void requireValid(const WorkloadTrace& trace) {
  auto report = validateTrace(trace);
  if (!report.ok()) throw InvalidTraceError(std::move(report));
}

// ---------------------------------------------------------------------------
// Trace files
// ---------------------------------------------------------------------------

std::string formatRow(const TraceRow& row) {
  std::string out;
  out.reserve(64);
  auto add = [&](std::int64_t v) {
    out += std::to_string(v);
    out += ',';
  };
  add(row.t);
  add(row.vm.service);
  add(row.vm.datacenter);
  add(row.vm.index);
  add(row.capacity.cpu);
  add(row.capacity.ram);
  add(row.capacity.net);
  out += row.revenue.toString();
  out += ',';
  add(row.sla);
  add(row.utilization.cpu);
  add(row.utilization.ram);
  out += std::to_string(row.utilization.net);
  return out;
}

std::uint64_t writeTrace(const WorkloadTrace& trace, std::ostream& out) {
  std::uint64_t written = 0;
  auto emit = [&](std::string_view line) {
    out << line << '\n';
    if (!out) throw IoError(written, "failed to write trace line");
    written += line.size() + 1;
  };
  emit(kTraceHeaderLine);
  for (const auto& row : trace.rows()) emit(formatRow(row));
  out.flush();
  if (!out) throw IoError(written, "failed to flush trace");
  return written;
}

std::string writeTraceString(const WorkloadTrace& trace) {
  std::ostringstream out;
  writeTrace(trace, out);
  return std::move(out).str();
}

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based character column
};

std::vector<Field> splitCsv(std::string_view line) {
  std::vector<Field> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back({line.substr(start), start + 1});
      break;
    }
    fields.push_back({line.substr(start, comma - start), start + 1});
    start = comma + 1;
  }
  return fields;
}

std::int64_t parseIntField(const Field& f, std::size_t lineNo, std::size_t index) {
  const std::string column(kTraceColumns[index]);
  if (!f.text.empty() && f.text.front() == '-') {
    throw ParseError(ErrorCode::kDomain, lineNo, f.column,
                     "negative value \"" + std::string(f.text) + "\" in column " + column);
  }
  std::int64_t v = 0;
  const char* end = f.text.data() + f.text.size();
  auto [ptr, ec] = std::from_chars(f.text.data(), end, v);
  if (f.text.empty() || ec != std::errc() || ptr != end || f.text.front() == '+') {
    throw ParseError(ErrorCode::kParse, lineNo, f.column,
                     "malformed integer \"" + std::string(f.text) + "\" in column " + column);
  }
  return v;
}

}  // namespace

ReadTraceResult readTrace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(ErrorCode::kSchema, 1, 1, "missing header line");
  }
  if (line != kTraceHeaderLine) {
    const auto fields = splitCsv(line);
    throw ParseError(ErrorCode::kSchema, 1, 1,
                     fields.size() != kTraceColumns.size()
                         ? "header has " + std::to_string(fields.size()) + " columns, expected 12"
                         : "unexpected header \"" + line + "\"");
  }

  std::vector<TraceRow> rows;
  bool sorted = true;
  std::size_t lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto fields = splitCsv(line);
    if (fields.size() != kTraceColumns.size()) {
      throw ParseError(ErrorCode::kSchema, lineNo, 1,
                       "expected 12 columns, got " + std::to_string(fields.size()));
    }
    TraceRow row;
    row.t = parseIntField(fields[0], lineNo, 0);
    row.vm.service = parseIntField(fields[1], lineNo, 1);
    row.vm.datacenter = parseIntField(fields[2], lineNo, 2);
    row.vm.index = parseIntField(fields[3], lineNo, 3);
    row.capacity.cpu = parseIntField(fields[4], lineNo, 4);
    row.capacity.ram = parseIntField(fields[5], lineNo, 5);
    row.capacity.net = parseIntField(fields[6], lineNo, 6);
    {
      const Field& f = fields[7];
      if (!f.text.empty() && f.text.front() == '-') {
        throw ParseError(ErrorCode::kDomain, lineNo, f.column,
                         "negative revenue \"" + std::string(f.text) + "\"");
      }
      auto money = Money::parse(f.text);
      if (!money) {
        throw ParseError(ErrorCode::kParse, lineNo, f.column,
                         "malformed revenue \"" + std::string(f.text) +
                             "\" (at most two decimals)");
      }
      row.revenue = *money;
    }
    row.sla = parseIntField(fields[8], lineNo, 8);
    row.utilization.cpu = parseIntField(fields[9], lineNo, 9);
    row.utilization.ram = parseIntField(fields[10], lineNo, 10);
    row.utilization.net = parseIntField(fields[11], lineNo, 11);
    if (!rows.empty() && rowOrderLess(row, rows.back())) sorted = false;
    rows.push_back(row);
  }
  if (in.bad()) throw IoError(0, "failed to read trace stream");
  return {WorkloadTrace(std::move(rows)), !sorted};
}

ReadTraceResult readTraceString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return readTrace(in);
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

namespace {

struct RangeKey {
  std::string_view prefix;
  IntRange GeneratorConfig::*member;
};

constexpr std::array<RangeKey, 11> kRangeKeys = {{
    {"duration", &GeneratorConfig::duration},
    {"vcpu", &GeneratorConfig::vcpu},
    {"vram", &GeneratorConfig::vram},
    {"vnet", &GeneratorConfig::vnet},
    {"ucpu", &GeneratorConfig::ucpu},
    {"uram", &GeneratorConfig::uram},
    {"unet", &GeneratorConfig::unet},
    {"revenue", nullptr},
    {"sla", &GeneratorConfig::sla},
    {"vms", &GeneratorConfig::vmsPerService},
    {"services", &GeneratorConfig::serviceCount},
}};

}  // namespace

const std::vector<std::string_view>& configKeys() {
  static const std::vector<std::string_view> keys = {
      "duration_min", "duration_max", "vcpu_min",     "vcpu_max",     "vram_min",
      "vram_max",     "vnet_min",     "vnet_max",     "ucpu_min",     "ucpu_max",
      "uram_min",     "uram_max",     "unet_min",     "unet_max",     "revenue_min",
      "revenue_max",  "sla_min",      "sla_max",      "vms_min",      "vms_max",
      "services_min", "services_max", "datacenters",  "distribution", "elasticity_probability",
      "vertical_step", "environment", "seed"};
  return keys;
}

GeneratorConfig readConfig(std::istream& in) {
  GeneratorConfig config;
  for (const auto& kv : detail::parseKeyValues(in)) {
    const std::string_view key = kv.key;
    bool handled = false;
    for (const auto& rk : kRangeKeys) {
      const bool isMin = key.size() == rk.prefix.size() + 4 && key.starts_with(rk.prefix) &&
                         key.ends_with("_min");
      const bool isMax = key.size() == rk.prefix.size() + 4 && key.starts_with(rk.prefix) &&
                         key.ends_with("_max");
      if (!isMin && !isMax) continue;
      if (rk.member == nullptr) {
        auto money = Money::parse(kv.value);
        if (!money) {
          throw ParseError(ErrorCode::kParse, kv.line, kv.valueColumn,
                           "key '" + kv.key + "': expected a non-negative decimal with at most two "
                           "decimals, got \"" + kv.value + "\"");
        }
        (isMin ? config.revenue.min : config.revenue.max) = *money;
      } else {
        auto& range = config.*(rk.member);
        (isMin ? range.min : range.max) = detail::parseInt(kv);
      }
      handled = true;
      break;
    }
    if (handled) continue;

    if (key == "datacenters") {
      config.datacenterCount = detail::parseInt(kv);
    } else if (key == "distribution") {
      auto d = parseDistribution(kv.value);
      if (!d) {
        throw ParseError(ErrorCode::kParse, kv.line, kv.valueColumn,
                         "unknown distribution \"" + kv.value +
                             "\" (uniform, normal-truncated, exponential-truncated)");
      }
      config.distribution = *d;
    } else if (key == "elasticity_probability") {
      config.elasticityEventProbability = detail::parseDouble(kv);
    } else if (key == "vertical_step") {
      auto m = parseVerticalStepMode(kv.value);
      if (!m) {
        throw ParseError(ErrorCode::kParse, kv.line, kv.valueColumn,
                         "unknown vertical_step \"" + kv.value + "\" (resample, halve-double)");
      }
      config.verticalStep = *m;
    } else if (key == "environment") {
      try {
        config.environment = EnvironmentCoordinate::parse(kv.value);
      } catch (const Error& e) {
        throw ParseError(ErrorCode::kParse, kv.line, kv.valueColumn, e.what());
      }
    } else if (key == "seed") {
      config.seed = detail::parseUnsigned(kv);
    } else {
      throw ParseError(ErrorCode::kUnknownKey, kv.line, 1, "unknown key '" + kv.key + "'");
    }
  }
  config.validate();
  return config;
}

GeneratorConfig readConfigString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return readConfig(in);
}

void writeConfig(const GeneratorConfig& config, std::ostream& out) {
  for (const auto& rk : kRangeKeys) {
    if (rk.member == nullptr) {
      out << "revenue_min=" << config.revenue.min.toString() << '\n';
      out << "revenue_max=" << config.revenue.max.toString() << '\n';
      continue;
    }
    const auto& range = config.*(rk.member);
    out << rk.prefix << "_min=" << range.min << '\n';
    out << rk.prefix << "_max=" << range.max << '\n';
  }
  out << "datacenters=" << config.datacenterCount << '\n';
  out << "distribution=" << distributionName(config.distribution) << '\n';
  out << "elasticity_probability=" << detail::formatDouble(config.elasticityEventProbability) << '\n';
  out << "vertical_step=" << verticalStepModeName(config.verticalStep) << '\n';
  if (config.environment) out << "environment=" << config.environment->toString() << '\n';
  if (config.seed) out << "seed=" << *config.seed << '\n';
  if (!out) throw IoError(0, "failed to write config");
}

std::string writeConfigString(const GeneratorConfig& config) {
  std::ostringstream out;
  writeConfig(config, out);
  return std::move(out).str();
}

}  // namespace vmp
