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

#ifndef VMP_TRACE_IO_HPP
#define VMP_TRACE_IO_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmp/error.hpp"
#include "vmp/model.hpp"

namespace vmp {

inline constexpr std::array<std::string_view, 12> kTraceColumns = {
    "t", "sb", "dc", "vj", "vcpu", "vram", "vnet", "r", "sla", "ucpu", "uram", "unet"};
inline constexpr std::string_view kTraceHeaderLine = "t,sb,dc,vj,vcpu,vram,vnet,r,sla,ucpu,uram,unet";
inline constexpr std::string_view kTraceFormatVersion = "1";

struct TraceFileHeader {
  std::array<std::string_view, 12> columnNames = kTraceColumns;
  std::string_view formatVersion = kTraceFormatVersion;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class ViolationKind {
  kUtilizationExceedsCapacity,  // U > V on `resource`
  kDuplicateRow,                // (t, b, c, j) seen twice
  kLifetimeGap,                 // VM missing between its first and last t
  kNegativeField,
  kNonPositiveField,            // identities and capacities must be >= 1
};
std::string_view violationKindName(ViolationKind k) noexcept;

struct Violation {
  ViolationKind kind;
  Time t = 0;
  VmId vm;
  std::optional<Resource> resource;
  std::string detail;

  std::string toString() const;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
  std::string toString() const;
};

ValidationReport validateTrace(const WorkloadTrace& trace);

class InvalidTraceError : public Error {
 public:
  explicit InvalidTraceError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

// Throws InvalidTraceError when validateTrace reports anything.
void requireValid(const WorkloadTrace& trace);

// ---------------------------------------------------------------------------
// Trace files (*.vmpt)
// ---------------------------------------------------------------------------

struct ReadTraceResult {
  WorkloadTrace trace;
  bool resorted = false;  // input rows were not in (t, b, c, j) order
};

// Header line plus one LF-terminated CSV line per row. Returns bytes written;
// throws IoError on sink failure.
std::uint64_t writeTrace(const WorkloadTrace& trace, std::ostream& out);
std::string writeTraceString(const WorkloadTrace& trace);

// Throws ParseError (kParse / kSchema / kDomain) with line and column.
ReadTraceResult readTrace(std::istream& in);
ReadTraceResult readTraceString(std::string_view text);

std::string formatRow(const TraceRow& row);

// ---------------------------------------------------------------------------
// Generator config files (*.cfg)
// ---------------------------------------------------------------------------

// Every key readConfig accepts, in the order writeConfig emits them.
const std::vector<std::string_view>& configKeys();

// Flat key=value, '#' comments. Omitted keys keep GeneratorConfig defaults.
// Throws ParseError(kUnknownKey) naming an unknown key, ParseError(kParse) on
// bad values and Error(kRange) on inverted ranges.
GeneratorConfig readConfig(std::istream& in);
GeneratorConfig readConfigString(std::string_view text);
void writeConfig(const GeneratorConfig& config, std::ostream& out);
std::string writeConfigString(const GeneratorConfig& config);

}  // namespace vmp

#endif  // VMP_TRACE_IO_HPP
