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

// Domain types shared by every module: environment coordinates, VM
// identities, trace rows, generator configuration and service events.

#ifndef VMP_MODEL_HPP
#define VMP_MODEL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vmp {

using Time = std::int64_t;

// ---------------------------------------------------------------------------
// Environment taxonomy
// ---------------------------------------------------------------------------

// Quantities that may change with t in a given environment.
enum class TimeVariable : std::uint8_t {
  kServiceVmCount = 0,  // mS_b(t)
  kVcpu,
  kVram,
  kUcpu,
  kUram,
  kUnet,
};

inline constexpr std::array<TimeVariable, 6> kAllTimeVariables = {
    TimeVariable::kServiceVmCount, TimeVariable::kVcpu, TimeVariable::kVram,
    TimeVariable::kUcpu,           TimeVariable::kUram, TimeVariable::kUnet};

std::string_view timeVariableName(TimeVariable v) noexcept;

class TimeVariableSet {
 public:
  constexpr TimeVariableSet() = default;
  constexpr TimeVariableSet(std::initializer_list<TimeVariable> vars) {
    for (auto v : vars) insert(v);
  }

  constexpr void insert(TimeVariable v) { bits_ |= bit(v); }
  constexpr bool contains(TimeVariable v) const { return (bits_ & bit(v)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool isSupersetOf(TimeVariableSet other) const {
    return (bits_ & other.bits_) == other.bits_;
  }
  constexpr std::uint8_t bits() const { return bits_; }
  std::size_t size() const;

  std::vector<TimeVariable> members() const;
  // "mS, Vcpu, Vram" style listing; "-" when empty.
  std::string toString() const;

  friend constexpr TimeVariableSet operator|(TimeVariableSet a, TimeVariableSet b) {
    TimeVariableSet r;
    r.bits_ = a.bits_ | b.bits_;
    return r;
  }
  friend constexpr bool operator==(TimeVariableSet, TimeVariableSet) = default;

 private:
  static constexpr std::uint8_t bit(TimeVariable v) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(v));
  }
  std::uint8_t bits_ = 0;
};

// Elasticity and overbooking values are two-bit masks: 1 = horizontal /
// server, 2 = vertical / network, 3 = both.
inline constexpr int kHorizontalElasticity = 1;
inline constexpr int kVerticalElasticity = 2;
inline constexpr int kServerOverbooking = 1;
inline constexpr int kNetworkOverbooking = 2;

class EnvironmentCoordinate {
 public:
  constexpr EnvironmentCoordinate() = default;
  // Throws Error(kArgument) unless both values are in 0..3.
  EnvironmentCoordinate(int elasticity, int overbooking);

  constexpr int elasticity() const { return elasticity_; }
  constexpr int overbooking() const { return overbooking_; }

  constexpr bool horizontal() const { return (elasticity_ & kHorizontalElasticity) != 0; }
  constexpr bool vertical() const { return (elasticity_ & kVerticalElasticity) != 0; }
  constexpr bool serverOverbooking() const { return (overbooking_ & kServerOverbooking) != 0; }
  constexpr bool networkOverbooking() const { return (overbooking_ & kNetworkOverbooking) != 0; }

  // "e,o"
  std::string toString() const;
  // Parses "e,o"; throws Error(kArgument) on anything else.
  static EnvironmentCoordinate parse(std::string_view text);

  friend constexpr bool operator==(EnvironmentCoordinate, EnvironmentCoordinate) = default;
  friend constexpr auto operator<=>(EnvironmentCoordinate, EnvironmentCoordinate) = default;

 private:
  int elasticity_ = 0;
  int overbooking_ = 0;
};

// All 16 coordinates, elasticity-major.
std::array<EnvironmentCoordinate, 16> allEnvironments();

TimeVariableSet timeVariables(EnvironmentCoordinate env);

// True iff env `a` permits every time variable `b` permits.
bool covers(EnvironmentCoordinate a, EnvironmentCoordinate b);

// Least coordinate covering both.
EnvironmentCoordinate join(EnvironmentCoordinate a, EnvironmentCoordinate b);

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

// Fixed-point currency with two decimals, stored as integer cents.
class Money {
 public:
  constexpr Money() = default;
  static constexpr Money fromCents(std::int64_t cents) {
    Money m;
    m.cents_ = cents;
    return m;
  }

  constexpr std::int64_t cents() const { return cents_; }
  double toDouble() const { return static_cast<double>(cents_) / 100.0; }

  // Minimal decimal rendering: 50 -> "0.5", 100 -> "1", 5 -> "0.05".
  std::string toString() const;
  // Accepts "D+" or "D+.D" or "D+.DD"; nullopt otherwise (sign not allowed).
  static std::optional<Money> parse(std::string_view text);

  friend constexpr Money operator+(Money a, Money b) { return fromCents(a.cents_ + b.cents_); }
  constexpr Money& operator+=(Money other) {
    cents_ += other.cents_;
    return *this;
  }
  friend constexpr bool operator==(Money, Money) = default;
  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  std::int64_t cents_ = 0;
};

enum class Resource : std::uint8_t { kCpu = 0, kRam = 1, kNet = 2 };
inline constexpr std::array<Resource, 3> kAllResources = {Resource::kCpu, Resource::kRam,
                                                          Resource::kNet};
std::string_view resourceName(Resource r) noexcept;

// One amount per resource: ECU, GB, Mbps.
struct Resources {
  std::int64_t cpu = 0;
  std::int64_t ram = 0;
  std::int64_t net = 0;

  constexpr std::int64_t& operator[](Resource r) {
    return r == Resource::kCpu ? cpu : (r == Resource::kRam ? ram : net);
  }
  constexpr std::int64_t operator[](Resource r) const {
    return r == Resource::kCpu ? cpu : (r == Resource::kRam ? ram : net);
  }
  constexpr Resources& operator+=(const Resources& o) {
    cpu += o.cpu;
    ram += o.ram;
    net += o.net;
    return *this;
  }
  constexpr Resources& operator-=(const Resources& o) {
    cpu -= o.cpu;
    ram -= o.ram;
    net -= o.net;
    return *this;
  }
  friend constexpr Resources operator+(Resources a, const Resources& b) { return a += b; }
  friend constexpr Resources operator-(Resources a, const Resources& b) { return a -= b; }
  friend constexpr bool operator==(const Resources&, const Resources&) = default;
};

using UtilizationSample = Resources;

// (b, c, j): service, datacenter, VM index unique within (b, c).
struct VmId {
  std::int64_t service = 0;
  std::int64_t datacenter = 0;
  std::int64_t index = 0;

  friend constexpr auto operator<=>(const VmId&, const VmId&) = default;
  friend constexpr bool operator==(const VmId&, const VmId&) = default;
};

std::string toString(const VmId& id);  // "(b,c,j)"

// One active VM at one discrete time step.
struct TraceRow {
  Time t = 0;
  VmId vm;
  Resources capacity;  // Vcpu, Vram, Vnet
  Money revenue;       // R per time step
  std::int64_t sla = 0;
  UtilizationSample utilization;  // Ucpu, Uram, Unet

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

// Lifetime summary of one VM, derived from its rows.
struct VmRecord {
  VmId id;
  Resources initialCapacity;
  Money revenue;
  std::int64_t sla = 0;
  Time tInit = 0;
  Time tEnd = 0;
};

// Rows kept sorted by (t, b, c, j).
class WorkloadTrace {
 public:
  WorkloadTrace() = default;
  explicit WorkloadTrace(std::vector<TraceRow> rows);

  std::span<const TraceRow> rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  std::size_t size() const { return rows_.size(); }

  // Largest t present; 0 for an empty trace.
  Time duration() const;

  // Rows with the given t, as a contiguous span.
  std::span<const TraceRow> rowsAt(Time t) const;

  // Distinct service ids in ascending order.
  std::vector<std::int64_t> services() const;
  // Largest datacenter id present (0 when empty).
  std::int64_t maxDatacenter() const;
  // mS_b(t): number of rows of service b at t.
  std::size_t serviceVmCount(std::int64_t service, Time t) const;
  // mDC_c(t): number of rows in datacenter c at t.
  std::size_t datacenterVmCount(std::int64_t datacenter, Time t) const;
  // One record per VM identity in (b, c, j) order.
  std::vector<VmRecord> vmRecords() const;

  friend bool operator==(const WorkloadTrace&, const WorkloadTrace&) = default;

 private:
  std::vector<TraceRow> rows_;
};

bool rowOrderLess(const TraceRow& a, const TraceRow& b);

// ---------------------------------------------------------------------------
// Generator configuration
// ---------------------------------------------------------------------------

struct IntRange {
  std::int64_t min = 0;
  std::int64_t max = 0;
  friend constexpr bool operator==(const IntRange&, const IntRange&) = default;
};

struct MoneyRange {
  Money min;
  Money max;
  friend constexpr bool operator==(const MoneyRange&, const MoneyRange&) = default;
};

enum class Distribution { kUniform, kNormalTruncated, kExponentialTruncated };
std::string_view distributionName(Distribution d) noexcept;
std::optional<Distribution> parseDistribution(std::string_view name);

enum class VerticalStepMode { kResample, kHalveDouble };
std::string_view verticalStepModeName(VerticalStepMode m) noexcept;
std::optional<VerticalStepMode> parseVerticalStepMode(std::string_view name);

// Defaults reproduce the example generator inputs (duration 4, CPU 4-10,
// memory 2-16, network 100-1000, ...), with two datacenters.
struct GeneratorConfig {
  IntRange duration{4, 4};
  IntRange vcpu{4, 10};
  IntRange vram{2, 16};
  IntRange vnet{100, 1000};
  IntRange ucpu{2, 10};
  IntRange uram{1, 16};
  IntRange unet{0, 1000};
  MoneyRange revenue{Money::fromCents(10), Money::fromCents(150)};
  IntRange sla{0, 2};
  IntRange vmsPerService{1, 6};
  IntRange serviceCount{1, 1};
  std::int64_t datacenterCount = 2;
  Distribution distribution = Distribution::kUniform;
  std::optional<std::uint64_t> seed;
  std::optional<EnvironmentCoordinate> environment;
  double elasticityEventProbability = 0.5;
  VerticalStepMode verticalStep = VerticalStepMode::kResample;

  // Highest SLA priority level s.
  std::int64_t highestSla() const { return sla.max; }

  // Throws Error(kRange) for inverted or negative ranges and out-of-domain
  // scalars.
  void validate() const;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

// ---------------------------------------------------------------------------
// Events
// ---------------------------------------------------------------------------

enum class EventKind : std::uint8_t {
  kServiceCreate = 0,  // +S_b, carries the initial VMs
  kVmAdd,              // +V''_bcj
  kVmRemove,           // -V''_bcj
  kVerticalResize,     // capacities of V''_bcj change
  kServiceDestroy,     // -S_b, releases every remaining VM
};
std::string_view eventKindName(EventKind k) noexcept;

// What applyEvents needs to rebuild one VM.
struct VmSpec {
  VmId id;
  Resources capacity;
  Money revenue;
  std::int64_t sla = 0;
  friend bool operator==(const VmSpec&, const VmSpec&) = default;
};

struct ServiceEvent {
  Time t = 0;
  EventKind kind = EventKind::kServiceCreate;
  std::int64_t service = 0;
  // Subject VM for kVmAdd / kVmRemove / kVerticalResize. For kVmAdd and
  // kVerticalResize the capacity is the new one.
  std::optional<VmSpec> vm;
  // Initial members for kServiceCreate; empty otherwise.
  std::vector<VmSpec> initialVms;

  friend bool operator==(const ServiceEvent&, const ServiceEvent&) = default;
};

// "+S_1@0", "+V(1,1,2)@1", "-V(1,2,2)@4", "~V(1,1,1)@4", "-S_1@5".
std::string toString(const ServiceEvent& e);

}  // namespace vmp

#endif  // VMP_MODEL_HPP
