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

#include "keyvalue.hpp"

#include <charconv>
#include <istream>
#include <set>

#include "vmp/error.hpp"

namespace vmp::detail {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void badValue(const KeyValue& kv, const char* what) {
  throw ParseError(ErrorCode::kParse, kv.line, kv.valueColumn,
                   "key '" + kv.key + "': expected " + what + ", got \"" + kv.value + "\"");
}

}  // namespace

std::vector<KeyValue> parseKeyValues(std::istream& in) {
  std::vector<KeyValue> out;
  std::set<std::string> seen;
  std::string raw;
  std::size_t lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(ErrorCode::kParse, lineNo, 1, "expected key=value, got \"" + std::string(line) + "\"");
    }
    KeyValue kv;
    kv.key = std::string(trim(line.substr(0, eq)));
    kv.value = std::string(trim(line.substr(eq + 1)));
    kv.line = lineNo;
    kv.valueColumn = static_cast<std::size_t>(raw.find('=')) + 2;
    if (kv.key.empty()) throw ParseError(ErrorCode::kParse, lineNo, 1, "empty key");
    if (!seen.insert(kv.key).second) {
      throw ParseError(ErrorCode::kParse, lineNo, 1, "duplicate key '" + kv.key + "'");
    }
    out.push_back(std::move(kv));
  }
  return out;
}

std::int64_t parseInt(const KeyValue& kv) {
  std::int64_t v = 0;
  const char* end = kv.value.data() + kv.value.size();
  auto [ptr, ec] = std::from_chars(kv.value.data(), end, v);
  if (kv.value.empty() || ec != std::errc() || ptr != end) badValue(kv, "an integer");
  return v;
}

std::uint64_t parseUnsigned(const KeyValue& kv) {
  std::uint64_t v = 0;
  const char* end = kv.value.data() + kv.value.size();
  auto [ptr, ec] = std::from_chars(kv.value.data(), end, v);
  if (kv.value.empty() || ec != std::errc() || ptr != end) badValue(kv, "an unsigned 64-bit integer");
  return v;
}

double parseDouble(const KeyValue& kv) {
  double v = 0;
  const char* end = kv.value.data() + kv.value.size();
  auto [ptr, ec] = std::from_chars(kv.value.data(), end, v);
  if (kv.value.empty() || ec != std::errc() || ptr != end) badValue(kv, "a number");
  return v;
}

std::string formatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace vmp::detail
