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

#ifndef VMP_SRC_KEYVALUE_HPP
#define VMP_SRC_KEYVALUE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace vmp::detail {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
  std::size_t valueColumn = 0;
};

// One entry per non-blank, non-comment line. Throws ParseError on a line
// without '=' or a repeated key.
std::vector<KeyValue> parseKeyValues(std::istream& in);

std::int64_t parseInt(const KeyValue& kv);
std::uint64_t parseUnsigned(const KeyValue& kv);
double parseDouble(const KeyValue& kv);

// Shortest decimal text that reads back to the same double.
std::string formatDouble(double value);

}  // namespace vmp::detail

#endif  // VMP_SRC_KEYVALUE_HPP
