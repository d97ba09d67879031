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

#include "vmp/error.hpp"

namespace vmp {

const char* errorCodeName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kArgument: return "argument";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kUnknownKey: return "unknown_key";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kInvalidTrace: return "invalid_trace";
    case ErrorCode::kCausality: return "causality";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kContract: return "contract";
  }
  return "unknown";
}

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": " + message),
      line_(line),
      column_(column) {}

IoError::IoError(std::uint64_t byteOffset, const std::string& message)
    : Error(ErrorCode::kIo, message + " (at byte " + std::to_string(byteOffset) + ")"),
      byteOffset_(byteOffset) {}

}  // namespace vmp
