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

#ifndef VMP_ERROR_HPP
#define VMP_ERROR_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vmp {

enum class ErrorCode {
  kArgument,      // bad function argument (e.g. non-positive target duration)
  kParse,         // malformed text in a trace, config or fleet file
  kSchema,        // wrong header or column count
  kDomain,        // value outside its domain (negative field)
  kRange,         // min > max or similar range inconsistency
  kUnknownKey,    // unrecognised key in a key=value file
  kConfig,        // configuration cannot be satisfied
  kInvalidTrace,  // trace failed structural validation
  kCausality,     // event stream out of causal order
  kIo,            // stream read/write failure
  kContract,      // placement algorithm broke the admission rule
};

const char* errorCodeName(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with 1-based line and column of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column,
             const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class IoError : public Error {
 public:
  IoError(std::uint64_t byteOffset, const std::string& message);

  std::uint64_t byteOffset() const noexcept { return byteOffset_; }

 private:
  std::uint64_t byteOffset_;
};

}  // namespace vmp

#endif  // VMP_ERROR_HPP
