// Copyright 2026 The Authors.
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

#ifndef RSGNN_ERROR_H_
#define RSGNN_ERROR_H_

#include <stdexcept>
#include <string>

namespace rsgnn {

// Numeric values double as the C API status codes and CLI exit codes.
enum class ErrorCode {
  kContract = 1,
  kValidation = 2,
  kCapacity = 3,
  kLoad = 5,
  kNumeric = 6,
  kInconsistent = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Caller broke a documented precondition (shapes, budgets, ranges).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& m)
      : Error(ErrorCode::kContract, m) {}
};

// Input data is malformed.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& m)
      : Error(ErrorCode::kValidation, m) {}
};

// Requested work exceeds a configured size guard.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& m)
      : Error(ErrorCode::kCapacity, m) {}
};

class LoadError : public Error {
 public:
  explicit LoadError(const std::string& m) : Error(ErrorCode::kLoad, m) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& m)
      : Error(ErrorCode::kNumeric, m) {}
};

// Observed labels contradict each other.
class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& m)
      : Error(ErrorCode::kInconsistent, m) {}
};

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

}  // namespace rsgnn

#endif  // RSGNN_ERROR_H_
