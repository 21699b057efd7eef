// Copyright 2026 The Forge Authors
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

#ifndef FORGE_ERRORS_HPP_
#define FORGE_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace forge {

// Exit-code vocabulary shared by the library, the C API and the CLI.
enum class ErrorKind { kViolation = 1, kInput = 2, kBudget = 3, kPrecondition = 4 };

class ForgeError : public std::runtime_error {
 public:
  ForgeError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public ForgeError {
 public:
  explicit InputError(const std::string& what) : ForgeError(ErrorKind::kInput, what) {}
};

// A documented precondition of an operation does not hold.
class PreconditionError : public ForgeError {
 public:
  explicit PreconditionError(const std::string& what) : ForgeError(ErrorKind::kPrecondition, what) {}
};

// A construction produced an object that failed its own post-condition check.
class ViolationError : public ForgeError {
 public:
  explicit ViolationError(const std::string& what) : ForgeError(ErrorKind::kViolation, what) {}
};

class BudgetExhausted : public ForgeError {
 public:
  BudgetExhausted(const std::string& what, std::int64_t largest_level)
      : ForgeError(ErrorKind::kBudget, what), largest_level_(largest_level) {}
  std::int64_t largest_level() const { return largest_level_; }

 private:
  std::int64_t largest_level_;
};

}  // namespace forge

#endif  // FORGE_ERRORS_HPP_
