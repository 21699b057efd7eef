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

// JSON request/response operations shared by the C API and the CLI.

#ifndef FORGE_SERVICE_HPP_
#define FORGE_SERVICE_HPP_

#include <string>
#include <vector>

#include "forge/json_io.hpp"

namespace forge {

inline constexpr const char* kToolVersion = "1.0.0";

// 0 ok, 1 violation, 2 input or precondition error, 3 budget exhausted,
// 4 internal error.
struct ServiceResult {
  int status = 0;
  Json body;
  std::string error;
};

std::vector<std::string> operation_names();

// Never throws; errors land in status and error.
ServiceResult run_operation(const std::string& op, const Json& request);

std::string sha256_hex(const std::string& bytes);

}  // namespace forge

#endif  // FORGE_SERVICE_HPP_
