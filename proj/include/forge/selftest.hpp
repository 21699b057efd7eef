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

// Property suite behind the selftest command and the acceptance binary.

#ifndef FORGE_SELFTEST_HPP_
#define FORGE_SELFTEST_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace forge {

struct CheckResult {
  std::string id;      // "1".."10" for the criteria, a name otherwise
  std::string module;  // amalgam, extend, orbitclose, randgraph, ustructure, actions
  std::string name;
  bool passed = false;
  int instances = 0;
  std::string witness;  // first failure
  double seconds = 0;
};

struct CheckInfo {
  std::string id;
  std::string module;
  std::string name;
};

std::vector<CheckInfo> list_checks();

// filter: empty for all, a module name, or a check id. Threads <= 0 reads
// FORGE_THREADS (default 1). Throws InputError on an unknown filter.
std::vector<CheckResult> run_checks(const std::string& filter, std::uint64_t seed, int threads = 0);

CheckResult run_check(const std::string& id, std::uint64_t seed);

}  // namespace forge

#endif  // FORGE_SELFTEST_HPP_
