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

#include "forge/faults.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "forge/errors.hpp"

namespace forge {

namespace {

std::mutex mu;
std::set<std::string>& active() {
  static std::set<std::string> s;
  return s;
}

}  // namespace

bool fault_active(const std::string& name) {
  std::lock_guard<std::mutex> lock(mu);
  return active().count(name) > 0;
}

void set_faults(const std::vector<std::string>& names) {
  const auto known = known_faults();
  for (const auto& n : names) {
    if (std::find(known.begin(), known.end(), n) == known.end()) throw InputError("unknown fault '" + n + "'");
  }
  std::lock_guard<std::mutex> lock(mu);
  active() = std::set<std::string>(names.begin(), names.end());
}

void clear_faults() {
  std::lock_guard<std::mutex> lock(mu);
  active().clear();
}

std::vector<std::string> known_faults() { return {"symmetrize"}; }

}  // namespace forge
