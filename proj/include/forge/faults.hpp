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

// Named faults for exercising the self-test harness.

#ifndef FORGE_FAULTS_HPP_
#define FORGE_FAULTS_HPP_

#include <string>
#include <vector>

namespace forge {

bool fault_active(const std::string& name);
void set_faults(const std::vector<std::string>& names);
void clear_faults();

// Names accepted by set_faults.
std::vector<std::string> known_faults();

}  // namespace forge

#endif  // FORGE_FAULTS_HPP_
