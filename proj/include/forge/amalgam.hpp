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

// Free amalgam D of B_1..B_p over a common substructure A, and the
// amalgamated action on D.

#ifndef FORGE_AMALGAM_HPP_
#define FORGE_AMALGAM_HPP_

#include <string>
#include <vector>

#include "forge/actions.hpp"
#include "forge/ustructure.hpp"

namespace forge {

struct AmalgamPart {
  UStructure b;
  PointMap iota;  // embedding of A into b
};

struct AmalgamOptions {
  // Suffix appended to the names of part j's new points. Defaults to
  // "#j". An empty suffix keeps the bare name.
  std::vector<std::string> tags;
  // Keep every name bare when that causes no collision.
  bool bare_if_unique = false;
};

struct AmalgamResult {
  UStructure d;
  PointMap psi;                  // A -> D
  std::vector<PointMap> phis;    // B_j -> D
  std::vector<PointMap> iotas;   // copied from the parts
  // For A empty: the label t above which cross-part pairs are joined;
  // -1 when not applicable.
  int cross_label = -1;
};

AmalgamResult free_amalgam(const UStructure& a, const std::vector<AmalgamPart>& parts,
                           const AmalgamOptions& options = {});

// rho agrees with pi on A and with sigma_j on C_j.
Action amalgamated_action(const Action& pi, const std::vector<Action>& sigmas, const AmalgamResult& result);

}  // namespace forge

#endif  // FORGE_AMALGAM_HPP_
