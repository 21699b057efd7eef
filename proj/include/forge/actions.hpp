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

// Actions of finitely generated abelian groups by automorphisms, stored as
// one permutation of the space's points per group generator.

#ifndef FORGE_ACTIONS_HPP_
#define FORGE_ACTIONS_HPP_

#include <optional>
#include <set>
#include <utility>
#include <string>
#include <vector>

#include "forge/abelian.hpp"
#include "forge/ustructure.hpp"

namespace forge {

class Action {
 public:
  Action() = default;
  // Checks shapes only; use validate_action for the relators.
  Action(FgAbelianGroup group, UStructure space, std::vector<Perm> images);
  static Action trivial(FgAbelianGroup group, UStructure space);

  const FgAbelianGroup& group() const { return group_; }
  const UStructure& space() const { return space_; }
  const std::vector<Perm>& images() const { return images_; }
  Perm element_image(const GroupElement& g) const;

  bool operator==(const Action&) const = default;

 private:
  FgAbelianGroup group_;
  UStructure space_;
  std::vector<Perm> images_;
};

struct ActionIssue {
  std::string kind;  // "commutator", "torsion relator" or "automorphism"
  std::string message;
  std::vector<PointId> witness;
};

std::vector<ActionIssue> validate_action(const Action& a);

int apply(const Action& a, const GroupElement& g, int x);

// Orbits sorted by least member, members ascending.
std::vector<std::vector<int>> orbits(const Action& a);

// Points of pi's space are matched to sigma's by name; pi's space must be
// the induced substructure. Throws InputError otherwise.
bool is_subrepresentation(const Action& pi, const Action& sigma);

// Restriction to an invariant subset of points.
Action restrict_action(const Action& a, const std::vector<int>& subset);

// Pullback along an embedding iota of x into pi's space.
Action pullback(const Action& pi, const UStructure& x, const PointMap& iota);

// Spaces must have the same points.
bool in_basic_nbhd(const Action& theta, const Action& base, const std::vector<int>& anchor);

// g with g * gamma^pi = gamma^theta * g for every generator, as a map from
// pi's space onto theta's space.
std::optional<PointMap> are_conjugate(const Action& pi, const Action& theta);

// The action g . pi . g^{-1} transported onto `target` along bijection g.
Action conjugate_by(const Action& pi, const UStructure& target, const PointMap& g);

// Least equivalence on n points containing `pairs` (and `base` classes when
// given) and invariant under every permutation in gens. Canonical ids.
std::vector<int> invariant_equivalence(int n, const std::vector<Perm>& gens,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       const std::vector<int>* base = nullptr);

// Closure of a tuple set under the group generated by gens.
std::set<Tuple> tuple_orbit_closure(const std::set<Tuple>& seeds, const std::vector<Perm>& gens);

}  // namespace forge

#endif  // FORGE_ACTIONS_HPP_
