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

// Closing orbits: replace the orbits of an action by finite coset spaces
// Gamma/M_i while keeping the action on a finite anchor.

#ifndef FORGE_ORBITCLOSE_HPP_
#define FORGE_ORBITCLOSE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/abelian.hpp"
#include "forge/actions.hpp"
#include "forge/ustructure.hpp"

namespace forge {

inline constexpr Int kDefaultFamilyBudget = 10000;

// Orbits are Gamma/K_i; orbit i carries anchors A_i given by group
// elements (distinct modulo K_i). The anchors form anchor_structure.
struct OrbitCloseProblem {
  FgAbelianGroup group;
  std::vector<Subgroup> kernels;
  std::vector<std::vector<GroupElement>> anchors;
  UStructure anchor_structure;
  std::vector<std::vector<int>> anchor_points;  // index into anchor_structure
  // Optional names of orbit points keyed by coordinates in Gamma/K_i.
  std::vector<std::map<IntVec, PointId>> point_names;
};

// Throws InputError when the problem is malformed, anchors collide or the
// anchor structure is not consistent with the group (some group element
// maps a related anchor tuple onto an unrelated one).
void check_problem(const OrbitCloseProblem& p);

struct SubgroupFamily {
  std::vector<Subgroup> f;  // F_i inside quotient(group, kernels[i]).group()
};

struct FamilyVerdict {
  bool ok = true;
  int condition = 0;  // 1 or 2 when !ok
  std::string message;
};

// Decides conditions (i) and (ii) exactly over the finite quotient
// Gamma / (intersection of the preimages of F_i).
FamilyVerdict check_family(const OrbitCloseProblem& p, const SubgroupFamily& fam);

// Independent oracle: gamma over a box of coset representatives, every
// choice of orbit subset and pair lists, sigma searched in a box.
FamilyVerdict check_family_brute(const OrbitCloseProblem& p, const SubgroupFamily& fam, int sigma_radius);

struct FamilySearch {
  SubgroupFamily family;
  Int level = 0;     // product of free indices
  Int exponent = 0;  // exponent of the sum of Delta_i/F_i
  int tried = 0;
};

// Candidates are torsion-free finite-index families ordered by the product
// of free indices [Delta_i : F_i] / |T_i|, then by exponent N, then by
// basis. Throws BudgetExhausted past `budget`.
FamilySearch find_subgroup_family(const OrbitCloseProblem& p, Int budget = kDefaultFamilyBudget);

struct CloseResult {
  UStructure b;
  Action beta;
  PointMap anchor_map;  // anchor_structure index -> b index
  FamilySearch search;
};

CloseResult close_problem(const OrbitCloseProblem& p, Int budget = kDefaultFamilyBudget);

struct LabelReduction {
  std::vector<std::vector<int>> classes;    // convex runs of label indices
  std::vector<std::vector<int>> relations;  // least invariant relation per run
};

LabelReduction reduce_distance_labels(const UStructure& x, const Action& alpha, const std::vector<int>& anchor);

// Problem for the orbits of alpha through the anchor points of x.
OrbitCloseProblem problem_from_action(const Action& alpha, const std::vector<int>& anchor);

struct OrbitCloseResult {
  CloseResult close;
  OrbitCloseProblem problem;
  LabelReduction labels;
  PointMap anchor_embedding;  // x index -> b index, -1 off the anchor
};

OrbitCloseResult close_orbits(const Action& alpha, const std::vector<int>& anchor,
                              Int budget = kDefaultFamilyBudget);

// Anchor C plus its generator images, then close_orbits.
OrbitCloseResult close_then_extend(const Action& sigma, const std::vector<int>& c,
                                   Int budget = kDefaultFamilyBudget);

// Coset sigma with alpha_l(sigma) = t_l for every listed (l, t_l), t_l
// given in Gamma; nullopt when the cosets do not meet.
std::optional<GroupElement> common_lift(const OrbitCloseProblem& p,
                                        const std::vector<std::pair<int, GroupElement>>& targets);

}  // namespace forge

#endif  // FORGE_ORBITCLOSE_HPP_
