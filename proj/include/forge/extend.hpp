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

// Extending actions to larger finite structures: one-point extensions by
// coset spaces, iterated extension through a finite target, n-th roots
// over a subgroup, and the amalgam witnessing weak amalgamation.

#ifndef FORGE_EXTEND_HPP_
#define FORGE_EXTEND_HPP_

#include <optional>
#include <vector>

#include "forge/abelian.hpp"
#include "forge/actions.hpp"
#include "forge/amalgam.hpp"
#include "forge/ustructure.hpp"

namespace forge {

// Coset bookkeeping of a one-point extension C = A u Gamma/K.
struct CosetData {
  QuotientGroup delta;                 // Gamma/K
  std::vector<GroupElement> elements;  // elements of Gamma/K
  std::vector<int> points;             // C index of each coset
  PointMap a_in_c;                     // A -> C
  // Per label: an A point equivalent to b in B, or -1.
  std::vector<int> witness;
};

struct ExtensionResult {
  UStructure space;
  Action action;
  PointMap inclusion;  // B -> space
  std::optional<CosetData> cosets;
};

// B is A plus one point; a_in_b embeds pi's space into B.
ExtensionResult one_point_extension(const UStructure& b, const Action& pi, const PointMap& a_in_b);
// A matched into B by point names.
ExtensionResult one_point_extension(const UStructure& b, const Action& pi);

// Classes of E_s on C computed directly from the coset formulas: for each
// coset dK the set [d.a]_A u {d.s K : s.a E a}, and [a']_A for points whose
// orbit avoids the class of b. Sorted, duplicates removed.
std::vector<std::vector<int>> coset_formula_classes(const ExtensionResult& r, const Action& pi, int label);

// Covers B point by point, least uncovered point first.
ExtensionResult extend_action_through(const UStructure& b, const Action& pi, const PointMap& a_in_b);
ExtensionResult extend_action_through(const UStructure& b, const Action& pi);

struct RootProblem {
  UStructure b;                     // contains pi's space by name
  Action pi;                        // Gamma on A
  std::vector<GroupElement> delta;  // generators of Delta inside Gamma
  GroupElement g;                   // Gamma = <Delta, g>
  std::vector<Perm> sigma;          // action on b of each Delta generator
  // Used only when g has infinite order modulo Delta; must be a multiple
  // of the order of g on A. Defaults to that order.
  std::optional<Int> order_override;
};

struct RootResult {
  UStructure space;     // D
  Action delta_action;  // Z^m acting through the Delta generators
  Perm root;            // h
  Int n = 0;
  bool infinite_case = false;
  IntVec theta;         // g^n as a combination of the Delta generators
  Perm theta_image;     // theta under delta_action
  AmalgamResult copies; // B_0..B_{n-1} amalgamated over A
  Action gamma_action;  // Delta by delta_action, g by h
};

RootResult root_extension(const RootProblem& p);

struct WapWitness {
  AmalgamResult amalgam;
  Action rho;
  PointMap e_b, e_c;
};

// Hat-A is matched into hat-B and hat-C by point names.
WapWitness wap_witness(const Action& pi_hat, const Action& theta, const Action& tau);

// Product of images[j]^coeffs[j] for commuting images.
Perm combine_images(const std::vector<Perm>& images, const IntVec& coeffs, int npoints);

}  // namespace forge

#endif  // FORGE_EXTEND_HPP_
