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

// Seeded random instances: signatures, structures, invariant extensions and
// group actions. Everything is driven by one std::mt19937_64.

#ifndef FORGE_INSTANCES_HPP_
#define FORGE_INSTANCES_HPP_

#include <random>
#include <string>
#include <vector>

#include "forge/abelian.hpp"
#include "forge/ustructure.hpp"

namespace forge {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi);  // inclusive
bool coin(Rng& rng, double p);

// Up to max_relations symbols of arity <= max_arity with random symmetry
// groups, and up to max_labels labels.
USignature random_signature(Rng& rng, int max_relations, int max_arity, int max_labels);

Perm random_perm(Rng& rng, int n);

// Images of the generators of g on m points: a union of blocks Z/a x Z/b
// on which each generator acts by a shift compatible with its order.
std::vector<Perm> random_group_images(Rng& rng, const FgAbelianGroup& g, int m);

struct InvariantSpace {
  UStructure space;
  std::vector<Perm> images;  // over space's indices
};

// B = A plus points prefix0, prefix1, ... with random relations and
// partitions such that B induces A on A's points and every image is an
// automorphism. a_images act on A, new_images on the m new points.
InvariantSpace random_invariant_extension(Rng& rng, const UStructure& a, const std::vector<Perm>& a_images,
                                          const std::vector<Perm>& new_images, int m, const std::string& prefix,
                                          double density);

// Same without any symmetry requirement.
UStructure random_extension(Rng& rng, const UStructure& a, int m, const std::string& prefix, double density);

// Random valid structure on points "0".."n-1".
UStructure random_structure(Rng& rng, const USignature& sig, int n, double density);

// Graph on "0".."n-1" with the given edges.
UStructure make_graph(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace forge

#endif  // FORGE_INSTANCES_HPP_
