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

// Graphs from symmetric subsets: regular representations of abelian
// groups and the staged shift-invariant graph on Z with its unrelated
// translates.

#ifndef FORGE_RANDGRAPH_HPP_
#define FORGE_RANDGRAPH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/abelian.hpp"
#include "forge/actions.hpp"
#include "forge/ustructure.hpp"

namespace forge {

// gamma in members iff -gamma in members; the identity excluded.
struct SymmetricSubset {
  FgAbelianGroup group;
  std::vector<GroupElement> members;  // sorted, unique
};

// Sorts, deduplicates and checks symmetry. Throws InputError.
SymmetricSubset make_symmetric_subset(const FgAbelianGroup& g, std::vector<GroupElement> members);

// Every symmetric subset of Z/n, in order of the bitmask over {1..n/2}.
std::vector<SymmetricSubset> all_symmetric_subsets(Int n);

// Name of a group element as a point: "3" for rank one, "1,-2" otherwise.
PointId element_name(const GroupElement& g);

// delta R sigma iff sigma - delta in S, on the window's elements.
UStructure regular_graph(const SymmetricSubset& s, const std::vector<GroupElement>& window);

// Left translation action of a finite group on its regular graph.
Action regular_action(const SymmetricSubset& s);

// S1 == S2 restricted to differences of window elements.
bool regular_reps_conjugate(const SymmetricSubset& s1, const SymmetricSubset& s2,
                            const std::vector<GroupElement>& window);

// Every bijection f with f . gamma^pi = gamma^theta . f for all generators
// that is also a graph isomorphism, by exhausting all n! bijections.
std::vector<PointMap> equivariant_isomorphisms_brute(const Action& pi, const Action& theta);

struct StageRecord {
  enum Kind { kInitial, kGap, kCopy };
  Kind kind = kInitial;
  std::int64_t lo = 0, hi = 0;  // inclusive; hi may exceed the length when truncated
  std::vector<bool> pattern;    // bits written at lo.. for initial and copy stages
};

struct StagedS {
  std::int64_t length = 0;
  std::vector<bool> bits;  // bits[d] for d in [0, length]; bits[0] is false
  std::vector<StageRecord> log;

  bool contains(std::int64_t d) const { return d >= 1 && d <= length && bits[d]; }
};

std::string stage_kind_name(StageRecord::Kind k);

// Stage 0 is a seeded random block of length max(1, M/4); odd stages clear
// [k+1, 3k]; even stages copy the next pattern of the schedule that runs
// through all nonempty 0/1 words by length, then value.
StagedS staged_s(std::int64_t length, std::uint64_t seed);

// The l-th word of the copy schedule.
std::vector<bool> schedule_pattern(std::int64_t l);

struct ShiftGraph {
  StagedS s;
  std::int64_t radius = 0;  // points -radius..radius
  UStructure graph;
  // n -> n+1 for n in [-radius, radius-1]; -1 at the top end.
  std::vector<int> shift;
  std::int64_t valid_lo = 0, valid_hi = 0;
  std::vector<int> index_by_value;        // offset by radius
  std::vector<std::int64_t> value_by_index;

  int vertex(std::int64_t n) const;        // index of integer n
  std::int64_t value(int index) const;     // integer of a point index
};

// n R m iff |n - m| in S, on [-radius, radius]. Requires radius <= length.
ShiftGraph shift_graph(const StagedS& s, std::int64_t radius);

// Least n > 0 with A and A + n disjoint, completely unrelated and A + n
// inside the window. Throws InputError naming the needed radius when the
// window is too short.
std::int64_t find_unrelated_translate(const ShiftGraph& g, const std::vector<std::int64_t>& a);

struct SpliceResult {
  Action action;
  std::int64_t k = 0;
};

// Actions whose spaces are induced subgraphs of g.graph (points named by
// integers). Returns sigma_n united with sigma_m translated by k.
SpliceResult transitivity_splice(const Action& sigma_n, const Action& sigma_m, const ShiftGraph& g);

}  // namespace forge

#endif  // FORGE_RANDGRAPH_HPP_
