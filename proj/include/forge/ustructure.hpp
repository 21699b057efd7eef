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

// Finite structures with symmetric relations and a nested chain of
// equivalence relations E_s, one per distance label s.
//
// Points are addressed by index into the naturally sorted point list.
// Every partition is stored as a canonical class-id vector: class ids are
// assigned in order of first member, so equal partitions compare equal.

#ifndef FORGE_USTRUCTURE_HPP_
#define FORGE_USTRUCTURE_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/permutation.hpp"
#include "forge/rational.hpp"

namespace forge {

using PointId = std::string;
using Tuple = std::vector<int>;
// Source index to target index; -1 marks an unmapped point.
using PointMap = std::vector<int>;

// Integers (optionally signed) sort numerically before all other ids,
// which sort lexicographically.
bool point_less(const PointId& a, const PointId& b);

struct RelationSymbol {
  std::string name;
  int arity = 0;
  // Generators of L_i as 0-based position permutations; the image of a
  // tuple t under p is (t[p[0]], ..., t[p[k-1]]).
  std::vector<Perm> symmetry;

  bool operator==(const RelationSymbol&) const = default;
};

struct USignature {
  std::vector<Rational> labels;  // strictly increasing
  std::vector<RelationSymbol> relations;

  int relation_index(const std::string& name) const;
  int label_index(const Rational& s) const;
  // Throws InputError when the signature is malformed.
  void check() const;
  bool operator==(const USignature&) const = default;
};

// Single symmetric irreflexive binary relation "R" and no labels.
USignature graph_signature();

struct Violation {
  int axiom = 0;  // 1..5, or 0 for malformed input
  std::string message;
  std::vector<PointId> witness;
};

class UStructure {
 public:
  UStructure() = default;
  // Points are sorted with point_less; duplicates throw InputError. All
  // partitions start discrete.
  UStructure(USignature sig, std::vector<PointId> points);

  const USignature& signature() const { return sig_; }
  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<PointId>& points() const { return points_; }
  const PointId& name(int i) const { return points_.at(i); }
  int index_of(const PointId& p) const;
  int require(const PointId& p) const;  // index_of or InputError

  void add_tuple(int rel, const Tuple& t);
  void remove_tuple(int rel, const Tuple& t);
  bool has_tuple(int rel, const Tuple& t) const;
  const std::set<Tuple>& tuples(int rel) const { return tuples_.at(rel); }

  // Any class labelling is accepted and canonicalized.
  void set_partition(int label, const std::vector<int>& class_of);
  const std::vector<int>& classes(int label) const { return classes_.at(label); }
  bool equiv(int label, int x, int y) const { return classes_[label][x] == classes_[label][y]; }
  std::vector<std::vector<int>> class_lists(int label) const;

  // Problems detected while loading (overlapping classes and the like);
  // validate() reports them alongside axiom checks.
  void add_defect(Violation v) { defects_.push_back(std::move(v)); }
  const std::vector<Violation>& defects() const { return defects_; }

  // Induced substructure on the given indices.
  UStructure induced(const std::vector<int>& subset) const;
  // Same structure with every point renamed; the mapping must be injective.
  UStructure renamed(const std::vector<PointId>& new_names) const;

  bool operator==(const UStructure& o) const {
    return sig_ == o.sig_ && points_ == o.points_ && tuples_ == o.tuples_ && classes_ == o.classes_;
  }

 private:
  USignature sig_;
  std::vector<PointId> points_;
  std::vector<std::set<Tuple>> tuples_;
  std::vector<std::vector<int>> classes_;
  std::vector<Violation> defects_;
};

// Canonical class ids (first-occurrence order).
std::vector<int> canonical_classes(const std::vector<int>& class_of);

// Images of t under the group generated by the symbol's symmetry.
std::vector<Tuple> symmetry_orbit(const RelationSymbol& rel, const Tuple& t);

std::vector<Violation> validate(const UStructure& x);
UStructure symmetrize(const UStructure& x);

// Preserves and reflects every relation and partition among mapped points.
bool is_partial_iso(const UStructure& x, const UStructure& y, const PointMap& p);
bool is_embedding(const UStructure& x, const UStructure& y, const PointMap& p);
bool is_automorphism(const UStructure& x, const Perm& p);

// One-point extensions of p sending x to each admissible target.
std::vector<PointMap> extend_partial_iso(const UStructure& x, const UStructure& y, const PointMap& p, int pt);

std::optional<PointMap> find_isomorphism(const UStructure& x, const UStructure& y);
std::optional<PointMap> find_isomorphism_extending(const UStructure& x, const UStructure& y, const PointMap& seed);

// Strong generating set of the pointwise stabilizer of `fixed`.
std::vector<Perm> automorphisms_fixing(const UStructure& x, const std::vector<int>& fixed);

struct ExtensionCounterexample {
  std::vector<int> adjacent;      // A
  std::vector<int> non_adjacent;  // B
};

// Graph signature only. Checks every disjoint A, B inside `window` with
// |A| + |B| <= k for a witness among all points.
std::optional<ExtensionCounterexample> check_extension_property(const UStructure& g, int k,
                                                                const std::vector<int>& window);

// One-point extension types of y by a fresh point named z, as structures
// on y's points plus z. Only types that are valid structures are listed.
std::vector<UStructure> one_point_types(const UStructure& y, const PointId& z);

// Realizes every one-point type over every substructure of at most t
// points by repeated free amalgamation. Throws BudgetExhausted past cap.
UStructure saturate(const UStructure& x, int t, int cap);

// d(x, y) is the largest label separating x and y; diagonal is 0.
std::vector<std::vector<Rational>> as_ultrametric(const UStructure& x);
// Partitions rebuilt from d through x E_s y iff d(x, y) < s.
UStructure from_ultrametric(const UStructure& x, const std::vector<std::vector<Rational>>& d);

}  // namespace forge

#endif  // FORGE_USTRUCTURE_HPP_
