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

// Finitely generated abelian groups in invariant-factor form
//   Z^r x Z/d_1 x ... x Z/d_k,   d_1 | d_2 | ... | d_k,  d_j >= 2,
// with elements stored as integer vectors of length r + k. Subgroups are
// identified with their full preimage lattice in Z^{r+k}, which always
// contains the relation vectors d_j * e_{r+j}; the Hermite basis of that
// lattice is the canonical form.

#ifndef FORGE_ABELIAN_HPP_
#define FORGE_ABELIAN_HPP_

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "forge/lattice.hpp"
#include "forge/permutation.hpp"

namespace forge {

struct GroupElement {
  IntVec coords;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

std::string to_string(const GroupElement& g);

struct NormalizedGroup;

class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  // Requires invariant-factor form; throws InputError otherwise.
  FgAbelianGroup(int free_rank, std::vector<Int> torsion);

  // Accepts arbitrary cyclic orders (1 allowed) and normalizes through Smith
  // normal form, e.g. Z/2 x Z/3 becomes Z/6.
  static NormalizedGroup normalize(int free_rank, const std::vector<Int>& orders);

  int free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  int dim() const { return free_rank_ + static_cast<int>(torsion_.size()); }
  bool is_finite() const { return free_rank_ == 0; }
  std::optional<Int> order() const;

  GroupElement element(IntVec coords) const;
  GroupElement zero() const;
  GroupElement generator(int i) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  GroupElement scale(const GroupElement& a, Int k) const;
  bool is_zero(const GroupElement& a) const;
  std::optional<Int> element_order(const GroupElement& a) const;
  void check_element(const GroupElement& a) const;

  // Rows d_j * e_{r+j}.
  IntMat relation_rows() const;
  // All elements of a finite group, coordinates in lexicographic order.
  std::vector<GroupElement> elements() const;

  std::string describe() const;

  bool operator==(const FgAbelianGroup&) const = default;

 private:
  int free_rank_ = 0;
  std::vector<Int> torsion_;
};

struct NormalizedGroup {
  FgAbelianGroup group;
  IntMat old_to_new;  // old coordinate row x maps to x * old_to_new
  IntMat new_in_old;  // row i: new generator i in old coordinates
};

class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup generated(const FgAbelianGroup& parent, const std::vector<GroupElement>& gens);
  // Rows are arbitrary integer vectors in Z^{r+k}.
  static Subgroup from_lattice(const FgAbelianGroup& parent, const IntMat& rows);
  static Subgroup whole(const FgAbelianGroup& parent);
  static Subgroup trivial(const FgAbelianGroup& parent);

  const FgAbelianGroup& parent() const { return parent_; }
  const IntMat& basis() const { return basis_; }
  bool contains(const GroupElement& g) const;
  bool contains(const Subgroup& h) const;
  // nullopt means infinite index.
  std::optional<Int> index() const;
  // Nonzero reduced basis rows as elements; they generate the subgroup.
  std::vector<GroupElement> generators() const;
  Subgroup intersect(const Subgroup& other) const;
  Subgroup join(const Subgroup& other) const;

  // Abstract invariant-factor presentation with the images of its
  // canonical generators in the parent.
  struct Presentation {
    FgAbelianGroup group;
    std::vector<GroupElement> generator_images;
  };
  Presentation as_group() const;

  bool operator==(const Subgroup& o) const { return parent_ == o.parent_ && basis_ == o.basis_; }

 private:
  Subgroup(FgAbelianGroup parent, IntMat basis) : parent_(std::move(parent)), basis_(std::move(basis)) {}
  FgAbelianGroup parent_;
  IntMat basis_;
};

// Lexicographic comparison of canonical bases (row-major).
bool basis_less(const Subgroup& a, const Subgroup& b);

class QuotientGroup {
 public:
  QuotientGroup() = default;
  explicit QuotientGroup(const Subgroup& kernel);

  const FgAbelianGroup& group() const { return group_; }
  const FgAbelianGroup& parent() const { return kernel_.parent(); }
  const Subgroup& kernel() const { return kernel_; }

  GroupElement project(const GroupElement& g) const;
  // Canonical parent representative; project(section(q)) == q.
  GroupElement section(const GroupElement& q) const;

 private:
  Subgroup kernel_;
  FgAbelianGroup group_;
  std::vector<Int> diag_;  // Smith diagonal, padded with zeros to dim
  IntMat v_;
  IntMat v_inv_;
};

QuotientGroup quotient(const FgAbelianGroup& g, const Subgroup& h);

// Every subgroup of index <= max_index exactly once, ordered by index and
// then by canonical basis.
std::vector<Subgroup> enumerate_finite_index_subgroups(const FgAbelianGroup& g, Int max_index);

// Subgroups of exactly the given index, in canonical-basis order. When
// `required` is given, only subgroups containing it are produced.
std::vector<Subgroup> subgroups_of_index(const FgAbelianGroup& g, Int index, const Subgroup* required = nullptr);

// Kernel of the homomorphism sending generator i to images[i]. Throws
// PreconditionError if the images do not commute or violate a torsion
// relator.
Subgroup kernel_of_permutation_images(const FgAbelianGroup& g, const std::vector<Perm>& images);

// Permutation induced by an element, given generator images.
Perm element_permutation(const FgAbelianGroup& g, const std::vector<Perm>& images, const GroupElement& e,
                         int npoints);

}  // namespace forge

#endif  // FORGE_ABELIAN_HPP_
