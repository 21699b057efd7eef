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

#include "forge/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "forge/errors.hpp"

namespace forge {

using lattice::checked_add;
using lattice::checked_mul;

std::string to_string(const GroupElement& g) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < g.coords.size(); ++i) os << (i ? "," : "") << g.coords[i];
  os << ')';
  return os.str();
}

namespace {

// Presentation Z^n / rowspan(relations) brought into invariant-factor form.
NormalizedGroup present(int n, const IntMat& relations) {
  NormalizedGroup out;
  IntMat v = lattice::identity(n);
  std::vector<Int> diag;
  if (!relations.empty()) {
    lattice::SmithForm sf = lattice::smith(relations, n);
    v = sf.v;
    diag = sf.diag;
  }
  diag.resize(n, 0);
  std::vector<int> free_idx, tors_idx;
  std::vector<Int> tors;
  for (int i = 0; i < n; ++i) {
    if (diag[i] == 0) {
      free_idx.push_back(i);
    } else if (diag[i] > 1) {
      tors_idx.push_back(i);
      tors.push_back(diag[i]);
    }
  }
  std::vector<int> order = free_idx;
  order.insert(order.end(), tors_idx.begin(), tors_idx.end());
  out.group = FgAbelianGroup(static_cast<int>(free_idx.size()), tors);
  const int m = static_cast<int>(order.size());
  out.old_to_new.assign(n, IntVec(m, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) out.old_to_new[i][j] = v[i][order[j]];
  }
  IntMat v_inv = lattice::inverse_unimodular(v);
  for (int j = 0; j < m; ++j) out.new_in_old.push_back(v_inv[order[j]]);
  return out;
}

}  // namespace

FgAbelianGroup::FgAbelianGroup(int free_rank, std::vector<Int> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  if (free_rank_ < 0) throw InputError("free rank must be nonnegative");
  for (size_t j = 0; j < torsion_.size(); ++j) {
    if (torsion_[j] < 2) throw InputError("torsion invariants must be >= 2");
    if (j > 0 && torsion_[j] % torsion_[j - 1] != 0) {
      throw InputError("torsion invariants must form a divisibility chain");
    }
  }
}

NormalizedGroup FgAbelianGroup::normalize(int free_rank, const std::vector<Int>& orders) {
  if (free_rank < 0) throw InputError("free rank must be nonnegative");
  const int n = free_rank + static_cast<int>(orders.size());
  IntMat rel;
  for (size_t j = 0; j < orders.size(); ++j) {
    if (orders[j] < 1) throw InputError("cyclic orders must be positive");
    IntVec row(n, 0);
    row[free_rank + j] = orders[j];
    rel.push_back(row);
  }
  return present(n, rel);
}

std::optional<Int> FgAbelianGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Int o = 1;
  for (Int d : torsion_) o = checked_mul(o, d);
  return o;
}

GroupElement FgAbelianGroup::element(IntVec coords) const {
  if (static_cast<int>(coords.size()) != dim()) throw InputError("element dimension does not match group");
  for (size_t j = 0; j < torsion_.size(); ++j) {
    coords[free_rank_ + j] = lattice::mod(coords[free_rank_ + j], torsion_[j]);
  }
  return GroupElement{std::move(coords)};
}

GroupElement FgAbelianGroup::zero() const { return GroupElement{IntVec(dim(), 0)}; }

GroupElement FgAbelianGroup::generator(int i) const {
  IntVec c(dim(), 0);
  c.at(i) = 1;
  return element(std::move(c));
}

void FgAbelianGroup::check_element(const GroupElement& a) const {
  if (static_cast<int>(a.coords.size()) != dim()) throw InputError("element dimension does not match group");
}

GroupElement FgAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  check_element(a);
  check_element(b);
  IntVec c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = checked_add(a.coords[i], b.coords[i]);
  return element(std::move(c));
}

GroupElement FgAbelianGroup::negate(const GroupElement& a) const {
  check_element(a);
  IntVec c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = -a.coords[i];
  return element(std::move(c));
}

GroupElement FgAbelianGroup::sub(const GroupElement& a, const GroupElement& b) const { return add(a, negate(b)); }

GroupElement FgAbelianGroup::scale(const GroupElement& a, Int k) const {
  check_element(a);
  IntVec c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = checked_mul(a.coords[i], k);
  return element(std::move(c));
}

bool FgAbelianGroup::is_zero(const GroupElement& a) const {
  return std::all_of(a.coords.begin(), a.coords.end(), [](Int x) { return x == 0; });
}

std::optional<Int> FgAbelianGroup::element_order(const GroupElement& a) const {
  check_element(a);
  for (int i = 0; i < free_rank_; ++i) {
    if (a.coords[i] != 0) return std::nullopt;
  }
  Int o = 1;
  for (size_t j = 0; j < torsion_.size(); ++j) {
    Int c = lattice::mod(a.coords[free_rank_ + j], torsion_[j]);
    o = std::lcm(o, torsion_[j] / std::gcd(c, torsion_[j]));
  }
  return o;
}

IntMat FgAbelianGroup::relation_rows() const {
  IntMat rows;
  for (size_t j = 0; j < torsion_.size(); ++j) {
    IntVec r(dim(), 0);
    r[free_rank_ + j] = torsion_[j];
    rows.push_back(r);
  }
  return rows;
}

std::vector<GroupElement> FgAbelianGroup::elements() const {
  if (!is_finite()) throw PreconditionError("cannot list elements of an infinite group");
  std::vector<GroupElement> out;
  IntVec c(dim(), 0);
  while (true) {
    out.push_back(GroupElement{c});
    int i = dim() - 1;
    while (i >= 0) {
      if (++c[i] < torsion_[i]) break;
      c[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::string FgAbelianGroup::describe() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z";
    if (free_rank_ > 1) os << "^" << free_rank_;
    first = false;
  }
  for (Int d : torsion_) {
    os << (first ? "" : " x ") << "Z/" << d;
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

// ---------------------------------------------------------------------------

Subgroup Subgroup::from_lattice(const FgAbelianGroup& parent, const IntMat& rows) {
  IntMat all = rows;
  for (const auto& r : all) {
    if (static_cast<int>(r.size()) != parent.dim()) throw InputError("generator dimension does not match group");
  }
  IntMat rel = parent.relation_rows();
  all.insert(all.end(), rel.begin(), rel.end());
  return Subgroup(parent, lattice::hermite_basis(all, parent.dim()));
}

Subgroup Subgroup::generated(const FgAbelianGroup& parent, const std::vector<GroupElement>& gens) {
  IntMat rows;
  for (const auto& g : gens) {
    parent.check_element(g);
    rows.push_back(g.coords);
  }
  return from_lattice(parent, rows);
}

Subgroup Subgroup::whole(const FgAbelianGroup& parent) {
  return from_lattice(parent, lattice::identity(parent.dim()));
}

Subgroup Subgroup::trivial(const FgAbelianGroup& parent) { return from_lattice(parent, {}); }

bool Subgroup::contains(const GroupElement& g) const {
  parent_.check_element(g);
  return lattice::in_lattice(basis_, g.coords);
}

bool Subgroup::contains(const Subgroup& h) const {
  for (const auto& row : h.basis_) {
    if (!lattice::in_lattice(basis_, row)) return false;
  }
  return true;
}

std::optional<Int> Subgroup::index() const {
  if (static_cast<int>(basis_.size()) < parent_.dim()) return std::nullopt;
  Int idx = 1;
  for (int i = 0; i < parent_.dim(); ++i) idx = checked_mul(idx, basis_[i][i]);
  return idx;
}

std::vector<GroupElement> Subgroup::generators() const {
  std::vector<GroupElement> out;
  for (const auto& row : basis_) {
    GroupElement e = parent_.element(row);
    if (!parent_.is_zero(e)) out.push_back(std::move(e));
  }
  return out;
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  if (!(parent_ == other.parent_)) throw InputError("subgroups of different groups");
  return Subgroup(parent_, lattice::intersect(basis_, other.basis_, parent_.dim()));
}

Subgroup Subgroup::join(const Subgroup& other) const {
  if (!(parent_ == other.parent_)) throw InputError("subgroups of different groups");
  IntMat rows = basis_;
  rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
  return from_lattice(parent_, rows);
}

Subgroup::Presentation Subgroup::as_group() const {
  const int t = static_cast<int>(basis_.size());
  IntMat rel;
  for (const auto& r : parent_.relation_rows()) rel.push_back(*lattice::solve_hermite(basis_, r));
  NormalizedGroup ng = present(t, rel);
  Presentation p;
  p.group = ng.group;
  for (const auto& row : ng.new_in_old) {
    p.generator_images.push_back(parent_.element(lattice::row_times(row, basis_, parent_.dim())));
  }
  return p;
}

bool basis_less(const Subgroup& a, const Subgroup& b) {
  IntVec fa, fb;
  for (const auto& r : a.basis()) fa.insert(fa.end(), r.begin(), r.end());
  for (const auto& r : b.basis()) fb.insert(fb.end(), r.begin(), r.end());
  return fa < fb;
}

// ---------------------------------------------------------------------------

QuotientGroup::QuotientGroup(const Subgroup& kernel) : kernel_(kernel) {
  const int n = kernel.parent().dim();
  const IntMat& b = kernel.basis();
  const int t = static_cast<int>(b.size());
  if (t > 0) {
    lattice::SmithForm sf = lattice::smith(b, n);
    v_ = sf.v;
    diag_ = sf.diag;
  } else {
    v_ = lattice::identity(n);
  }
  diag_.resize(n, 0);
  v_inv_ = lattice::inverse_unimodular(v_);
  std::vector<Int> tors;
  for (int i = 0; i < t; ++i) {
    if (diag_[i] > 1) tors.push_back(diag_[i]);
  }
  group_ = FgAbelianGroup(n - t, tors);
}

GroupElement QuotientGroup::project(const GroupElement& g) const {
  parent().check_element(g);
  const int n = parent().dim();
  IntVec y = lattice::row_times(g.coords, v_, n);
  IntVec out;
  for (int i = 0; i < n; ++i) {
    if (diag_[i] == 0) out.push_back(y[i]);
  }
  for (int i = 0; i < n; ++i) {
    if (diag_[i] > 1) out.push_back(lattice::mod(y[i], diag_[i]));
  }
  return group_.element(std::move(out));
}

GroupElement QuotientGroup::section(const GroupElement& q) const {
  group_.check_element(q);
  const int n = parent().dim();
  IntVec y(n, 0);
  size_t k = 0;
  for (int i = 0; i < n; ++i) {
    if (diag_[i] == 0) y[i] = q.coords[k++];
  }
  for (int i = 0; i < n; ++i) {
    if (diag_[i] > 1) y[i] = q.coords[k++];
  }
  return parent().element(lattice::row_times(y, v_inv_, n));
}

QuotientGroup quotient(const FgAbelianGroup& g, const Subgroup& h) {
  if (!(h.parent() == g)) throw InputError("subgroup does not belong to the group");
  return QuotientGroup(h);
}

// ---------------------------------------------------------------------------

namespace {

void diagonals(int i, int n, Int remaining, const std::vector<Int>& divides, std::vector<Int>& cur,
               std::vector<std::vector<Int>>& out) {
  if (i == n) {
    if (remaining == 1) out.push_back(cur);
    return;
  }
  for (Int d = 1; d <= remaining; ++d) {
    if (remaining % d != 0) continue;
    if (divides[i] != 0 && divides[i] % d != 0) continue;
    cur.push_back(d);
    diagonals(i + 1, n, remaining / d, divides, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Subgroup> subgroups_of_index(const FgAbelianGroup& g, Int index, const Subgroup* required) {
  const int n = g.dim();
  std::vector<Subgroup> out;
  if (index < 1) return out;
  if (n == 0) {
    if (index == 1) out.push_back(Subgroup::whole(g));
    return out;
  }
  // Pivot i must divide the least c with c * e_i in the required lattice.
  std::vector<Int> divides(n, 0);
  IntMat req = required ? required->basis() : g.relation_rows();
  if (!req.empty()) {
    for (int i = 0; i < n; ++i) {
      IntMat axis(1, IntVec(n, 0));
      axis[0][i] = 1;
      IntMat cap = lattice::intersect(req, axis, n);
      if (!cap.empty()) divides[i] = cap[0][i];
    }
  }
  std::vector<std::vector<Int>> diags;
  std::vector<Int> cur;
  diagonals(0, n, index, divides, cur, diags);
  IntMat rel = g.relation_rows();
  for (const auto& d : diags) {
    // Free positions: (j, i) with j < i, entry in [0, d[i]).
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        if (d[i] > 1) slots.emplace_back(j, i);
      }
    }
    IntMat h(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) h[i][i] = d[i];
    std::function<void(size_t)> fill = [&](size_t s) {
      if (s == slots.size()) {
        for (const auto& r : rel) {
          if (!lattice::in_lattice(h, r)) return;
        }
        if (required) {
          for (const auto& r : required->basis()) {
            if (!lattice::in_lattice(h, r)) return;
          }
        }
        out.push_back(Subgroup::from_lattice(g, h));
        return;
      }
      auto [j, i] = slots[s];
      for (Int v = 0; v < d[i]; ++v) {
        h[j][i] = v;
        fill(s + 1);
      }
      h[j][i] = 0;
    };
    fill(0);
  }
  std::sort(out.begin(), out.end(), basis_less);
  return out;
}

std::vector<Subgroup> enumerate_finite_index_subgroups(const FgAbelianGroup& g, Int max_index) {
  if (max_index < 1) throw InputError("max_index must be positive");
  std::vector<Subgroup> out;
  for (Int k = 1; k <= max_index; ++k) {
    auto part = subgroups_of_index(g, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Perm element_permutation(const FgAbelianGroup& g, const std::vector<Perm>& images, const GroupElement& e,
                         int npoints) {
  g.check_element(e);
  Perm p = perm::identity(npoints);
  for (int i = 0; i < g.dim(); ++i) {
    if (e.coords[i] != 0) p = perm::compose(perm::power(images[i], e.coords[i]), p);
  }
  return p;
}

Subgroup kernel_of_permutation_images(const FgAbelianGroup& g, const std::vector<Perm>& images) {
  const int n = g.dim();
  if (static_cast<int>(images.size()) != n) throw InputError("need one image per group generator");
  const size_t npoints = images.empty() ? 0 : images[0].size();
  for (const auto& p : images) {
    if (p.size() != npoints || !perm::is_permutation(p)) throw InputError("images must be permutations of one set");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!perm::commute(images[i], images[j])) {
        throw PreconditionError("images of generators " + std::to_string(i) + " and " + std::to_string(j) +
                                " do not commute");
      }
    }
  }
  for (size_t j = 0; j < g.torsion().size(); ++j) {
    const Perm& p = images[g.free_rank() + j];
    if (g.torsion()[j] % perm::order(p) != 0) {
      throw PreconditionError("image of torsion generator " + std::to_string(g.free_rank() + j) + " has order " +
                              std::to_string(perm::order(p)) + " not dividing " + std::to_string(g.torsion()[j]));
    }
  }
  // Breadth-first walk of the image group; each repeated element yields a
  // Schreier generator of the kernel lattice.
  std::map<Perm, IntVec> seen;
  std::queue<Perm> todo;
  Perm id = perm::identity(static_cast<int>(npoints));
  seen.emplace(id, IntVec(n, 0));
  todo.push(id);
  IntMat kernel_rows;
  while (!todo.empty()) {
    Perm p = todo.front();
    todo.pop();
    const IntVec vp = seen.at(p);
    for (int i = 0; i < n; ++i) {
      Perm q = perm::compose(images[i], p);
      IntVec v = vp;
      v[i] += 1;
      auto it = seen.find(q);
      if (it == seen.end()) {
        seen.emplace(q, v);
        todo.push(q);
      } else {
        IntVec diff(n);
        for (int k = 0; k < n; ++k) diff[k] = v[k] - it->second[k];
        kernel_rows.push_back(diff);
      }
    }
  }
  return Subgroup::from_lattice(g, kernel_rows);
}

}  // namespace forge
