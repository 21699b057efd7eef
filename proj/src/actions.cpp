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

#include "forge/actions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "forge/errors.hpp"

namespace forge {

Action::Action(FgAbelianGroup group, UStructure space, std::vector<Perm> images)
    : group_(std::move(group)), space_(std::move(space)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != group_.dim()) {
    throw InputError("action needs one image per group generator (" + std::to_string(group_.dim()) + ")");
  }
  for (const auto& p : images_) {
    if (static_cast<int>(p.size()) != space_.size() || !perm::is_permutation(p)) {
      throw InputError("generator image is not a permutation of the space");
    }
  }
}

Action Action::trivial(FgAbelianGroup group, UStructure space) {
  std::vector<Perm> imgs(group.dim(), perm::identity(space.size()));
  return Action(std::move(group), std::move(space), std::move(imgs));
}

Perm Action::element_image(const GroupElement& g) const {
  return element_permutation(group_, images_, g, space_.size());
}

std::vector<ActionIssue> validate_action(const Action& a) {
  std::vector<ActionIssue> out;
  const auto& imgs = a.images();
  const auto& g = a.group();
  for (size_t i = 0; i < imgs.size(); ++i) {
    for (size_t j = i + 1; j < imgs.size(); ++j) {
      if (!perm::commute(imgs[i], imgs[j])) {
        out.push_back({"commutator",
                       "images of generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute",
                       {}});
      }
    }
  }
  for (size_t j = 0; j < g.torsion().size(); ++j) {
    const int gi = g.free_rank() + static_cast<int>(j);
    auto ord = perm::order(imgs[gi]);
    if (g.torsion()[j] % ord != 0) {
      out.push_back({"torsion relator",
                     "image of generator " + std::to_string(gi) + " has order " + std::to_string(ord) +
                         " not dividing " + std::to_string(g.torsion()[j]),
                     {}});
    }
  }
  for (size_t i = 0; i < imgs.size(); ++i) {
    if (!is_automorphism(a.space(), imgs[i])) {
      out.push_back({"automorphism", "image of generator " + std::to_string(i) + " is not an automorphism", {}});
    }
  }
  return out;
}

int apply(const Action& a, const GroupElement& g, int x) {
  if (x < 0 || x >= a.space().size()) throw InputError("point out of range");
  return a.element_image(g)[x];
}

std::vector<std::vector<int>> orbits(const Action& a) {
  const int n = a.space().size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const auto& p : a.images()) {
    for (int x = 0; x < n; ++x) {
      int r1 = find(x), r2 = find(p[x]);
      if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int x = 0; x < n; ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  return out;
}

bool is_subrepresentation(const Action& pi, const Action& sigma) {
  if (!(pi.group() == sigma.group())) throw InputError("actions of different groups");
  const UStructure& x = pi.space();
  const UStructure& y = sigma.space();
  std::vector<int> idx;
  for (const auto& p : x.points()) {
    int i = y.index_of(p);
    if (i < 0) throw InputError("point '" + p + "' is missing from the larger space");
    idx.push_back(i);
  }
  if (!(y.induced(idx) == x)) throw InputError("space is not an induced substructure");
  for (size_t g = 0; g < pi.images().size(); ++g) {
    for (int i = 0; i < x.size(); ++i) {
      if (sigma.images()[g][idx[i]] != idx[pi.images()[g][i]]) return false;
    }
  }
  return true;
}

Action restrict_action(const Action& a, const std::vector<int>& subset) {
  UStructure sub = a.space().induced(subset);
  std::vector<int> to_new(a.space().size(), -1);
  for (int i : subset) to_new[i] = sub.index_of(a.space().name(i));
  std::vector<Perm> imgs;
  for (const auto& p : a.images()) {
    Perm q(sub.size());
    for (int i : subset) {
      if (to_new[p[i]] < 0) throw PreconditionError("subset is not invariant under the action");
      q[to_new[i]] = to_new[p[i]];
    }
    imgs.push_back(q);
  }
  return Action(a.group(), sub, imgs);
}

Action pullback(const Action& pi, const UStructure& x, const PointMap& iota) {
  if (!is_embedding(x, pi.space(), iota)) throw InputError("pullback map is not an embedding");
  PointMap inv(pi.space().size(), -1);
  for (int i = 0; i < x.size(); ++i) inv[iota[i]] = i;
  std::vector<Perm> imgs;
  for (const auto& p : pi.images()) {
    Perm q(x.size());
    for (int i = 0; i < x.size(); ++i) {
      int img = inv[p[iota[i]]];
      if (img < 0) throw PreconditionError("embedded image is not invariant under the action");
      q[i] = img;
    }
    imgs.push_back(q);
  }
  return Action(pi.group(), x, imgs);
}

bool in_basic_nbhd(const Action& theta, const Action& base, const std::vector<int>& anchor) {
  if (!(theta.group() == base.group()) || theta.space().points() != base.space().points()) {
    throw InputError("basic neighbourhood needs a shared group and space");
  }
  for (size_t g = 0; g < theta.images().size(); ++g) {
    for (int a : anchor) {
      if (theta.images()[g].at(a) != base.images()[g].at(a)) return false;
    }
  }
  return true;
}

Action conjugate_by(const Action& pi, const UStructure& target, const PointMap& g) {
  const int n = pi.space().size();
  if (target.size() != n || static_cast<int>(g.size()) != n || !perm::is_permutation(g)) {
    throw InputError("conjugating map must be a bijection");
  }
  std::vector<Perm> imgs;
  for (const auto& p : pi.images()) {
    Perm q(n);
    for (int x = 0; x < n; ++x) q[g[x]] = g[p[x]];
    imgs.push_back(q);
  }
  return Action(pi.group(), target, imgs);
}

namespace {

class ConjugacySearch {
 public:
  ConjugacySearch(const Action& pi, const Action& theta) : pi_(pi), th_(theta) {
    const int n = pi.space().size();
    map_.assign(n, -1);
    inv_.assign(n, -1);
    for (int x = 0; x < n; ++x) {
      sig_x_.push_back(point_signature(pi, x));
      sig_y_.push_back(point_signature(theta, x));
    }
  }

  std::optional<PointMap> run() {
    if (dfs()) return map_;
    return std::nullopt;
  }

 private:
  // Cycle length of the point under each generator.
  static std::vector<std::int64_t> point_signature(const Action& a, int x) {
    std::vector<std::int64_t> s;
    for (const auto& p : a.images()) {
      std::int64_t len = 1;
      for (int y = p[x]; y != x; y = p[y]) ++len;
      s.push_back(len);
    }
    return s;
  }

  bool dfs() {
    const int n = pi_.space().size();
    int x = -1;
    for (int i = 0; i < n; ++i) {
      if (map_[i] < 0) {
        x = i;
        break;
      }
    }
    if (x < 0) return true;
    for (int y = 0; y < n; ++y) {
      if (inv_[y] >= 0 || sig_x_[x] != sig_y_[y]) continue;
      std::vector<int> added;
      if (propagate(x, y, added) && is_partial_iso(pi_.space(), th_.space(), map_) && dfs()) return true;
      for (int a : added) {
        inv_[map_[a]] = -1;
        map_[a] = -1;
      }
    }
    return false;
  }

  // Equivariance forces gamma^pi x -> gamma^theta y along the whole orbit.
  bool propagate(int x, int y, std::vector<int>& added) {
    std::vector<std::pair<int, int>> stack{{x, y}};
    while (!stack.empty()) {
      auto [u, v] = stack.back();
      stack.pop_back();
      if (map_[u] >= 0) {
        if (map_[u] != v) return false;
        continue;
      }
      if (inv_[v] >= 0) return false;
      map_[u] = v;
      inv_[v] = u;
      added.push_back(u);
      for (size_t g = 0; g < pi_.images().size(); ++g) {
        stack.emplace_back(pi_.images()[g][u], th_.images()[g][v]);
      }
    }
    return true;
  }

  const Action& pi_;
  const Action& th_;
  PointMap map_, inv_;
  std::vector<std::vector<std::int64_t>> sig_x_, sig_y_;
};

}  // namespace

std::optional<PointMap> are_conjugate(const Action& pi, const Action& theta) {
  if (!(pi.group() == theta.group())) throw InputError("actions of different groups");
  if (pi.space().size() != theta.space().size()) return std::nullopt;
  if (!(pi.space().signature() == theta.space().signature())) return std::nullopt;
  for (size_t g = 0; g < pi.images().size(); ++g) {
    if (perm::cycle_type(pi.images()[g]) != perm::cycle_type(theta.images()[g])) return std::nullopt;
  }
  return ConjugacySearch(pi, theta).run();
}

std::vector<int> invariant_equivalence(int n, const std::vector<Perm>& gens,
                                       const std::vector<std::pair<int, int>>& pairs, const std::vector<int>* base) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  std::vector<std::pair<int, int>> queue = pairs;
  if (base) {
    std::map<int, int> first;
    for (int x = 0; x < n; ++x) {
      auto [it, fresh] = first.emplace((*base)[x], x);
      if (!fresh) queue.emplace_back(it->second, x);
    }
  }
  while (!queue.empty()) {
    auto [x, y] = queue.back();
    queue.pop_back();
    int rx = find(x), ry = find(y);
    if (rx == ry) continue;
    parent[rx] = ry;
    for (const auto& g : gens) queue.emplace_back(g[x], g[y]);
  }
  std::vector<int> cls(n);
  for (int x = 0; x < n; ++x) cls[x] = find(x);
  return canonical_classes(cls);
}

std::set<Tuple> tuple_orbit_closure(const std::set<Tuple>& seeds, const std::vector<Perm>& gens) {
  std::set<Tuple> out = seeds;
  std::vector<Tuple> stack(seeds.begin(), seeds.end());
  while (!stack.empty()) {
    Tuple t = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      Tuple u;
      for (int x : t) u.push_back(g[x]);
      if (out.insert(u).second) stack.push_back(u);
    }
  }
  return out;
}

}  // namespace forge
