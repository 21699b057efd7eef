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

#include "forge/instances.hpp"

#include <algorithm>
#include <numeric>

#include "forge/actions.hpp"
#include "forge/errors.hpp"

namespace forge {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

USignature random_signature(Rng& rng, int max_relations, int max_arity, int max_labels) {
  USignature sig;
  static const std::vector<Rational> pool = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2),
                                             Rational(3), Rational(5)};
  const int nl = uniform_int(rng, 0, max_labels);
  std::vector<Rational> labels = pool;
  std::shuffle(labels.begin(), labels.end(), rng);
  labels.resize(nl);
  std::sort(labels.begin(), labels.end());
  sig.labels = labels;
  const int nr = uniform_int(rng, 0, max_relations);
  for (int r = 0; r < nr; ++r) {
    RelationSymbol rel;
    rel.name = "P" + std::to_string(r);
    rel.arity = uniform_int(rng, 1, max_arity);
    if (rel.arity == 2 && coin(rng, 0.7)) rel.symmetry = {{1, 0}};
    if (rel.arity == 3) {
      switch (uniform_int(rng, 0, 2)) {
        case 0: rel.symmetry = {{1, 2, 0}}; break;
        case 1: rel.symmetry = {{1, 0, 2}, {0, 2, 1}}; break;
        default: break;
      }
    }
    sig.relations.push_back(rel);
  }
  return sig;
}

Perm random_perm(Rng& rng, int n) {
  Perm p = perm::identity(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::vector<Perm> random_group_images(Rng& rng, const FgAbelianGroup& g, int m) {
  std::vector<Perm> imgs(g.dim(), Perm(m));
  int start = 0;
  while (start < m) {
    const int a = uniform_int(rng, 1, m - start);
    const int b = uniform_int(rng, 1, (m - start) / a);
    for (int i = 0; i < g.dim(); ++i) {
      // Shift (u, v) of Z/a x Z/b; torsion d requires d*u = 0 mod a.
      auto pick = [&](int mod) {
        std::vector<int> ok;
        for (int u = 0; u < mod; ++u) {
          if (i < g.free_rank() || (g.torsion()[i - g.free_rank()] * u) % mod == 0) ok.push_back(u);
        }
        return ok[uniform_int(rng, 0, static_cast<int>(ok.size()) - 1)];
      };
      const int u = pick(a), v = pick(b);
      for (int x = 0; x < a; ++x) {
        for (int y = 0; y < b; ++y) {
          imgs[i][start + x * b + y] = start + ((x + u) % a) * b + (y + v) % b;
        }
      }
    }
    start += a * b;
  }
  return imgs;
}

namespace {

// All tuples of distinct entries from 0..n-1 of the given length.
void each_tuple(int n, int k, const std::function<void(const Tuple&)>& f) {
  Tuple t;
  std::vector<char> used(n, 0);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(t.size()) == k) {
      f(t);
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      used[x] = 1;
      t.push_back(x);
      rec();
      t.pop_back();
      used[x] = 0;
    }
  };
  rec();
}

}  // namespace

InvariantSpace random_invariant_extension(Rng& rng, const UStructure& a, const std::vector<Perm>& a_images,
                                          const std::vector<Perm>& new_images, int m, const std::string& prefix,
                                          double density) {
  if (a_images.size() != new_images.size()) throw InputError("generator count mismatch");
  std::vector<PointId> names = a.points();
  for (int k = 0; k < m; ++k) names.push_back(prefix + std::to_string(k));
  UStructure b(a.signature(), names);
  const int n = b.size();
  std::vector<int> ai(a.size()), ni(m);
  std::vector<char> is_new(n, 0);
  for (int i = 0; i < a.size(); ++i) ai[i] = b.index_of(a.name(i));
  for (int k = 0; k < m; ++k) {
    ni[k] = b.index_of(prefix + std::to_string(k));
    is_new[ni[k]] = 1;
  }
  std::vector<Perm> imgs(a_images.size(), Perm(n));
  for (size_t g = 0; g < a_images.size(); ++g) {
    for (int i = 0; i < a.size(); ++i) imgs[g][ai[i]] = ai[a_images[g][i]];
    for (int k = 0; k < m; ++k) imgs[g][ni[k]] = ni[new_images[g][k]];
  }
  const auto& sig = a.signature();
  for (size_t r = 0; r < sig.relations.size(); ++r) {
    const int ri = static_cast<int>(r);
    for (const auto& t : a.tuples(ri)) {
      Tuple u;
      for (int x : t) u.push_back(ai[x]);
      b.add_tuple(ri, u);
    }
    std::set<Tuple> seeds;
    each_tuple(n, sig.relations[r].arity, [&](const Tuple& t) {
      bool touches_new = std::any_of(t.begin(), t.end(), [&](int x) { return is_new[x]; });
      if (touches_new && coin(rng, density)) {
        for (const auto& u : symmetry_orbit(sig.relations[r], t)) seeds.insert(u);
      }
    });
    // Symmetry images of group images stay inside the closure because both
    // actions commute; close under both for safety.
    std::set<Tuple> closed = tuple_orbit_closure(seeds, imgs);
    std::set<Tuple> sym;
    for (const auto& t : closed) {
      for (const auto& u : symmetry_orbit(sig.relations[r], t)) sym.insert(u);
    }
    for (const auto& t : sym) b.add_tuple(ri, t);
  }
  std::vector<int> prev(n);
  std::iota(prev.begin(), prev.end(), 0);
  for (size_t s = 0; s < sig.labels.size(); ++s) {
    std::vector<std::pair<int, int>> base_pairs;
    for (const auto& cls : a.class_lists(static_cast<int>(s))) {
      for (size_t k = 1; k < cls.size(); ++k) base_pairs.emplace_back(ai[cls[0]], ai[cls[k]]);
    }
    std::vector<int> cur = invariant_equivalence(n, imgs, base_pairs, &prev);
    auto agrees = [&](const std::vector<int>& c) {
      for (int i = 0; i < a.size(); ++i) {
        for (int j = i + 1; j < a.size(); ++j) {
          if ((c[ai[i]] == c[ai[j]]) != a.equiv(static_cast<int>(s), i, j)) return false;
        }
      }
      return true;
    };
    if (s > 0) {
      const int tries = uniform_int(rng, 0, n);
      for (int k = 0; k < tries; ++k) {
        int x = uniform_int(rng, 0, n - 1), y = uniform_int(rng, 0, n - 1);
        if (!is_new[x] && !is_new[y]) continue;
        std::vector<int> trial = invariant_equivalence(n, imgs, {{x, y}}, &cur);
        if (agrees(trial)) cur = trial;
      }
    }
    b.set_partition(static_cast<int>(s), cur);
    prev = cur;
  }
  return {b, imgs};
}

UStructure random_extension(Rng& rng, const UStructure& a, int m, const std::string& prefix, double density) {
  return random_invariant_extension(rng, a, {}, {}, m, prefix, density).space;
}

UStructure random_structure(Rng& rng, const USignature& sig, int n, double density) {
  UStructure empty(sig, {});
  UStructure out = random_extension(rng, empty, n, "p", density);
  std::vector<PointId> names;
  for (int i = 0; i < out.size(); ++i) names.push_back(std::to_string(std::stoi(out.name(i).substr(1))));
  return out.renamed(names);
}

UStructure make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<PointId> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  UStructure g(graph_signature(), names);
  for (auto [x, y] : edges) {
    g.add_tuple(0, {x, y});
    g.add_tuple(0, {y, x});
  }
  return g;
}

}  // namespace forge
