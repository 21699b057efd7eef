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

#include "forge/ustructure.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

#include "forge/errors.hpp"
#include "forge/faults.hpp"

namespace forge {

namespace {

bool parse_integer_id(const PointId& s, __int128* out) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size() || s.size() - i > 30) return false;
  __int128 v = 0;
  for (size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    v = v * 10 + (s[j] - '0');
  }
  // Leading zeros would make "01" and "1" collide numerically.
  if (s.size() - i > 1 && s[i] == '0') return false;
  if (i == 1 && v == 0) return false;
  *out = (i == 1) ? -v : v;
  return true;
}

}  // namespace

bool point_less(const PointId& a, const PointId& b) {
  __int128 x, y;
  bool ia = parse_integer_id(a, &x), ib = parse_integer_id(b, &y);
  if (ia && ib) return x < y;
  if (ia != ib) return ia;
  return a < b;
}

int USignature::relation_index(const std::string& name) const {
  for (size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int USignature::label_index(const Rational& s) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), s);
  if (it == labels.end() || *it != s) return -1;
  return static_cast<int>(it - labels.begin());
}

void USignature::check() const {
  for (size_t i = 1; i < labels.size(); ++i) {
    if (!(labels[i - 1] < labels[i])) throw InputError("distance labels must be strictly increasing");
  }
  std::set<std::string> names;
  for (const auto& r : relations) {
    if (r.arity < 1) throw InputError("relation '" + r.name + "' needs arity >= 1");
    if (!names.insert(r.name).second) throw InputError("duplicate relation name '" + r.name + "'");
    for (const auto& p : r.symmetry) {
      if (static_cast<int>(p.size()) != r.arity || !perm::is_permutation(p)) {
        throw InputError("symmetry generator of '" + r.name + "' is not a permutation of its positions");
      }
    }
  }
}

USignature graph_signature() {
  USignature s;
  s.relations.push_back(RelationSymbol{"R", 2, {{1, 0}}});
  return s;
}

std::vector<int> canonical_classes(const std::vector<int>& class_of) {
  std::map<int, int> ids;
  std::vector<int> out(class_of.size());
  for (size_t i = 0; i < class_of.size(); ++i) {
    auto [it, fresh] = ids.emplace(class_of[i], static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

UStructure::UStructure(USignature sig, std::vector<PointId> points) : sig_(std::move(sig)) {
  sig_.check();
  std::sort(points.begin(), points.end(), point_less);
  for (size_t i = 1; i < points.size(); ++i) {
    if (points[i - 1] == points[i]) throw InputError("duplicate point '" + points[i] + "'");
  }
  points_ = std::move(points);
  tuples_.assign(sig_.relations.size(), {});
  std::vector<int> discrete(points_.size());
  std::iota(discrete.begin(), discrete.end(), 0);
  classes_.assign(sig_.labels.size(), discrete);
}

int UStructure::index_of(const PointId& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p, point_less);
  if (it == points_.end() || *it != p) return -1;
  return static_cast<int>(it - points_.begin());
}

int UStructure::require(const PointId& p) const {
  int i = index_of(p);
  if (i < 0) throw InputError("unknown point '" + p + "'");
  return i;
}

void UStructure::add_tuple(int rel, const Tuple& t) {
  if (rel < 0 || rel >= static_cast<int>(tuples_.size())) throw InputError("relation index out of range");
  if (static_cast<int>(t.size()) != sig_.relations[rel].arity) {
    throw InputError("tuple arity mismatch for relation '" + sig_.relations[rel].name + "'");
  }
  for (int x : t) {
    if (x < 0 || x >= size()) throw InputError("tuple entry out of range");
  }
  tuples_[rel].insert(t);
}

void UStructure::remove_tuple(int rel, const Tuple& t) { tuples_.at(rel).erase(t); }

bool UStructure::has_tuple(int rel, const Tuple& t) const { return tuples_[rel].count(t) > 0; }

void UStructure::set_partition(int label, const std::vector<int>& class_of) {
  if (static_cast<int>(class_of.size()) != size()) throw InputError("partition size mismatch");
  classes_.at(label) = canonical_classes(class_of);
}

std::vector<std::vector<int>> UStructure::class_lists(int label) const {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < size(); ++i) {
    int c = classes_[label][i];
    if (c >= static_cast<int>(out.size())) out.resize(c + 1);
    out[c].push_back(i);
  }
  return out;
}

UStructure UStructure::induced(const std::vector<int>& subset) const {
  std::vector<PointId> names;
  for (int i : subset) names.push_back(name(i));
  UStructure out(sig_, names);
  std::vector<int> to_new(size(), -1);
  for (int i : subset) to_new[i] = out.index_of(name(i));
  for (size_t r = 0; r < tuples_.size(); ++r) {
    for (const auto& t : tuples_[r]) {
      Tuple u;
      for (int x : t) {
        if (to_new[x] < 0) break;
        u.push_back(to_new[x]);
      }
      if (u.size() == t.size()) out.add_tuple(static_cast<int>(r), u);
    }
  }
  for (size_t s = 0; s < classes_.size(); ++s) {
    std::vector<int> cls(out.size());
    for (int i : subset) cls[to_new[i]] = classes_[s][i];
    out.set_partition(static_cast<int>(s), cls);
  }
  return out;
}

UStructure UStructure::renamed(const std::vector<PointId>& new_names) const {
  if (static_cast<int>(new_names.size()) != size()) throw InputError("rename size mismatch");
  UStructure out(sig_, new_names);
  std::vector<int> to_new(size());
  for (int i = 0; i < size(); ++i) to_new[i] = out.index_of(new_names[i]);
  for (size_t r = 0; r < tuples_.size(); ++r) {
    for (const auto& t : tuples_[r]) {
      Tuple u;
      for (int x : t) u.push_back(to_new[x]);
      out.add_tuple(static_cast<int>(r), u);
    }
  }
  for (size_t s = 0; s < classes_.size(); ++s) {
    std::vector<int> cls(size());
    for (int i = 0; i < size(); ++i) cls[to_new[i]] = classes_[s][i];
    out.set_partition(static_cast<int>(s), cls);
  }
  out.defects_ = defects_;
  return out;
}

std::vector<Tuple> symmetry_orbit(const RelationSymbol& rel, const Tuple& t) {
  std::set<Tuple> seen{t};
  std::vector<Tuple> out{t};
  for (size_t i = 0; i < out.size(); ++i) {
    for (const auto& p : rel.symmetry) {
      Tuple u(t.size());
      for (size_t k = 0; k < t.size(); ++k) u[k] = out[i][p[k]];
      if (seen.insert(u).second) out.push_back(u);
    }
  }
  return out;
}

namespace {

std::vector<PointId> names_of(const UStructure& x, const std::vector<int>& idx) {
  std::vector<PointId> out;
  for (int i : idx) out.push_back(x.name(i));
  return out;
}

}  // namespace

std::vector<Violation> validate(const UStructure& x) {
  std::vector<Violation> out = x.defects();
  const USignature& sig = x.signature();
  for (size_t r = 0; r < sig.relations.size(); ++r) {
    const auto& rel = sig.relations[r];
    for (const auto& t : x.tuples(static_cast<int>(r))) {
      std::set<int> distinct(t.begin(), t.end());
      if (distinct.size() != t.size()) {
        out.push_back({2, "tuple of " + rel.name + " repeats a point", names_of(x, t)});
        continue;
      }
      for (const auto& p : rel.symmetry) {
        Tuple u(t.size());
        for (size_t k = 0; k < t.size(); ++k) u[k] = t[p[k]];
        if (!x.has_tuple(static_cast<int>(r), u)) {
          out.push_back({1, rel.name + " is not closed under its symmetry group; missing image", names_of(x, u)});
          break;
        }
      }
    }
  }
  for (size_t s = 0; s + 1 < sig.labels.size(); ++s) {
    // E_s must refine E_{s+1}.
    std::map<int, int> up;
    std::map<int, int> rep;
    for (int i = 0; i < x.size(); ++i) {
      int c = x.classes(static_cast<int>(s))[i], d = x.classes(static_cast<int>(s + 1))[i];
      auto [it, fresh] = up.emplace(c, d);
      if (fresh) {
        rep[c] = i;
      } else if (it->second != d) {
        out.push_back({3,
                       "partition at " + sig.labels[s].str() + " does not refine partition at " +
                           sig.labels[s + 1].str(),
                       {x.name(rep[c]), x.name(i)}});
        break;
      }
    }
  }
  if (!sig.labels.empty()) {
    std::map<std::vector<int>, int> key_owner;
    for (int i = 0; i < x.size(); ++i) {
      std::vector<int> key;
      for (size_t s = 0; s < sig.labels.size(); ++s) key.push_back(x.classes(static_cast<int>(s))[i]);
      auto [it, fresh] = key_owner.emplace(key, i);
      if (!fresh) {
        out.push_back({5, "no label separates the two points", {x.name(it->second), x.name(i)}});
      }
    }
  }
  return out;
}

UStructure symmetrize(const UStructure& x) {
  UStructure out = x;
  if (fault_active("symmetrize")) return out;
  for (size_t r = 0; r < x.signature().relations.size(); ++r) {
    for (const auto& t : x.tuples(static_cast<int>(r))) {
      for (const auto& u : symmetry_orbit(x.signature().relations[r], t)) out.add_tuple(static_cast<int>(r), u);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partial isomorphisms and backtracking search.

namespace {

// Per relation, per point: tuples containing the point.
struct Incidence {
  std::vector<std::vector<std::vector<const Tuple*>>> at;
  explicit Incidence(const UStructure& x) {
    const size_t nr = x.signature().relations.size();
    at.assign(nr, std::vector<std::vector<const Tuple*>>(x.size()));
    for (size_t r = 0; r < nr; ++r) {
      for (const auto& t : x.tuples(static_cast<int>(r))) {
        std::set<int> seen;
        for (int p : t) {
          if (seen.insert(p).second) at[r][p].push_back(&t);
        }
      }
    }
  }
};

std::vector<std::int64_t> point_invariant(const UStructure& x, int p) {
  std::vector<std::int64_t> inv;
  const auto& sig = x.signature();
  for (size_t r = 0; r < sig.relations.size(); ++r) {
    std::vector<std::int64_t> pos(sig.relations[r].arity, 0);
    for (const auto& t : x.tuples(static_cast<int>(r))) {
      for (size_t k = 0; k < t.size(); ++k) {
        if (t[k] == p) ++pos[k];
      }
    }
    inv.insert(inv.end(), pos.begin(), pos.end());
  }
  for (size_t s = 0; s < sig.labels.size(); ++s) {
    const auto& cls = x.classes(static_cast<int>(s));
    inv.push_back(std::count(cls.begin(), cls.end(), cls[p]));
  }
  return inv;
}

class IsoSearch {
 public:
  IsoSearch(const UStructure& x, const UStructure& y) : x_(x), y_(y), ix_(x), iy_(y) {
    for (int i = 0; i < x.size(); ++i) inv_x_.push_back(point_invariant(x, i));
    for (int i = 0; i < y.size(); ++i) inv_y_.push_back(point_invariant(y, i));
  }

  // Checks that mapping pt -> c is consistent with the already mapped
  // points of `map` (pt itself must be unmapped).
  bool consistent(PointMap& map, PointMap& inv, int pt, int c) const {
    const auto& sig = x_.signature();
    for (size_t s = 0; s < sig.labels.size(); ++s) {
      for (int u = 0; u < x_.size(); ++u) {
        if (map[u] < 0) continue;
        if (x_.equiv(static_cast<int>(s), pt, u) != y_.equiv(static_cast<int>(s), c, map[u])) return false;
      }
    }
    map[pt] = c;
    inv[c] = pt;
    bool ok = true;
    for (size_t r = 0; r < sig.relations.size() && ok; ++r) {
      for (const Tuple* t : ix_.at[r][pt]) {
        Tuple u;
        for (int e : *t) {
          if (map[e] < 0) break;
          u.push_back(map[e]);
        }
        if (u.size() == t->size() && !y_.has_tuple(static_cast<int>(r), u)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      for (const Tuple* t : iy_.at[r][c]) {
        Tuple u;
        for (int e : *t) {
          if (inv[e] < 0) break;
          u.push_back(inv[e]);
        }
        if (u.size() == t->size() && !x_.has_tuple(static_cast<int>(r), u)) {
          ok = false;
          break;
        }
      }
    }
    map[pt] = -1;
    inv[c] = -1;
    return ok;
  }

  bool candidate(int pt, int c) const { return inv_x_[pt] == inv_y_[c]; }

  std::optional<PointMap> run(const PointMap& seed) {
    PointMap map = seed;
    map.resize(x_.size(), -1);
    PointMap inv(y_.size(), -1);
    for (int i = 0; i < x_.size(); ++i) {
      if (map[i] < 0) continue;
      if (map[i] >= y_.size() || inv[map[i]] >= 0) return std::nullopt;
      inv[map[i]] = i;
    }
    if (!is_partial_iso(x_, y_, map)) return std::nullopt;
    std::vector<int> order;
    for (int i = 0; i < x_.size(); ++i) {
      if (map[i] < 0) order.push_back(i);
    }
    if (dfs(order, 0, map, inv)) return map;
    return std::nullopt;
  }

 private:
  bool dfs(const std::vector<int>& order, size_t k, PointMap& map, PointMap& inv) {
    if (k == order.size()) return true;
    int pt = order[k];
    for (int c = 0; c < y_.size(); ++c) {
      if (inv[c] >= 0 || !candidate(pt, c)) continue;
      if (!consistent(map, inv, pt, c)) continue;
      map[pt] = c;
      inv[c] = pt;
      if (dfs(order, k + 1, map, inv)) return true;
      map[pt] = -1;
      inv[c] = -1;
    }
    return false;
  }

  const UStructure& x_;
  const UStructure& y_;
  Incidence ix_, iy_;
  std::vector<std::vector<std::int64_t>> inv_x_, inv_y_;
};

}  // namespace

bool is_partial_iso(const UStructure& x, const UStructure& y, const PointMap& p) {
  if (!(x.signature() == y.signature())) return false;
  if (static_cast<int>(p.size()) != x.size()) return false;
  PointMap inv(y.size(), -1);
  for (int i = 0; i < x.size(); ++i) {
    if (p[i] < 0) continue;
    if (p[i] >= y.size() || inv[p[i]] >= 0) return false;
    inv[p[i]] = i;
  }
  const auto& sig = x.signature();
  for (size_t s = 0; s < sig.labels.size(); ++s) {
    for (int a = 0; a < x.size(); ++a) {
      if (p[a] < 0) continue;
      for (int b = a + 1; b < x.size(); ++b) {
        if (p[b] < 0) continue;
        if (x.equiv(static_cast<int>(s), a, b) != y.equiv(static_cast<int>(s), p[a], p[b])) return false;
      }
    }
  }
  for (size_t r = 0; r < sig.relations.size(); ++r) {
    for (const auto& t : x.tuples(static_cast<int>(r))) {
      Tuple u;
      for (int e : t) {
        if (p[e] < 0) break;
        u.push_back(p[e]);
      }
      if (u.size() == t.size() && !y.has_tuple(static_cast<int>(r), u)) return false;
    }
    for (const auto& t : y.tuples(static_cast<int>(r))) {
      Tuple u;
      for (int e : t) {
        if (inv[e] < 0) break;
        u.push_back(inv[e]);
      }
      if (u.size() == t.size() && !x.has_tuple(static_cast<int>(r), u)) return false;
    }
  }
  return true;
}

bool is_embedding(const UStructure& x, const UStructure& y, const PointMap& p) {
  if (static_cast<int>(p.size()) != x.size()) return false;
  for (int v : p) {
    if (v < 0) return false;
  }
  return is_partial_iso(x, y, p);
}

bool is_automorphism(const UStructure& x, const Perm& p) {
  return perm::is_permutation(p) && static_cast<int>(p.size()) == x.size() && is_embedding(x, x, p);
}

std::vector<PointMap> extend_partial_iso(const UStructure& x, const UStructure& y, const PointMap& p, int pt) {
  if (pt < 0 || pt >= x.size()) throw InputError("point out of range");
  if (static_cast<int>(p.size()) != x.size()) throw InputError("partial map size mismatch");
  if (p[pt] >= 0) throw PreconditionError("point already in the domain");
  IsoSearch search(x, y);
  PointMap map = p;
  PointMap inv(y.size(), -1);
  for (int i = 0; i < x.size(); ++i) {
    if (map[i] >= 0) inv[map[i]] = i;
  }
  std::vector<PointMap> out;
  for (int c = 0; c < y.size(); ++c) {
    if (inv[c] >= 0) continue;
    if (!search.consistent(map, inv, pt, c)) continue;
    PointMap q = p;
    q[pt] = c;
    out.push_back(std::move(q));
  }
  return out;
}

std::optional<PointMap> find_isomorphism_extending(const UStructure& x, const UStructure& y, const PointMap& seed) {
  if (x.size() != y.size() || !(x.signature() == y.signature())) return std::nullopt;
  for (size_t r = 0; r < x.signature().relations.size(); ++r) {
    if (x.tuples(static_cast<int>(r)).size() != y.tuples(static_cast<int>(r)).size()) return std::nullopt;
  }
  IsoSearch search(x, y);
  return search.run(seed);
}

std::optional<PointMap> find_isomorphism(const UStructure& x, const UStructure& y) {
  return find_isomorphism_extending(x, y, PointMap(x.size(), -1));
}

std::vector<Perm> automorphisms_fixing(const UStructure& x, const std::vector<int>& fixed) {
  const int n = x.size();
  PointMap seed(n, -1);
  for (int a : fixed) {
    if (a < 0 || a >= n) throw InputError("fixed point out of range");
    seed[a] = a;
  }
  std::vector<Perm> gens;
  IsoSearch search(x, x);
  for (int b = 0; b < n; ++b) {
    if (seed[b] >= 0) continue;
    // Orbit of b under the generators found at this level.
    std::vector<Perm> level;
    std::vector<char> in_orbit(n, 0);
    in_orbit[b] = 1;
    auto close_orbit = [&]() {
      std::queue<int> q;
      for (int i = 0; i < n; ++i) {
        if (in_orbit[i]) q.push(i);
      }
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const auto& g : level) {
          if (!in_orbit[g[u]]) {
            in_orbit[g[u]] = 1;
            q.push(g[u]);
          }
        }
      }
    };
    for (int c = 0; c < n; ++c) {
      if (in_orbit[c] || seed[c] >= 0 || !search.candidate(b, c)) continue;
      PointMap s = seed;
      s[b] = c;
      auto found = search.run(s);
      if (found) {
        level.push_back(*found);
        close_orbit();
      }
    }
    gens.insert(gens.end(), level.begin(), level.end());
    seed[b] = b;
  }
  return gens;
}

std::optional<ExtensionCounterexample> check_extension_property(const UStructure& g, int k,
                                                                const std::vector<int>& window) {
  const auto& sig = g.signature();
  if (sig.relations.size() != 1 || sig.relations[0].arity != 2) {
    throw PreconditionError("extension property check needs the single binary relation signature");
  }
  const int n = g.size();
  const int words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> adj(n, std::vector<std::uint64_t>(words, 0));
  for (const auto& t : g.tuples(0)) {
    adj[t[0]][t[1] / 64] |= std::uint64_t{1} << (t[1] % 64);
    adj[t[1]][t[0] / 64] |= std::uint64_t{1} << (t[0] % 64);
  }
  std::vector<std::uint64_t> all(words, 0);
  for (int i = 0; i < n; ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
  std::vector<int> w = window;
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  for (int v : w) {
    if (v < 0 || v >= n) throw InputError("window point out of range");
  }
  std::vector<int> combo;
  std::optional<ExtensionCounterexample> bad;
  std::function<void(size_t, int)> rec = [&](size_t start, int left) {
    if (bad) return;
    if (left == 0) {
      const int t = static_cast<int>(combo.size());
      for (int mask = (1 << t) - 1; mask >= 0 && !bad; --mask) {
        std::vector<std::uint64_t> cand = all;
        for (int i = 0; i < t; ++i) {
          int v = combo[i];
          cand[v / 64] &= ~(std::uint64_t{1} << (v % 64));
          for (int j = 0; j < words; ++j) cand[j] &= (mask >> i & 1) ? adj[v][j] : ~adj[v][j];
        }
        bool any = false;
        for (auto word : cand) any = any || word != 0;
        if (!any) {
          ExtensionCounterexample ce;
          for (int i = 0; i < t; ++i) ((mask >> i & 1) ? ce.adjacent : ce.non_adjacent).push_back(combo[i]);
          bad = ce;
        }
      }
      return;
    }
    for (size_t i = start; i < w.size() && !bad; ++i) {
      combo.push_back(w[i]);
      rec(i + 1, left - 1);
      combo.pop_back();
    }
  };
  for (int t = 0; t <= k && !bad; ++t) rec(0, t);
  return bad;
}

std::vector<UStructure> one_point_types(const UStructure& y, const PointId& z) {
  if (y.index_of(z) >= 0) throw InputError("fresh point name already used");
  std::vector<PointId> names = y.points();
  names.push_back(z);
  UStructure base(y.signature(), names);
  const int zi = base.index_of(z);
  std::vector<int> old_to_new(y.size());
  for (int i = 0; i < y.size(); ++i) old_to_new[i] = base.index_of(y.name(i));
  const auto& sig = y.signature();
  for (size_t r = 0; r < sig.relations.size(); ++r) {
    for (const auto& t : y.tuples(static_cast<int>(r))) {
      Tuple u;
      for (int e : t) u.push_back(old_to_new[e]);
      base.add_tuple(static_cast<int>(r), u);
    }
  }
  // Orbits of tuples that contain z, per relation.
  std::vector<std::pair<int, std::vector<Tuple>>> orbits;
  for (size_t r = 0; r < sig.relations.size(); ++r) {
    const int k = sig.relations[r].arity;
    if (k > base.size()) continue;
    std::set<Tuple> seen;
    Tuple t(k);
    std::function<void(int)> gen = [&](int pos) {
      if (pos == k) {
        if (std::find(t.begin(), t.end(), zi) == t.end() || seen.count(t)) return;
        auto orb = symmetry_orbit(sig.relations[r], t);
        seen.insert(orb.begin(), orb.end());
        orbits.emplace_back(static_cast<int>(r), orb);
        return;
      }
      for (int v = 0; v < base.size(); ++v) {
        if (std::find(t.begin(), t.begin() + pos, v) != t.begin() + pos) continue;
        t[pos] = v;
        gen(pos + 1);
      }
    };
    gen(0);
  }
  if (orbits.size() > 20) throw PreconditionError("too many one-point relation patterns to enumerate");
  // Partition placements: (first label index where z joins, class rep).
  std::vector<std::pair<int, int>> placements{{-1, -1}};
  const int ns = static_cast<int>(sig.labels.size());
  for (int j = 1; j < ns; ++j) {
    std::set<int> seen_cls;
    for (int i = 0; i < y.size(); ++i) {
      if (seen_cls.insert(y.classes(j)[i]).second) placements.emplace_back(j, i);
    }
  }
  std::vector<UStructure> out;
  for (auto [j0, rep] : placements) {
    UStructure with_parts = base;
    for (int s = 0; s < ns; ++s) {
      std::vector<int> cls(base.size());
      for (int i = 0; i < y.size(); ++i) cls[old_to_new[i]] = y.classes(s)[i];
      cls[zi] = (j0 >= 0 && s >= j0) ? y.classes(s)[rep] : y.size() + 1;
      with_parts.set_partition(s, cls);
    }
    const std::uint64_t combos = std::uint64_t{1} << orbits.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      UStructure w = with_parts;
      for (size_t o = 0; o < orbits.size(); ++o) {
        if (!(mask >> o & 1)) continue;
        for (const auto& t : orbits[o].second) w.add_tuple(orbits[o].first, t);
      }
      if (validate(w).empty()) out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<std::vector<Rational>> as_ultrametric(const UStructure& x) {
  const auto& labels = x.signature().labels;
  if (labels.empty()) throw PreconditionError("ultrametric needs at least one distance label");
  const int n = x.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      int best = -1;
      for (int s = static_cast<int>(labels.size()) - 1; s >= 0; --s) {
        if (!x.equiv(s, a, b)) {
          best = s;
          break;
        }
      }
      if (best < 0) throw PreconditionError("points " + x.name(a) + " and " + x.name(b) + " are never separated");
      d[a][b] = d[b][a] = labels[best];
    }
  }
  return d;
}

UStructure from_ultrametric(const UStructure& x, const std::vector<std::vector<Rational>>& d) {
  UStructure out = x;
  const auto& labels = x.signature().labels;
  const int n = x.size();
  for (size_t s = 0; s < labels.size(); ++s) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (d[a][b] < labels[s]) parent[find(a)] = find(b);
      }
    }
    std::vector<int> cls(n);
    for (int a = 0; a < n; ++a) cls[a] = find(a);
    out.set_partition(static_cast<int>(s), cls);
  }
  return out;
}

}  // namespace forge
