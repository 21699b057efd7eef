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

#include "forge/randgraph.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "forge/errors.hpp"

namespace forge {

SymmetricSubset make_symmetric_subset(const FgAbelianGroup& g, std::vector<GroupElement> members) {
  for (const auto& m : members) g.check_element(m);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::set<GroupElement> all(members.begin(), members.end());
  for (const auto& m : members) {
    if (g.is_zero(m)) throw InputError("symmetric subset contains the identity");
    if (!all.count(g.negate(m))) throw InputError("subset is not symmetric: missing inverse of " + to_string(m));
  }
  return SymmetricSubset{g, std::move(members)};
}

std::vector<SymmetricSubset> all_symmetric_subsets(Int n) {
  if (n < 1) throw InputError("cyclic order must be positive");
  FgAbelianGroup g = n == 1 ? FgAbelianGroup(0, {}) : FgAbelianGroup(0, {n});
  const Int half = n / 2;
  std::vector<SymmetricSubset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << half); ++mask) {
    std::vector<GroupElement> m;
    for (Int d = 1; d <= half; ++d) {
      if (mask >> (d - 1) & 1) {
        m.push_back(g.element({d}));
        m.push_back(g.element({n - d}));
      }
    }
    out.push_back(make_symmetric_subset(g, m));
  }
  return out;
}

PointId element_name(const GroupElement& g) {
  PointId s;
  for (size_t i = 0; i < g.coords.size(); ++i) s += (i ? "," : "") + std::to_string(g.coords[i]);
  return s.empty() ? "0" : s;
}

UStructure regular_graph(const SymmetricSubset& s, const std::vector<GroupElement>& window) {
  std::vector<PointId> names;
  for (const auto& w : window) {
    s.group.check_element(w);
    names.push_back(element_name(w));
  }
  UStructure out(graph_signature(), names);
  std::set<GroupElement> members(s.members.begin(), s.members.end());
  for (const auto& x : window) {
    for (const auto& y : window) {
      if (members.count(s.group.sub(y, x))) {
        out.add_tuple(0, {out.index_of(element_name(x)), out.index_of(element_name(y))});
      }
    }
  }
  return out;
}

Action regular_action(const SymmetricSubset& s) {
  if (!s.group.is_finite()) throw InputError("regular action needs a finite group");
  const auto elems = s.group.elements();
  UStructure x = regular_graph(s, elems);
  std::vector<Perm> imgs;
  for (int j = 0; j < s.group.dim(); ++j) {
    Perm p(x.size());
    for (const auto& e : elems) {
      p[x.index_of(element_name(e))] = x.index_of(element_name(s.group.add(s.group.generator(j), e)));
    }
    imgs.push_back(p);
  }
  return Action(s.group, x, imgs);
}

bool regular_reps_conjugate(const SymmetricSubset& s1, const SymmetricSubset& s2,
                            const std::vector<GroupElement>& window) {
  if (!(s1.group == s2.group)) throw InputError("subsets of different groups");
  std::set<GroupElement> a(s1.members.begin(), s1.members.end()), b(s2.members.begin(), s2.members.end());
  for (const auto& x : window) {
    for (const auto& y : window) {
      GroupElement d = s1.group.sub(y, x);
      if (a.count(d) != b.count(d)) return false;
    }
  }
  return true;
}

std::vector<PointMap> equivariant_isomorphisms_brute(const Action& pi, const Action& theta) {
  const int n = pi.space().size();
  if (n > 9) throw InputError("exhaustive search is limited to 9 points");
  std::vector<PointMap> out;
  if (theta.space().size() != n || !(pi.group() == theta.group())) return out;
  PointMap f(n);
  for (int i = 0; i < n; ++i) f[i] = i;
  do {
    bool ok = true;
    for (size_t g = 0; g < pi.images().size() && ok; ++g) {
      for (int x = 0; x < n && ok; ++x) ok = f[pi.images()[g][x]] == theta.images()[g][f[x]];
    }
    if (ok && is_embedding(pi.space(), theta.space(), f)) out.push_back(f);
  } while (std::next_permutation(f.begin(), f.end()));
  return out;
}

std::string stage_kind_name(StageRecord::Kind k) {
  switch (k) {
    case StageRecord::kInitial:
      return "initial";
    case StageRecord::kGap:
      return "gap";
    case StageRecord::kCopy:
      return "copy";
  }
  return "?";
}

std::vector<bool> schedule_pattern(std::int64_t l) {
  if (l < 0) throw InputError("pattern index must be nonnegative");
  int len = 1;
  while (len < 62 && l >= (std::int64_t{1} << len)) {
    l -= std::int64_t{1} << len;
    ++len;
  }
  std::vector<bool> p(len);
  for (int i = 0; i < len; ++i) p[i] = (l >> (len - 1 - i)) & 1;
  return p;
}

StagedS staged_s(std::int64_t length, std::uint64_t seed) {
  if (length < 1) throw InputError("length must be at least 1");
  StagedS s;
  s.length = length;
  s.bits.assign(length + 1, false);
  std::mt19937_64 rng(seed);
  auto write = [&](StageRecord rec) {
    for (size_t i = 0; i < rec.pattern.size(); ++i) {
      const std::int64_t d = rec.lo + static_cast<std::int64_t>(i);
      if (d <= length) s.bits[d] = rec.pattern[i];
    }
    s.log.push_back(std::move(rec));
  };
  StageRecord first{StageRecord::kInitial, 1, std::max<std::int64_t>(1, length / 4), {}};
  for (std::int64_t d = first.lo; d <= first.hi; ++d) first.pattern.push_back(rng() & 1);
  std::int64_t k = first.hi;
  write(first);
  std::int64_t copies = 0;
  while (k < length) {
    s.log.push_back({StageRecord::kGap, k + 1, 3 * k, {}});
    k *= 3;
    if (k >= length) break;
    StageRecord c{StageRecord::kCopy, k + 1, 0, schedule_pattern(copies++)};
    c.hi = k + static_cast<std::int64_t>(c.pattern.size());
    k = c.hi;
    write(c);
  }
  return s;
}

int ShiftGraph::vertex(std::int64_t n) const {
  if (n < -radius || n > radius) throw InputError("point " + std::to_string(n) + " is outside the window");
  return index_by_value[n + radius];
}

std::int64_t ShiftGraph::value(int index) const { return value_by_index.at(index); }

ShiftGraph shift_graph(const StagedS& s, std::int64_t radius) {
  if (radius < 0 || radius > s.length) throw InputError("window radius must lie in [0, length]");
  ShiftGraph g;
  g.s = s;
  g.radius = radius;
  std::vector<PointId> names;
  for (std::int64_t n = -radius; n <= radius; ++n) names.push_back(std::to_string(n));
  g.graph = UStructure(graph_signature(), names);
  g.index_by_value.resize(names.size());
  g.value_by_index.resize(names.size());
  for (std::int64_t n = -radius; n <= radius; ++n) {
    const int i = g.graph.index_of(std::to_string(n));
    g.index_by_value[n + radius] = i;
    g.value_by_index[i] = n;
  }
  for (std::int64_t n = -radius; n <= radius; ++n) {
    for (std::int64_t m = n + 1; m <= radius; ++m) {
      if (!s.contains(m - n)) continue;
      g.graph.add_tuple(0, {g.vertex(n), g.vertex(m)});
      g.graph.add_tuple(0, {g.vertex(m), g.vertex(n)});
    }
  }
  g.shift.assign(names.size(), -1);
  for (std::int64_t n = -radius; n < radius; ++n) g.shift[g.vertex(n)] = g.vertex(n + 1);
  g.valid_lo = -radius;
  g.valid_hi = radius - 1;
  return g;
}

std::int64_t find_unrelated_translate(const ShiftGraph& g, const std::vector<std::int64_t>& a) {
  if (a.empty()) return 1;
  for (auto x : a) {
    if (x < -g.radius || x > g.radius) throw InputError("point " + std::to_string(x) + " is outside the window");
  }
  std::set<std::int64_t> diffs;
  for (auto x : a) {
    for (auto y : a) diffs.insert(y - x);
  }
  const std::int64_t top = *std::max_element(a.begin(), a.end());
  const std::int64_t spread = *diffs.rbegin();
  for (std::int64_t n = 1; n + spread <= g.s.length; ++n) {
    bool ok = true;
    for (auto d : diffs) {
      const std::int64_t dist = n + d < 0 ? -(n + d) : n + d;
      if (dist == 0 || g.s.contains(dist)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (top + n > g.radius) {
      throw InputError("window too short: translate " + std::to_string(n) + " needs radius " +
                       std::to_string(top + n));
    }
    return n;
  }
  throw InputError("window too short: no unrelated translate within S's length " + std::to_string(g.s.length) +
                   "; need length above " + std::to_string(3 * (g.s.length + spread)));
}

namespace {

std::vector<std::int64_t> point_values(const Action& a, const ShiftGraph& g) {
  std::vector<std::int64_t> v;
  for (const auto& name : a.space().points()) {
    std::size_t used = 0;
    std::int64_t x = 0;
    try {
      x = std::stoll(name, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != name.size() || name.empty()) throw InputError("point '" + name + "' is not an integer");
    v.push_back(x);
  }
  std::vector<int> idx;
  for (auto x : v) idx.push_back(g.vertex(x));
  if (!(g.graph.induced(idx) == a.space())) throw InputError("action space is not an induced subgraph of the window");
  return v;
}

}  // namespace

SpliceResult transitivity_splice(const Action& sigma_n, const Action& sigma_m, const ShiftGraph& g) {
  if (!(sigma_n.group() == sigma_m.group())) throw InputError("actions of different groups");
  for (const Action* s : {&sigma_n, &sigma_m}) {
    if (auto v = validate_action(*s); !v.empty()) throw InputError("invalid action: " + v[0].message);
  }
  const auto vn = point_values(sigma_n, g);
  const auto vm = point_values(sigma_m, g);
  std::vector<std::int64_t> all = vn;
  all.insert(all.end(), vm.begin(), vm.end());
  SpliceResult out;
  out.k = find_unrelated_translate(g, all);
  std::vector<int> idx;
  for (auto x : vn) idx.push_back(g.vertex(x));
  for (auto x : vm) idx.push_back(g.vertex(x + out.k));
  UStructure space = g.graph.induced(idx);
  std::vector<Perm> imgs;
  for (size_t j = 0; j < sigma_n.images().size(); ++j) {
    Perm p(space.size());
    for (size_t i = 0; i < vn.size(); ++i) {
      p[space.index_of(std::to_string(vn[i]))] = space.index_of(std::to_string(vn[sigma_n.images()[j][i]]));
    }
    for (size_t i = 0; i < vm.size(); ++i) {
      p[space.index_of(std::to_string(vm[i] + out.k))] =
          space.index_of(std::to_string(vm[sigma_m.images()[j][i]] + out.k));
    }
    imgs.push_back(p);
  }
  out.action = Action(sigma_n.group(), space, imgs);
  if (auto v = validate_action(out.action); !v.empty()) throw ViolationError("spliced action is invalid: " + v[0].message);
  return out;
}

}  // namespace forge
