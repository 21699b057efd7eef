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

#include "forge/orbitclose.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "forge/errors.hpp"

namespace forge {

namespace {

std::string coords_str(const IntVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct Prepared {
  std::vector<QuotientGroup> q;
  std::vector<std::vector<GroupElement>> pa;  // anchors in Delta_i
};

Prepared prepare(const OrbitCloseProblem& p) {
  Prepared pr;
  for (size_t i = 0; i < p.kernels.size(); ++i) {
    pr.q.push_back(quotient(p.group, p.kernels[i]));
    std::vector<GroupElement> row;
    for (const auto& a : p.anchors[i]) row.push_back(pr.q.back().project(a));
    pr.pa.push_back(row);
  }
  return pr;
}

// Location (orbit, anchor slot) of every anchor_structure point.
std::vector<std::pair<int, int>> anchor_locations(const OrbitCloseProblem& p) {
  std::vector<std::pair<int, int>> loc(p.anchor_structure.size(), {-1, -1});
  for (size_t i = 0; i < p.anchor_points.size(); ++i) {
    for (size_t k = 0; k < p.anchor_points[i].size(); ++k) {
      loc[p.anchor_points[i][k]] = {static_cast<int>(i), static_cast<int>(k)};
    }
  }
  return loc;
}

// Preimage in Gamma of F_i.
Subgroup preimage(const OrbitCloseProblem& p, const QuotientGroup& q, int i, const Subgroup& f) {
  IntMat rows = p.kernels[i].basis();
  for (const auto& g : f.generators()) rows.push_back(q.section(g).coords);
  return Subgroup::from_lattice(p.group, rows);
}

void check_family_shape(const OrbitCloseProblem& p, const Prepared& pr, const SubgroupFamily& fam) {
  if (fam.f.size() != p.kernels.size()) throw InputError("family needs one subgroup per orbit");
  for (size_t i = 0; i < fam.f.size(); ++i) {
    if (!(fam.f[i].parent() == pr.q[i].group())) throw InputError("subgroup lives in the wrong quotient");
    if (!fam.f[i].index()) throw InputError("subgroup " + std::to_string(i) + " has infinite index");
  }
}

std::optional<FamilyVerdict> check_condition_one(const Prepared& pr, const SubgroupFamily& fam) {
  for (size_t i = 0; i < fam.f.size(); ++i) {
    const auto& dg = pr.q[i].group();
    for (size_t a = 0; a < pr.pa[i].size(); ++a) {
      for (size_t b = 0; b < pr.pa[i].size(); ++b) {
        if (a == b) continue;
        GroupElement d = dg.sub(pr.pa[i][b], pr.pa[i][a]);
        if (fam.f[i].contains(d)) {
          return FamilyVerdict{false, 1,
                               "orbit " + std::to_string(i) + ": anchors " + std::to_string(a) + " and " +
                                   std::to_string(b) + " differ by " + to_string(d) + " which lies in F"};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<GroupElement> common_lift(const OrbitCloseProblem& p,
                                        const std::vector<std::pair<int, GroupElement>>& targets) {
  const int dim = p.group.dim();
  IntVec x0(dim, 0);
  IntMat lat = lattice::identity(dim);
  for (const auto& [l, t] : targets) {
    const IntMat& k = p.kernels[l].basis();
    IntMat both = lat;
    both.insert(both.end(), k.begin(), k.end());
    IntVec diff(dim);
    for (int c = 0; c < dim; ++c) diff[c] = lattice::checked_add(t.coords[c], -x0[c]);
    auto sol = lattice::solve(both, diff, dim);
    if (!sol) return std::nullopt;
    IntVec coeff(sol->begin(), sol->begin() + lat.size());
    IntVec u = lattice::row_times(coeff, lat, dim);
    for (int c = 0; c < dim; ++c) x0[c] = lattice::checked_add(x0[c], u[c]);
    lat = lattice::intersect(lat, k, dim);
  }
  return p.group.element(x0);
}

void check_problem(const OrbitCloseProblem& p) {
  const size_t n = p.kernels.size();
  if (p.anchors.size() != n || p.anchor_points.size() != n) throw InputError("orbit data sizes differ");
  if (!p.point_names.empty() && p.point_names.size() != n) throw InputError("point names need one map per orbit");
  std::vector<char> seen(p.anchor_structure.size(), 0);
  size_t total = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!(p.kernels[i].parent() == p.group)) throw InputError("kernel is not a subgroup of the group");
    if (p.anchors[i].empty()) throw InputError("orbit " + std::to_string(i) + " has no anchor");
    if (p.anchors[i].size() != p.anchor_points[i].size()) throw InputError("anchor point list size mismatch");
    for (const auto& a : p.anchors[i]) p.group.check_element(a);
    for (int idx : p.anchor_points[i]) {
      if (idx < 0 || idx >= p.anchor_structure.size() || seen[idx]) throw InputError("bad anchor point index");
      seen[idx] = 1;
    }
    total += p.anchors[i].size();
    for (size_t a = 0; a < p.anchors[i].size(); ++a) {
      for (size_t b = a + 1; b < p.anchors[i].size(); ++b) {
        if (p.kernels[i].contains(p.group.sub(p.anchors[i][a], p.anchors[i][b]))) {
          throw InputError("anchors " + p.anchor_structure.name(p.anchor_points[i][a]) + " and " +
                           p.anchor_structure.name(p.anchor_points[i][b]) + " are the same orbit point");
        }
      }
    }
  }
  if (total != static_cast<size_t>(p.anchor_structure.size())) throw InputError("every anchor point needs an orbit");
  if (auto v = validate(p.anchor_structure); !v.empty()) throw InputError("anchor structure is invalid: " + v[0].message);

  // A group element carrying one anchor tuple exactly onto another must
  // preserve membership.
  const auto loc = anchor_locations(p);
  auto translates = [&](const Tuple& s, const Tuple& t) {
    std::vector<std::pair<int, GroupElement>> targets;
    for (size_t j = 0; j < s.size(); ++j) {
      if (loc[s[j]].first != loc[t[j]].first) return false;
      const int l = loc[s[j]].first;
      targets.emplace_back(l, p.group.sub(p.anchors[l][loc[t[j]].second], p.anchors[l][loc[s[j]].second]));
    }
    return common_lift(p, targets).has_value();
  };
  const UStructure& a = p.anchor_structure;
  const int na = a.size();
  for (size_t r = 0; r < a.signature().relations.size(); ++r) {
    const int arity = a.signature().relations[r].arity;
    for (const auto& s : a.tuples(static_cast<int>(r))) {
      Tuple t(arity, 0);
      std::function<void(int)> rec = [&](int j) {
        if (j == arity) {
          if (!a.has_tuple(static_cast<int>(r), t) && translates(s, t)) {
            throw InputError("anchor structure is not invariant: relation " + a.signature().relations[r].name);
          }
          return;
        }
        for (int x = 0; x < na; ++x) {
          if (loc[x].first != loc[s[j]].first) continue;
          t[j] = x;
          rec(j + 1);
        }
      };
      rec(0);
    }
  }
  for (size_t s = 0; s < a.signature().labels.size(); ++s) {
    for (int x = 0; x < na; ++x) {
      for (int y = 0; y < na; ++y) {
        if (!a.equiv(static_cast<int>(s), x, y)) continue;
        for (int u = 0; u < na; ++u) {
          for (int v = 0; v < na; ++v) {
            if (!a.equiv(static_cast<int>(s), u, v) && translates({x, y}, {u, v})) {
              throw InputError("anchor structure is not invariant at label " + a.signature().labels[s].str());
            }
          }
        }
      }
    }
  }
}

FamilyVerdict check_family(const OrbitCloseProblem& p, const SubgroupFamily& fam) {
  Prepared pr = prepare(p);
  check_family_shape(p, pr, fam);
  if (auto v = check_condition_one(pr, fam)) return *v;
  Subgroup m = Subgroup::whole(p.group);
  for (size_t i = 0; i < fam.f.size(); ++i) m = m.intersect(preimage(p, pr.q[i], static_cast<int>(i), fam.f[i]));
  QuotientGroup qm = quotient(p.group, m);
  for (const auto& e : qm.group().elements()) {
    const GroupElement gamma = qm.section(e);
    std::vector<std::pair<int, GroupElement>> targets;
    for (size_t i = 0; i < fam.f.size(); ++i) {
      const auto& dg = pr.q[i].group();
      const GroupElement ag = pr.q[i].project(gamma);
      std::optional<GroupElement> t;
      for (const auto& a : pr.pa[i]) {
        for (const auto& b : pr.pa[i]) {
          if (!fam.f[i].contains(dg.sub(dg.add(ag, a), b))) continue;
          GroupElement d = dg.sub(b, a);
          if (t && !(*t == d)) {
            return {false, 2,
                    "gamma " + to_string(gamma) + " matches anchor pairs of orbit " + std::to_string(i) +
                        " needing translations " + to_string(*t) + " and " + to_string(d)};
          }
          t = d;
        }
      }
      if (t) targets.emplace_back(static_cast<int>(i), pr.q[i].section(*t));
    }
    if (!common_lift(p, targets)) {
      return {false, 2, "gamma " + to_string(gamma) + " matches anchor pairs that no group element lifts"};
    }
  }
  return {};
}

FamilyVerdict check_family_brute(const OrbitCloseProblem& p, const SubgroupFamily& fam, int sigma_radius) {
  Prepared pr = prepare(p);
  check_family_shape(p, pr, fam);
  const size_t n = fam.f.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t a = 0; a < p.anchors[i].size(); ++a) {
      for (size_t b = 0; b < p.anchors[i].size(); ++b) {
        if (a != b && fam.f[i].contains(pr.q[i].project(p.group.sub(p.anchors[i][b], p.anchors[i][a])))) {
          return {false, 1, "anchors collapse"};
        }
      }
    }
  }
  // Triples (orbit, a, b) as bit positions.
  struct Triple {
    int l, a, b;
  };
  std::vector<Triple> triples;
  for (size_t i = 0; i < n; ++i) {
    for (size_t a = 0; a < p.anchors[i].size(); ++a) {
      for (size_t b = 0; b < p.anchors[i].size(); ++b) triples.push_back({int(i), int(a), int(b)});
    }
  }
  if (triples.size() > 63) throw InputError("too many anchor pairs for the exhaustive oracle");
  const FgAbelianGroup& g = p.group;
  // Box of group elements: free coordinates in [lo, hi], torsion in full.
  auto each_in_box = [&](Int lo, Int hi, const std::function<void(const GroupElement&)>& f) {
    IntVec c(g.dim(), 0);
    std::function<void(int)> rec = [&](int k) {
      if (k == g.dim()) {
        f(g.element(c));
        return;
      }
      const bool free = k < g.free_rank();
      const Int a = free ? lo : 0, b = free ? hi : g.torsion()[k - g.free_rank()] - 1;
      for (Int v = a; v <= b; ++v) {
        c[k] = v;
        rec(k + 1);
      }
    };
    rec(0);
  };
  std::set<std::uint64_t> sigma_masks;
  each_in_box(-sigma_radius, sigma_radius, [&](const GroupElement& s) {
    std::uint64_t mask = 0;
    for (size_t t = 0; t < triples.size(); ++t) {
      const auto& tr = triples[t];
      GroupElement v = g.sub(g.add(s, p.anchors[tr.l][tr.a]), p.anchors[tr.l][tr.b]);
      if (p.kernels[tr.l].contains(v)) mask |= std::uint64_t{1} << t;
    }
    sigma_masks.insert(mask);
  });
  auto liftable = [&](std::uint64_t need) {
    for (auto m : sigma_masks) {
      if ((m & need) == need) return true;
    }
    return false;
  };
  Int box = 1;
  for (const auto& f : fam.f) box = lattice::checked_mul(box, *f.index());
  std::optional<FamilyVerdict> bad;
  each_in_box(0, box - 1, [&](const GroupElement& gamma) {
    if (bad) return;
    std::vector<std::vector<int>> sat(n);
    for (size_t t = 0; t < triples.size(); ++t) {
      const auto& tr = triples[t];
      GroupElement v = g.sub(g.add(gamma, p.anchors[tr.l][tr.a]), p.anchors[tr.l][tr.b]);
      if (fam.f[tr.l].contains(pr.q[tr.l].project(v))) sat[tr.l].push_back(static_cast<int>(t));
    }
    // Every orbit subset and every nonempty choice of satisfied pairs.
    for (std::uint32_t sub = 1; sub < (1u << n) && !bad; ++sub) {
      std::vector<int> orbits_in;
      bool empty = false;
      for (size_t i = 0; i < n; ++i) {
        if (sub >> i & 1) {
          orbits_in.push_back(static_cast<int>(i));
          if (sat[i].empty()) empty = true;
        }
      }
      if (empty) continue;
      std::function<void(size_t, std::uint64_t)> rec = [&](size_t k, std::uint64_t need) {
        if (bad) return;
        if (k == orbits_in.size()) {
          if (!liftable(need)) bad = FamilyVerdict{false, 2, "gamma " + to_string(gamma) + " has no lift"};
          return;
        }
        const auto& s = sat[orbits_in[k]];
        for (std::uint32_t pick = 1; pick < (1u << s.size()); ++pick) {
          std::uint64_t add = 0;
          for (size_t j = 0; j < s.size(); ++j) {
            if (pick >> j & 1) add |= std::uint64_t{1} << s[j];
          }
          rec(k + 1, need | add);
        }
      };
      rec(0, 0);
    }
  });
  if (bad) return *bad;
  return {};
}

namespace {

Int exponent_of(const FgAbelianGroup& g) {
  if (g.torsion().empty()) return 1;
  return g.torsion().back();
}

Int lcm(Int a, Int b) { return a / std::gcd(a, b) * b; }

FamilySearch search_families(const OrbitCloseProblem& p, Int budget,
                             const std::function<bool(const SubgroupFamily&)>& accept) {
  check_problem(p);
  if (budget < 1) throw InputError("budget must be positive");
  Prepared pr = prepare(p);
  const size_t n = p.kernels.size();
  std::vector<Subgroup> torsion;
  std::vector<Int> tsize;
  for (size_t i = 0; i < n; ++i) {
    const auto& dg = pr.q[i].group();
    std::vector<GroupElement> gens;
    Int t = 1;
    for (size_t j = 0; j < dg.torsion().size(); ++j) {
      gens.push_back(dg.generator(dg.free_rank() + static_cast<int>(j)));
      t *= dg.torsion()[j];
    }
    torsion.push_back(Subgroup::generated(dg, gens));
    tsize.push_back(t);
  }
  std::map<std::pair<size_t, Int>, std::vector<Subgroup>> cache;
  auto torsion_free = [&](size_t i, Int free_index) -> const std::vector<Subgroup>& {
    auto key = std::make_pair(i, free_index);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Subgroup> out;
    for (auto& s : subgroups_of_index(pr.q[i].group(), lattice::checked_mul(free_index, tsize[i]))) {
      if (s.intersect(torsion[i]) == Subgroup::trivial(pr.q[i].group())) out.push_back(s);
    }
    return cache.emplace(key, std::move(out)).first->second;
  };
  FamilySearch res;
  Int largest_n = 0;
  for (Int level = 1; level <= budget; ++level) {
    std::vector<std::pair<Int, SubgroupFamily>> cands;
    std::vector<Int> split(n, 1);
    std::function<void(size_t, Int)> factor = [&](size_t i, Int rest) {
      if (i == n) {
        if (rest != 1) return;
        std::vector<const std::vector<Subgroup>*> lists;
        for (size_t k = 0; k < n; ++k) {
          lists.push_back(&torsion_free(k, split[k]));
          if (lists.back()->empty()) return;
        }
        std::vector<size_t> pick(n, 0);
        while (true) {
          SubgroupFamily fam;
          Int e = 1;
          for (size_t k = 0; k < n; ++k) {
            fam.f.push_back((*lists[k])[pick[k]]);
            e = lcm(e, exponent_of(quotient(pr.q[k].group(), fam.f.back()).group()));
          }
          cands.emplace_back(e, fam);
          size_t k = 0;
          while (k < n && ++pick[k] == lists[k]->size()) pick[k++] = 0;
          if (k == n) break;
        }
        return;
      }
      const bool finite = pr.q[i].group().is_finite();
      for (Int d = 1; d <= rest; ++d) {
        if (rest % d != 0 || (finite && d != 1)) continue;
        split[i] = d;
        factor(i + 1, rest / d);
      }
    };
    factor(0, level);
    std::stable_sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      for (size_t k = 0; k < x.second.f.size(); ++k) {
        if (basis_less(x.second.f[k], y.second.f[k])) return true;
        if (basis_less(y.second.f[k], x.second.f[k])) return false;
      }
      return false;
    });
    for (auto& [e, fam] : cands) {
      ++res.tried;
      largest_n = std::max(largest_n, e);
      if (check_family(p, fam).ok && accept(fam)) {
        res.family = fam;
        res.level = level;
        res.exponent = e;
        return res;
      }
    }
  }
  throw BudgetExhausted("no admissible subgroup family with index product <= " + std::to_string(budget) +
                            "; largest N tried " + std::to_string(largest_n),
                        largest_n);
}

struct Built {
  UStructure b;
  std::vector<Perm> images;
  PointMap anchor_map;
};

Built build_space(const OrbitCloseProblem& p, const SubgroupFamily& fam) {
  Prepared pr = prepare(p);
  const size_t n = p.kernels.size();
  const FgAbelianGroup& g = p.group;
  std::vector<QuotientGroup> qb;
  std::vector<std::vector<GroupElement>> elems;
  std::vector<std::map<GroupElement, int>> pos;
  for (size_t i = 0; i < n; ++i) {
    qb.push_back(quotient(g, preimage(p, pr.q[i], static_cast<int>(i), fam.f[i])));
    elems.push_back(qb.back().group().elements());
    std::map<GroupElement, int> m;
    for (size_t k = 0; k < elems.back().size(); ++k) m[elems.back()[k]] = static_cast<int>(k);
    pos.push_back(m);
  }
  std::vector<PointId> names;
  std::vector<std::vector<PointId>> local(n);
  std::set<PointId> used;
  for (size_t i = 0; i < n; ++i) {
    local[i].assign(elems[i].size(), "");
    for (size_t k = 0; k < p.anchors[i].size(); ++k) {
      local[i][pos[i].at(qb[i].project(p.anchors[i][k]))] = p.anchor_structure.name(p.anchor_points[i][k]);
    }
    if (!p.point_names.empty()) {
      std::vector<PointId> best(elems[i].size(), "");
      for (const auto& [coords, name] : p.point_names[i]) {
        const int at = pos[i].at(qb[i].project(pr.q[i].section(pr.q[i].group().element(coords))));
        if (best[at].empty() || point_less(name, best[at])) best[at] = name;
      }
      for (size_t k = 0; k < elems[i].size(); ++k) {
        if (local[i][k].empty()) local[i][k] = best[k];
      }
    }
    const PointId origin = p.anchor_structure.name(p.anchor_points[i][0]);
    const GroupElement q0 = qb[i].project(p.anchors[i][0]);
    for (size_t k = 0; k < elems[i].size(); ++k) {
      if (local[i][k].empty()) local[i][k] = origin + "@" + coords_str(qb[i].group().sub(elems[i][k], q0).coords);
    }
  }
  for (size_t i = 0; i < n; ++i) {
    for (auto& nm : local[i]) {
      while (used.count(nm)) nm += "'";
      used.insert(nm);
      names.push_back(nm);
    }
  }
  Built out;
  out.b = UStructure(p.anchor_structure.signature(), names);
  const int nb = out.b.size();
  std::vector<std::vector<int>> idx(n);
  for (size_t i = 0; i < n; ++i) {
    for (const auto& nm : local[i]) idx[i].push_back(out.b.index_of(nm));
  }
  out.images.assign(g.dim(), Perm(nb));
  for (int j = 0; j < g.dim(); ++j) {
    for (size_t i = 0; i < n; ++i) {
      const GroupElement step = qb[i].project(g.generator(j));
      for (size_t k = 0; k < elems[i].size(); ++k) {
        out.images[j][idx[i][k]] = idx[i][pos[i].at(qb[i].group().add(elems[i][k], step))];
      }
    }
  }
  out.anchor_map.assign(p.anchor_structure.size(), -1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < p.anchors[i].size(); ++k) {
      out.anchor_map[p.anchor_points[i][k]] = idx[i][pos[i].at(qb[i].project(p.anchors[i][k]))];
    }
  }
  const UStructure& a = p.anchor_structure;
  for (size_t r = 0; r < a.signature().relations.size(); ++r) {
    std::set<Tuple> seeds;
    for (const auto& t : a.tuples(static_cast<int>(r))) {
      Tuple u;
      for (int x : t) u.push_back(out.anchor_map[x]);
      seeds.insert(u);
    }
    for (const auto& t : tuple_orbit_closure(seeds, out.images)) out.b.add_tuple(static_cast<int>(r), t);
  }
  for (size_t s = 0; s < a.signature().labels.size(); ++s) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& cls : a.class_lists(static_cast<int>(s))) {
      for (size_t k = 1; k < cls.size(); ++k) pairs.emplace_back(out.anchor_map[cls[0]], out.anchor_map[cls[k]]);
    }
    out.b.set_partition(static_cast<int>(s), invariant_equivalence(nb, out.images, pairs));
  }
  return out;
}

bool restricts_to_anchor(const OrbitCloseProblem& p, const Built& built) {
  std::vector<int> sub(built.anchor_map.begin(), built.anchor_map.end());
  return built.b.induced(sub) == p.anchor_structure;
}

}  // namespace

FamilySearch find_subgroup_family(const OrbitCloseProblem& p, Int budget) {
  return search_families(p, budget, [](const SubgroupFamily&) { return true; });
}

CloseResult close_problem(const OrbitCloseProblem& p, Int budget) {
  std::optional<Built> built;
  FamilySearch fs = search_families(p, budget, [&](const SubgroupFamily& fam) {
    Built b = build_space(p, fam);
    if (!restricts_to_anchor(p, b) || !validate(b.b).empty()) return false;
    built = std::move(b);
    return true;
  });
  CloseResult res;
  res.b = built->b;
  res.beta = Action(p.group, built->b, built->images);
  if (auto v = validate_action(res.beta); !v.empty()) throw ViolationError("closed action is invalid: " + v[0].message);
  res.anchor_map = built->anchor_map;
  res.search = fs;
  return res;
}

LabelReduction reduce_distance_labels(const UStructure& x, const Action& alpha, const std::vector<int>& anchor) {
  LabelReduction out;
  const auto& labels = x.signature().labels;
  std::vector<int> prev_key;
  for (size_t s = 0; s < labels.size(); ++s) {
    std::vector<int> key;
    for (int a : anchor) key.push_back(x.classes(static_cast<int>(s))[a]);
    key = canonical_classes(key);
    if (s == 0 || key != prev_key) {
      out.classes.push_back({});
      std::vector<std::pair<int, int>> pairs;
      for (size_t i = 0; i < anchor.size(); ++i) {
        for (size_t j = i + 1; j < anchor.size(); ++j) {
          if (key[i] == key[j]) pairs.emplace_back(anchor[i], anchor[j]);
        }
      }
      out.relations.push_back(invariant_equivalence(x.size(), alpha.images(), pairs));
    }
    out.classes.back().push_back(static_cast<int>(s));
    prev_key = key;
  }
  return out;
}

OrbitCloseProblem problem_from_action(const Action& alpha, const std::vector<int>& anchor_in) {
  const UStructure& x = alpha.space();
  std::vector<int> anchor = anchor_in;
  std::sort(anchor.begin(), anchor.end());
  anchor.erase(std::unique(anchor.begin(), anchor.end()), anchor.end());
  for (int a : anchor) {
    if (a < 0 || a >= x.size()) throw InputError("anchor point out of range");
  }
  if (auto v = validate_action(alpha); !v.empty()) throw InputError("invalid action: " + v[0].message);
  const FgAbelianGroup& g = alpha.group();
  OrbitCloseProblem p;
  p.group = g;
  p.anchor_structure = x.induced(anchor);
  std::vector<char> is_anchor(x.size(), 0);
  for (int a : anchor) is_anchor[a] = 1;
  for (const auto& orbit : orbits(alpha)) {
    int origin = -1;
    for (int y : orbit) {
      if (is_anchor[y]) {
        origin = y;
        break;
      }
    }
    if (origin < 0) continue;
    // gamma_y with gamma_y . origin = y, by search over generators and inverses.
    std::map<int, GroupElement> reach{{origin, g.zero()}};
    std::vector<int> queue{origin};
    for (size_t h = 0; h < queue.size(); ++h) {
      const int y = queue[h];
      for (int j = 0; j < g.dim(); ++j) {
        for (int sgn : {1, -1}) {
          const Perm& img = alpha.images()[j];
          int z = y;
          if (sgn == 1) {
            z = img[y];
          } else {
            z = static_cast<int>(std::find(img.begin(), img.end(), y) - img.begin());
          }
          if (reach.count(z)) continue;
          reach[z] = g.add(reach.at(y), g.scale(g.generator(j), sgn));
          queue.push_back(z);
        }
      }
    }
    std::vector<int> local(x.size(), -1);
    for (size_t k = 0; k < orbit.size(); ++k) local[orbit[k]] = static_cast<int>(k);
    std::vector<Perm> imgs;
    for (const auto& img : alpha.images()) {
      Perm q(orbit.size());
      for (size_t k = 0; k < orbit.size(); ++k) q[k] = local[img[orbit[k]]];
      imgs.push_back(q);
    }
    Subgroup kernel = kernel_of_permutation_images(g, imgs);
    QuotientGroup q = quotient(g, kernel);
    std::vector<GroupElement> anchors;
    std::vector<int> points;
    std::map<IntVec, PointId> names;
    for (int y : orbit) {
      names[q.project(reach.at(y)).coords] = x.name(y);
      if (is_anchor[y]) {
        anchors.push_back(reach.at(y));
        points.push_back(p.anchor_structure.index_of(x.name(y)));
      }
    }
    p.kernels.push_back(kernel);
    p.anchors.push_back(anchors);
    p.anchor_points.push_back(points);
    p.point_names.push_back(names);
  }
  return p;
}

OrbitCloseResult close_orbits(const Action& alpha, const std::vector<int>& anchor, Int budget) {
  OrbitCloseResult out;
  out.problem = problem_from_action(alpha, anchor);
  const UStructure& x = alpha.space();
  std::vector<int> sorted;
  for (const auto& name : out.problem.anchor_structure.points()) sorted.push_back(x.index_of(name));
  out.labels = reduce_distance_labels(x, alpha, sorted);
  out.close = close_problem(out.problem, budget);
  out.anchor_embedding.assign(x.size(), -1);
  for (int i = 0; i < out.problem.anchor_structure.size(); ++i) {
    out.anchor_embedding[x.index_of(out.problem.anchor_structure.name(i))] = out.close.anchor_map[i];
  }
  for (int a : sorted) {
    for (int j = 0; j < alpha.group().dim(); ++j) {
      const int moved = alpha.images()[j][a];
      if (out.anchor_embedding[moved] < 0) continue;
      if (out.close.beta.images()[j][out.anchor_embedding[a]] != out.anchor_embedding[moved]) {
        throw ViolationError("closed action disagrees with the original on anchor " + x.name(a));
      }
    }
  }
  return out;
}

OrbitCloseResult close_then_extend(const Action& sigma, const std::vector<int>& c, Int budget) {
  std::vector<int> anchor = c;
  for (int x : c) {
    if (x < 0 || x >= sigma.space().size()) throw InputError("point out of range");
    for (const auto& img : sigma.images()) anchor.push_back(img[x]);
  }
  return close_orbits(sigma, anchor, budget);
}

}  // namespace forge
