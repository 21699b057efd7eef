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

#include "forge/selftest.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "forge/amalgam.hpp"
#include "forge/errors.hpp"
#include "forge/extend.hpp"
#include "forge/instances.hpp"
#include "forge/orbitclose.hpp"
#include "forge/randgraph.hpp"

namespace forge {

namespace {

struct Probe {
  CheckResult& r;
  bool expect(bool ok, const std::string& what) {
    if (!ok && r.witness.empty()) r.witness = what;
    if (!ok) r.passed = false;
    return ok;
  }
  // Runs one instance; exceptions count as failures.
  void instance(int k, const std::function<void()>& body) {
    ++r.instances;
    try {
      body();
    } catch (const std::exception& e) {
      expect(false, "instance " + std::to_string(k) + " threw: " + e.what());
    }
  }
};

std::string inst(int k) { return "instance " + std::to_string(k) + ": "; }

PointMap by_name(const UStructure& a, const UStructure& b) {
  PointMap m(a.size());
  for (int i = 0; i < a.size(); ++i) m[i] = b.index_of(a.name(i));
  return m;
}

bool brute_isomorphic(const UStructure& x, const UStructure& y) {
  if (x.size() != y.size()) return false;
  Perm p = perm::identity(x.size());
  do {
    if (is_embedding(x, y, p)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool equivariant(const Action& pi, const Action& th, const PointMap& g) {
  for (size_t k = 0; k < pi.images().size(); ++k) {
    for (int x = 0; x < pi.space().size(); ++x) {
      if (g[pi.images()[k][x]] != th.images()[k][g[x]]) return false;
    }
  }
  return is_embedding(pi.space(), th.space(), g);
}

bool brute_conjugate(const Action& pi, const Action& th) {
  if (pi.space().size() != th.space().size()) return false;
  Perm g = perm::identity(pi.space().size());
  do {
    if (equivariant(pi, th, g)) return true;
  } while (std::next_permutation(g.begin(), g.end()));
  return false;
}

Action random_action(Rng& rng, const FgAbelianGroup& g, const USignature& sig, int n, const std::string& prefix) {
  auto inv = random_invariant_extension(rng, UStructure(sig, {}), std::vector<Perm>(g.dim()),
                                        random_group_images(rng, g, n), n, prefix, 0.3);
  return Action(g, inv.space, inv.images);
}

Action random_extension_action(Rng& rng, const Action& base, int m, const std::string& prefix) {
  auto ext = random_invariant_extension(rng, base.space(), base.images(), random_group_images(rng, base.group(), m),
                                        m, prefix, 0.3);
  return Action(base.group(), ext.space, ext.images);
}

// 1. Free amalgam soundness.
void check_amalgam(Probe& pr, Rng& rng) {
  for (int it = 0; it < 500; ++it) {
    pr.instance(it, [&] {
      USignature sig = random_signature(rng, 2, 3, 3);
      UStructure a = random_structure(rng, sig, uniform_int(rng, 0, 4), 0.3);
      const int p = uniform_int(rng, 1, 3);
      std::vector<AmalgamPart> parts;
      for (int j = 0; j < p; ++j) {
        UStructure b = random_extension(rng, a, uniform_int(rng, 0, 6 - a.size()), "c", 0.3);
        parts.push_back({b, by_name(a, b)});
      }
      auto res = free_amalgam(a, parts);
      auto v = validate(res.d);
      pr.expect(v.empty(), inst(it) + "amalgam invalid: " + (v.empty() ? "" : v[0].message));
      for (int j = 0; j < p; ++j) {
        pr.expect(is_embedding(parts[j].b, res.d, res.phis[j]), inst(it) + "phi_" + std::to_string(j) + " not an embedding");
        for (int x = 0; x < a.size(); ++x) {
          pr.expect(res.phis[j][parts[j].iota[x]] == res.psi[x], inst(it) + "phi o iota != psi");
        }
      }
    });
  }
}

// 2. Amalgamated action soundness.
void check_amalgamated_action(Probe& pr, Rng& rng) {
  const std::vector<FgAbelianGroup> groups = {FgAbelianGroup(0, {2}), FgAbelianGroup(0, {4}), FgAbelianGroup(1, {}),
                                              FgAbelianGroup(2, {})};
  for (int it = 0; it < 300; ++it) {
    pr.instance(it, [&] {
      const auto& g = groups[it % groups.size()];
      USignature sig = random_signature(rng, 2, 3, 3);
      const int na = uniform_int(rng, 0, 4);
      Action pi = random_action(rng, g, sig, na, "a");
      std::vector<AmalgamPart> parts;
      std::vector<Action> sigmas;
      const int p = uniform_int(rng, 1, 3);
      for (int j = 0; j < p; ++j) {
        sigmas.push_back(random_extension_action(rng, pi, uniform_int(rng, 0, 6 - na), "c"));
        parts.push_back({sigmas.back().space(), by_name(pi.space(), sigmas.back().space())});
      }
      auto res = free_amalgam(pi.space(), parts);
      Action rho = amalgamated_action(pi, sigmas, res);
      pr.expect(validate_action(rho).empty(), inst(it) + "rho invalid");
      pr.expect(pullback(rho, pi.space(), res.psi) == pi, inst(it) + "rho does not restrict to pi on A");
      for (int j = 0; j < p; ++j) {
        pr.expect(pullback(rho, parts[j].b, res.phis[j]) == sigmas[j],
                  inst(it) + "rho does not restrict to sigma_" + std::to_string(j));
      }
    });
  }
}

// 3. One-point extension restriction identities.
void check_one_point(Probe& pr, Rng& rng) {
  const std::vector<FgAbelianGroup> groups = {FgAbelianGroup(0, {2}), FgAbelianGroup(0, {3}), FgAbelianGroup(2, {}),
                                              FgAbelianGroup(1, {2})};
  for (int it = 0; it < 500; ++it) {
    pr.instance(it, [&] {
      const auto& g = groups[it % groups.size()];
      USignature sig = random_signature(rng, 2, 3, 3);
      Action pi = random_action(rng, g, sig, uniform_int(rng, 0, 5), "a");
      UStructure b = random_extension(rng, pi.space(), 1, "b", 0.4);
      auto r = one_point_extension(b, pi);
      pr.expect(is_embedding(b, r.space, r.inclusion), inst(it) + "B is not an induced substructure of C");
      pr.expect(validate(r.space).empty(), inst(it) + "C invalid");
      pr.expect(validate_action(r.action).empty(), inst(it) + "sigma invalid");
      pr.expect(pullback(r.action, pi.space(), r.cosets->a_in_c) == pi, inst(it) + "sigma|A != pi");
      for (int s = 0; s < static_cast<int>(sig.labels.size()); ++s) {
        auto cls = coset_formula_classes(r, pi, s);
        std::vector<int> seen(r.space.size(), 0);
        for (const auto& c : cls) {
          for (int x : c) ++seen[x];
        }
        pr.expect(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }),
                  inst(it) + "coset classes do not partition C at label " + sig.labels[s].str());
        auto got = r.space.class_lists(s);
        pr.expect(std::set<std::vector<int>>(got.begin(), got.end()) == std::set<std::vector<int>>(cls.begin(), cls.end()),
                  inst(it) + "partition differs from the coset formula at label " + sig.labels[s].str());
      }
    });
  }
}

// 4. Root construction.
void check_roots(Probe& pr, Rng& rng) {
  for (int it = 0; it < 200; ++it) {
    pr.instance(it, [&] {
      USignature sig = random_signature(rng, 2, 2, 2);
      RootProblem p;
      FgAbelianGroup gamma;
      const int kind = it % 3;
      FgAbelianGroup delta_group(1, {});
      if (kind == 0) {
        gamma = FgAbelianGroup(1, {});
        p.delta = {gamma.element({uniform_int(rng, 1, 5)})};
        p.g = gamma.element({1});
      } else if (kind == 1) {
        gamma = FgAbelianGroup(2, {});
        p.delta = {gamma.element({1, 0})};
        p.g = gamma.element({0, 1});
      } else {
        gamma = FgAbelianGroup(0, {6});
        const int d = uniform_int(rng, 2, 3);
        p.delta = {gamma.element({d})};
        p.g = gamma.element({1});
        delta_group = FgAbelianGroup(0, {6 / d});
      }
      const int na = uniform_int(rng, 0, 3);
      std::vector<Perm> a_imgs = random_group_images(rng, gamma, na);
      if (kind == 1 && na > 0 && perm::order(a_imgs[1]) > 5) a_imgs[1] = perm::identity(na);
      auto base = random_invariant_extension(rng, UStructure(sig, {}), std::vector<Perm>(gamma.dim()), a_imgs, na,
                                             "a", 0.3);
      p.pi = Action(gamma, base.space, base.images);
      std::vector<Perm> on_a;
      for (const auto& d : p.delta) on_a.push_back(p.pi.element_image(d));
      const int m = uniform_int(rng, 0, 6 - na);
      auto ext = random_invariant_extension(rng, base.space, on_a, random_group_images(rng, delta_group, m), m, "c",
                                            0.3);
      p.b = ext.space;
      p.sigma = ext.images;
      auto r = root_extension(p);
      pr.expect(r.n <= 5, inst(it) + "root order " + std::to_string(r.n) + " above 5");
      pr.expect(validate(r.space).empty(), inst(it) + "D invalid");
      pr.expect(is_automorphism(r.space, r.root), inst(it) + "h is not an automorphism");
      pr.expect(perm::power(r.root, r.n) == r.theta_image, inst(it) + "h^n != theta");
      for (const auto& d : r.delta_action.images()) {
        pr.expect(perm::commute(d, r.root), inst(it) + "h does not commute with Delta");
      }
      const Perm gpi = p.pi.element_image(p.g);
      for (int x = 0; x < p.pi.space().size(); ++x) {
        pr.expect(r.root[r.copies.psi[x]] == r.copies.psi[gpi[x]], inst(it) + "h|A != g^pi");
      }
    });
  }
}

// Anchor agreement for an abstract problem: a + e_j landing on an anchor.
bool problem_agreement(const OrbitCloseProblem& p, const CloseResult& r) {
  for (size_t i = 0; i < p.kernels.size(); ++i) {
    for (size_t a = 0; a < p.anchors[i].size(); ++a) {
      for (int j = 0; j < p.group.dim(); ++j) {
        const GroupElement moved = p.group.add(p.anchors[i][a], p.group.generator(j));
        for (size_t b = 0; b < p.anchors[i].size(); ++b) {
          if (!p.kernels[i].contains(p.group.sub(moved, p.anchors[i][b]))) continue;
          if (r.beta.images()[j][r.anchor_map[p.anchor_points[i][a]]] != r.anchor_map[p.anchor_points[i][b]]) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool restricts(const OrbitCloseProblem& p, const CloseResult& r) {
  std::vector<int> sub(r.anchor_map.begin(), r.anchor_map.end());
  return r.b.induced(sub) == p.anchor_structure;
}

OrbitCloseProblem line_problem(int orbits, const std::vector<Int>& anchors,
                               const std::vector<std::pair<int, int>>& edges) {
  FgAbelianGroup z(1, {});
  OrbitCloseProblem p;
  p.group = z;
  std::vector<PointId> names;
  for (int i = 0; i < orbits; ++i) {
    p.kernels.push_back(Subgroup::trivial(z));
    p.anchors.push_back({});
    p.anchor_points.push_back({});
    for (Int a : anchors) {
      p.anchors.back().push_back(z.element({a}));
      names.push_back("o" + std::to_string(i) + "_" + std::to_string(a));
    }
  }
  p.anchor_structure = UStructure(graph_signature(), names);
  for (int i = 0; i < orbits; ++i) {
    for (Int a : anchors) {
      p.anchor_points[i].push_back(p.anchor_structure.index_of("o" + std::to_string(i) + "_" + std::to_string(a)));
    }
  }
  const int per = static_cast<int>(anchors.size());
  for (auto [x, y] : edges) {
    const int u = p.anchor_points[x / per][x % per], v = p.anchor_points[y / per][y % per];
    p.anchor_structure.add_tuple(0, {u, v});
    p.anchor_structure.add_tuple(0, {v, u});
  }
  return p;
}

Action cycle_action(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  UStructure x = make_graph(n, e);
  Perm q(n);
  for (int i = 0; i < n; ++i) q[x.index_of(std::to_string(i))] = x.index_of(std::to_string((i + 1) % n));
  return Action(FgAbelianGroup(1, {}), x, {q});
}

Action torus_action() {
  auto id = [](int i, int j) { return ((i + 4) % 4) * 4 + (j + 4) % 4; };
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      e.emplace_back(id(i, j), id(i + 1, j));
      e.emplace_back(id(i, j), id(i, j + 1));
    }
  }
  UStructure x = make_graph(16, e);
  Perm s(16), t(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      s[x.index_of(std::to_string(id(i, j)))] = x.index_of(std::to_string(id(i + 1, j)));
      t[x.index_of(std::to_string(id(i, j)))] = x.index_of(std::to_string(id(i, j + 1)));
    }
  }
  return Action(FgAbelianGroup(2, {}), x, {s, t});
}

void expect_closed(Probe& pr, const std::string& tag, const Action& alpha, const std::vector<int>& anchor,
                   const OrbitCloseResult& r) {
  pr.expect(validate(r.close.b).empty(), tag + "B invalid");
  pr.expect(validate_action(r.close.beta).empty(), tag + "beta invalid");
  pr.expect(restricts(r.problem, r.close), tag + "B does not restrict to the anchor");
  std::set<int> in_a(anchor.begin(), anchor.end());
  for (int a : anchor) {
    for (int j = 0; j < alpha.group().dim(); ++j) {
      const int m = alpha.images()[j][a];
      if (!in_a.count(m)) continue;
      pr.expect(r.close.beta.images()[j][r.anchor_embedding[a]] == r.anchor_embedding[m],
                tag + "generator " + std::to_string(j) + " disagrees on anchor " + alpha.space().name(a));
    }
  }
  pr.expect(check_family(r.problem, r.close.search.family).ok, tag + "returned family fails check_family");
}

// 5. Orbit closing battery and oracle agreement.
void check_orbit_closing(Probe& pr, Rng& rng) {
  std::vector<std::pair<std::string, OrbitCloseProblem>> problems = {
      {"Z line edge", line_problem(1, {0, 1}, {{0, 1}})},
      {"Z path of three", line_problem(1, {0, 1, 2}, {{0, 1}, {1, 2}})},
      {"Z diagonal pair", line_problem(2, {0, 1}, {{0, 2}, {1, 3}})},
  };
  {
    FgAbelianGroup z2(2, {});
    OrbitCloseProblem p;
    p.group = z2;
    p.kernels = {Subgroup::trivial(z2)};
    p.anchors = {{z2.element({0, 0}), z2.element({1, 0})}};
    p.anchor_structure = make_graph(2, {{0, 1}});
    p.anchor_points = {{0, 1}};
    problems.emplace_back("Z2 plane edge", p);
  }
  int k = 0;
  for (const auto& [name, p] : problems) {
    pr.instance(k++, [&] {
      auto r = close_problem(p, kDefaultFamilyBudget);
      pr.expect(validate(r.b).empty(), name + ": B invalid");
      pr.expect(validate_action(r.beta).empty(), name + ": beta invalid");
      pr.expect(restricts(p, r), name + ": B does not restrict to the anchor");
      pr.expect(problem_agreement(p, r), name + ": anchor agreement fails");
      pr.expect(check_family(p, r.search.family).ok, name + ": family fails check_family");
    });
  }
  pr.instance(k++, [&] {
    Action alpha = cycle_action(12);
    std::vector<int> anchor{alpha.space().index_of("0"), alpha.space().index_of("1")};
    auto r = close_orbits(alpha, anchor, kDefaultFamilyBudget);
    expect_closed(pr, "Z/12 cycle: ", alpha, anchor, r);
    pr.expect(r.close.b == alpha.space() && r.close.beta == alpha, "Z/12 cycle: B differs from X");
  });
  pr.instance(k++, [&] {
    Action alpha = torus_action();
    std::vector<int> anchor{alpha.space().index_of("0"), alpha.space().index_of("4")};
    auto r = close_orbits(alpha, anchor, kDefaultFamilyBudget);
    expect_closed(pr, "Z2 torus: ", alpha, anchor, r);
    pr.expect(r.close.b.size() == 16, "Z2 torus: B has " + std::to_string(r.close.b.size()) + " points");
  });
  pr.instance(k++, [&] {
    Action sigma = cycle_action(8);
    std::vector<int> c{sigma.space().index_of("3"), sigma.space().index_of("4")};
    auto r = close_then_extend(sigma, c, kDefaultFamilyBudget);
    for (int x : c) {
      pr.expect(r.close.beta.images()[0][r.anchor_embedding[x]] == r.anchor_embedding[sigma.images()[0][x]],
                "close_then_extend: generator disagrees on C");
    }
  });
  for (int it = 0; it < 40; ++it) {
    pr.instance(k++, [&] {
      FgAbelianGroup g = it % 2 ? FgAbelianGroup(1, {}) : FgAbelianGroup(1, {2});
      USignature sig = random_signature(rng, 1, 2, 2);
      const int n = uniform_int(rng, 3, 8);
      Action alpha = random_action(rng, g, sig, n, "x");
      std::vector<int> anchor;
      for (int j = 0; j < uniform_int(rng, 1, 3); ++j) anchor.push_back(uniform_int(rng, 0, n - 1));
      std::sort(anchor.begin(), anchor.end());
      anchor.erase(std::unique(anchor.begin(), anchor.end()), anchor.end());
      auto r = close_orbits(alpha, anchor, kDefaultFamilyBudget);
      expect_closed(pr, "random action " + std::to_string(it) + ": ", alpha, anchor, r);
    });
  }
  // Exact verdicts against the exhaustive oracle on quotients of size <= 60.
  int compared = 0;
  for (int it = 0; compared < 200 && it < 2000; ++it) {
    pr.instance(k++, [&] {
      const int shape = it % 3;
      FgAbelianGroup g = shape == 0 ? FgAbelianGroup(1, {}) : shape == 1 ? FgAbelianGroup(2, {}) : FgAbelianGroup(1, {2});
      OrbitCloseProblem p;
      p.group = g;
      const int orbits = uniform_int(rng, 1, 2);
      std::vector<PointId> names;
      for (int i = 0; i < orbits; ++i) {
        Subgroup kern = Subgroup::trivial(g);
        if (coin(rng, 0.3)) kern = Subgroup::generated(g, {g.scale(g.generator(g.dim() - 1), uniform_int(rng, 2, 4))});
        std::vector<GroupElement> anchors;
        std::vector<int> pts;
        const int na = uniform_int(rng, 1, 3);
        for (int t = 0; t < 20 && static_cast<int>(anchors.size()) < na; ++t) {
          IntVec c(g.dim());
          for (int j = 0; j < g.dim(); ++j) c[j] = uniform_int(rng, 0, 2);
          GroupElement e = g.element(c);
          bool fresh = true;
          for (const auto& a : anchors) fresh = fresh && !kern.contains(g.sub(a, e));
          if (!fresh) continue;
          anchors.push_back(e);
          names.push_back("p" + std::to_string(names.size()));
          pts.push_back(static_cast<int>(names.size()) - 1);
        }
        p.kernels.push_back(kern);
        p.anchors.push_back(anchors);
        p.anchor_points.push_back(pts);
      }
      p.anchor_structure = UStructure(graph_signature(), names);
      for (auto& row : p.anchor_points) {
        for (int& x : row) x = p.anchor_structure.index_of("p" + std::to_string(x));
      }
      SubgroupFamily fam;
      Subgroup m = Subgroup::whole(g);
      for (size_t i = 0; i < p.kernels.size(); ++i) {
        QuotientGroup q = quotient(g, p.kernels[i]);
        auto subs = enumerate_finite_index_subgroups(q.group(), 6);
        fam.f.push_back(subs[uniform_int(rng, 0, static_cast<int>(subs.size()) - 1)]);
        IntMat rows = p.kernels[i].basis();
        for (const auto& gen : fam.f.back().generators()) rows.push_back(q.section(gen).coords);
        m = m.intersect(Subgroup::from_lattice(g, rows));
      }
      auto size = quotient(g, m).group().order();
      if (!size || *size > 60) return;
      ++compared;
      auto fast = check_family(p, fam);
      auto brute = check_family_brute(p, fam, 8);
      pr.expect(fast.ok == brute.ok && fast.condition == brute.condition,
                "oracle disagreement on random problem " + std::to_string(it) + ": " + fast.message + " / " +
                    brute.message);
    });
  }
  pr.expect(compared >= 100, "only " + std::to_string(compared) + " oracle comparisons");
}

// 6. WAP witness.
void check_wap(Probe& pr, Rng& rng) {
  const std::vector<FgAbelianGroup> groups = {FgAbelianGroup(0, {2}), FgAbelianGroup(0, {4}), FgAbelianGroup(1, {}),
                                              FgAbelianGroup(2, {})};
  for (int it = 0; it < 200; ++it) {
    pr.instance(it, [&] {
      const auto& g = groups[it % groups.size()];
      USignature sig = random_signature(rng, 2, 2, 2);
      Action pi = random_action(rng, g, sig, uniform_int(rng, 0, 3), "a");
      Action th = random_extension_action(rng, pi, uniform_int(rng, 0, 3), "b");
      Action tau = random_extension_action(rng, pi, uniform_int(rng, 0, 3), "c");
      auto w = wap_witness(pi, th, tau);
      pr.expect(validate(w.amalgam.d).empty(), inst(it) + "D invalid");
      pr.expect(validate_action(w.rho).empty(), inst(it) + "rho invalid");
      std::vector<int> all_b(th.space().size()), all_c(tau.space().size());
      for (int x = 0; x < th.space().size(); ++x) all_b[x] = x;
      for (int x = 0; x < tau.space().size(); ++x) all_c[x] = x;
      pr.expect(in_basic_nbhd(pullback(w.rho, th.space(), w.e_b), th, all_b), inst(it) + "rho o e_B not in U(theta, B)");
      pr.expect(in_basic_nbhd(pullback(w.rho, tau.space(), w.e_c), tau, all_c), inst(it) + "rho o e_C not in U(tau, C)");
      for (int x = 0; x < pi.space().size(); ++x) {
        pr.expect(w.e_b[th.space().index_of(pi.space().name(x))] == w.e_c[tau.space().index_of(pi.space().name(x))],
                  inst(it) + "e_B and e_C differ on A");
      }
    });
  }
}

// 7. Staged random graph.
void check_staged(Probe& pr, std::uint64_t seed) {
  auto s = staged_s(512, seed);
  ShiftGraph g = shift_graph(s, 256);
  pr.instance(0, [&] {
    for (const auto& r : s.log) {
      if (r.kind != StageRecord::kGap) continue;
      pr.expect(r.hi == 3 * (r.lo - 1), "gap stage at " + std::to_string(r.lo) + " is not [k+1, 3k]");
      for (std::int64_t d = r.lo; d <= std::min<std::int64_t>(r.hi, s.length); ++d) {
        pr.expect(!s.contains(d), "distance " + std::to_string(d) + " inside a gap belongs to S");
      }
    }
  });
  std::vector<int> window;
  for (std::int64_t n = -64; n < 64; ++n) window.push_back(g.vertex(n));
  pr.instance(1, [&] {
    auto cex = check_extension_property(g.graph, 3, window);
    std::string w;
    if (cex) {
      for (int x : cex->adjacent) w += " +" + g.graph.name(x);
      for (int x : cex->non_adjacent) w += " -" + g.graph.name(x);
    }
    pr.expect(!cex, "extension property k=3 fails for" + w);
  });
  pr.instance(2, [&] {
    std::vector<std::int64_t> a;
    int sets = 0;
    std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t lo, std::int64_t hi) {
      ++sets;
      auto n = find_unrelated_translate(g, a);
      bool ok = n > 0;
      for (auto x : a) {
        for (auto y : a) {
          const std::int64_t d = std::llabs(y + n - x);
          ok = ok && d != 0 && !s.contains(d);
        }
      }
      if (!pr.expect(ok, "translate " + std::to_string(n) + " is not unrelated")) return;
      if (a.size() == 6) return;
      for (std::int64_t x = lo; x <= hi; ++x) {
        a.push_back(x);
        rec(x + 1, hi);
        a.pop_back();
      }
    };
    for (std::int64_t m = -64; m < 64; ++m) {
      a = {m};
      rec(m + 1, std::min<std::int64_t>(m + 15, 63));
    }
    pr.r.instances += sets - 1;
  });
}

// 8. Isomorphism and conjugacy against exhaustive search.
void check_back_and_forth(Probe& pr, Rng& rng) {
  const std::vector<FgAbelianGroup> groups = {FgAbelianGroup(1, {}), FgAbelianGroup(0, {2}), FgAbelianGroup(2, {})};
  for (int it = 0; it < 300; ++it) {
    pr.instance(it, [&] {
      USignature sig = random_signature(rng, 2, 3, 2);
      const int n = uniform_int(rng, 1, 6);
      UStructure x = random_structure(rng, sig, n, 0.3);
      UStructure y = random_structure(rng, sig, n, 0.3);
      if (coin(rng, 0.5)) {
        Perm p = random_perm(rng, n);
        std::vector<PointId> names(n);
        for (int i = 0; i < n; ++i) names[i] = x.name(p[i]);
        y = x.renamed(names);
      }
      auto f = find_isomorphism(x, y);
      pr.expect(f.has_value() == brute_isomorphic(x, y), inst(it) + "find_isomorphism disagrees with brute force");
      if (f) pr.expect(is_embedding(x, y, *f), inst(it) + "returned map is not an isomorphism");

      const auto& gr = groups[it % groups.size()];
      USignature asig = random_signature(rng, 1, 2, 2);
      Action pi = random_action(rng, gr, asig, n, "p");
      Action th = pi;
      auto auts = automorphisms_fixing(pi.space(), {});
      if (coin(rng, 0.5) && !auts.empty()) {
        th = conjugate_by(pi, pi.space(), auts[uniform_int(rng, 0, static_cast<int>(auts.size()) - 1)]);
      } else {
        th = random_action(rng, gr, asig, n, "p");
      }
      auto g = are_conjugate(pi, th);
      pr.expect(g.has_value() == brute_conjugate(pi, th), inst(it) + "are_conjugate disagrees with brute force");
      if (g) pr.expect(equivariant(pi, th, *g), inst(it) + "returned map is not an equivariant isomorphism");
    });
  }
}

// 9. Ultrametric duality.
void check_ultrametric(Probe& pr, Rng& rng) {
  for (int it = 0; it < 300; ++it) {
    pr.instance(it, [&] {
      USignature sig = random_signature(rng, 1, 2, 4);
      if (sig.labels.empty()) sig.labels = {Rational(1)};
      UStructure x = random_structure(rng, sig, uniform_int(rng, 1, 12), 0.2);
      if (!pr.expect(validate(x).empty(), inst(it) + "generated structure invalid")) return;
      auto d = as_ultrametric(x);
      for (int i = 0; i < x.size(); ++i) {
        for (int j = 0; j < x.size(); ++j) {
          for (int k = 0; k < x.size(); ++k) {
            if (!(d[i][j] <= std::max(d[i][k], d[k][j]))) {
              pr.expect(false, inst(it) + "ultrametric inequality fails at " + x.name(i) + "," + x.name(j) + "," +
                                   x.name(k));
              return;
            }
          }
        }
      }
      UStructure back = from_ultrametric(x, d);
      for (size_t s = 0; s + 1 < sig.labels.size(); ++s) {
        pr.expect(back.classes(static_cast<int>(s)) == x.classes(static_cast<int>(s)),
                  inst(it) + "round trip changes label " + sig.labels[s].str());
      }
    });
  }
}

// 10. Regular representation conjugacy.
void check_regular(Probe& pr) {
  int k = 0;
  for (Int n = 1; n <= 8; ++n) {
    auto subsets = all_symmetric_subsets(n);
    std::vector<Action> acts;
    for (const auto& s : subsets) acts.push_back(regular_action(s));
    for (size_t i = 0; i < subsets.size(); ++i) {
      for (size_t j = 0; j < subsets.size(); ++j) {
        pr.instance(k++, [&] {
          auto found = equivariant_isomorphisms_brute(acts[i], acts[j]);
          const bool fast = regular_reps_conjugate(subsets[i], subsets[j], subsets[i].group.elements());
          const std::string tag = "Z/" + std::to_string(n) + " subsets " + std::to_string(i) + "," + std::to_string(j);
          pr.expect(fast == !found.empty(), tag + ": decision disagrees with exhaustive search");
          const auto& x = acts[i].space();
          const auto& y = acts[j].space();
          for (const auto& f : found) {
            const Int c = std::stoll(y.name(f[x.index_of("0")]));
            for (Int v = 0; v < n; ++v) {
              pr.expect(y.name(f[x.index_of(std::to_string(v))]) == std::to_string((v + c) % n),
                        tag + ": conjugacy is not a translation");
            }
          }
        });
      }
    }
  }
}

// Every tuple's L_i-orbit lies in the symmetrized relation.
void check_symmetrize(Probe& pr, Rng& rng) {
  for (int it = 0; it < 200; ++it) {
    pr.instance(it, [&] {
      USignature sig = random_signature(rng, 2, 3, 2);
      if (sig.relations.empty()) sig.relations.push_back({"R", 2, {{1, 0}}});
      UStructure x(sig, {"0", "1", "2", "3", "4"});
      for (size_t r = 0; r < sig.relations.size(); ++r) {
        for (int k = 0; k < 4; ++k) {
          Tuple t = random_perm(rng, 5);
          t.resize(sig.relations[r].arity);
          x.add_tuple(static_cast<int>(r), t);
        }
      }
      UStructure y = symmetrize(x);
      for (size_t r = 0; r < sig.relations.size(); ++r) {
        for (const auto& t : x.tuples(static_cast<int>(r))) {
          pr.expect(y.has_tuple(static_cast<int>(r), t), inst(it) + "symmetrize dropped a tuple");
        }
        for (const auto& t : y.tuples(static_cast<int>(r))) {
          for (const auto& u : symmetry_orbit(sig.relations[r], t)) {
            pr.expect(y.has_tuple(static_cast<int>(r), u),
                      inst(it) + "relation " + sig.relations[r].name + " is not closed under its symmetry group");
          }
        }
      }
    });
  }
}

struct Entry {
  CheckInfo info;
  std::vector<std::string> modules;
  std::function<void(Probe&, std::uint64_t)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"1", "amalgam", "free amalgam soundness"}, {"amalgam"},
       [](Probe& p, std::uint64_t s) { Rng r(s + 101); check_amalgam(p, r); }},
      {{"2", "amalgam", "amalgamated action soundness"}, {"amalgam"},
       [](Probe& p, std::uint64_t s) { Rng r(s + 202); check_amalgamated_action(p, r); }},
      {{"3", "extend", "one-point extension restriction identities"}, {"extend"},
       [](Probe& p, std::uint64_t s) { Rng r(s + 303); check_one_point(p, r); }},
      {{"4", "extend", "root construction"}, {"extend"},
       [](Probe& p, std::uint64_t s) { Rng r(s + 404); check_roots(p, r); }},
      {{"5", "orbitclose", "orbit closing and oracle agreement"}, {"orbitclose"},
       [](Probe& p, std::uint64_t s) { Rng r(s + 505); check_orbit_closing(p, r); }},
      {{"6", "extend", "WAP witness"}, {"extend"},
       [](Probe& p, std::uint64_t s) { Rng r(s + 606); check_wap(p, r); }},
      {{"7", "randgraph", "staged random graph"}, {"randgraph"},
       [](Probe& p, std::uint64_t s) { check_staged(p, s); }},
      {{"8", "ustructure", "back-and-forth oracle equivalence"}, {"ustructure", "actions"},
       [](Probe& p, std::uint64_t s) { Rng r(s + 808); check_back_and_forth(p, r); }},
      {{"9", "ustructure", "ultrametric duality"}, {"ustructure"},
       [](Probe& p, std::uint64_t s) { Rng r(s + 909); check_ultrametric(p, r); }},
      {{"10", "randgraph", "regular-representation conjugacy"}, {"randgraph"},
       [](Probe& p, std::uint64_t) { check_regular(p); }},
      {{"symmetrize", "ustructure", "symmetrize L_i-closure"}, {"ustructure"},
       [](Probe& p, std::uint64_t s) { Rng r(s + 1111); check_symmetrize(p, r); }},
  };
  return entries;
}

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FORGE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("FORGE_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

}  // namespace

std::vector<CheckInfo> list_checks() {
  std::vector<CheckInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

CheckResult run_check(const std::string& id, std::uint64_t seed) {
  for (const auto& e : registry()) {
    if (e.info.id != id) continue;
    CheckResult r;
    r.id = e.info.id;
    r.module = e.info.module;
    r.name = e.info.name;
    r.passed = true;
    Probe p{r};
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(p, seed);
    } catch (const std::exception& ex) {
      p.expect(false, std::string("aborted: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw InputError("unknown check '" + id + "'");
}

std::vector<CheckResult> run_checks(const std::string& filter, std::uint64_t seed, int threads) {
  std::vector<std::string> ids;
  for (const auto& e : registry()) {
    const bool hit = filter.empty() || filter == e.info.id ||
                     std::find(e.modules.begin(), e.modules.end(), filter) != e.modules.end();
    if (hit) ids.push_back(e.info.id);
  }
  if (ids.empty()) throw InputError("filter '" + filter + "' matches no check");
  std::vector<CheckResult> out(ids.size());
  const int n = std::min<int>(thread_count(threads), static_cast<int>(ids.size()));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < ids.size(); i = next++) out[i] = run_check(ids[i], seed);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace forge
