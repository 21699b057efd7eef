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

#include <gtest/gtest.h>

#include <set>

#include "forge/errors.hpp"
#include "forge/extend.hpp"
#include "forge/instances.hpp"

namespace forge {
namespace {

PointMap by_name(const UStructure& a, const UStructure& b) {
  PointMap m(a.size());
  for (int i = 0; i < a.size(); ++i) m[i] = b.index_of(a.name(i));
  return m;
}

// Restriction identities P^C on B equal P^B and E^C on B equal E^B.
void expect_restricts(const UStructure& b, const ExtensionResult& r) {
  EXPECT_TRUE(is_embedding(b, r.space, r.inclusion));
  EXPECT_TRUE(validate(r.space).empty());
  EXPECT_TRUE(validate_action(r.action).empty());
}

void expect_partition_formula(const ExtensionResult& r, const Action& pi) {
  for (int s = 0; s < static_cast<int>(r.space.signature().labels.size()); ++s) {
    auto cls = coset_formula_classes(r, pi, s);
    std::vector<int> seen(r.space.size(), 0);
    for (const auto& c : cls) {
      for (int x : c) ++seen[x];
    }
    for (int x = 0; x < r.space.size(); ++x) EXPECT_EQ(seen[x], 1) << "label " << s << " point " << x;
    auto got = r.space.class_lists(s);
    EXPECT_EQ(std::set<std::vector<int>>(got.begin(), got.end()), std::set<std::vector<int>>(cls.begin(), cls.end()));
  }
}

TEST(OnePointExtension, TrivialGroup) {
  UStructure b = make_graph(2, {{0, 1}});
  Action pi = Action::trivial(FgAbelianGroup(0, {}), b.induced({0}));
  auto r = one_point_extension(b, pi);
  EXPECT_EQ(r.space, b);
  expect_restricts(b, r);
}

TEST(OnePointExtension, KernelIsEverything) {
  UStructure b = make_graph(2, {{0, 1}}).renamed({"a", "b"});
  Action pi = Action::trivial(FgAbelianGroup(0, {2}), b.induced({b.index_of("a")}));
  auto r = one_point_extension(b, pi);
  EXPECT_EQ(r.space, b);
  EXPECT_EQ(r.action, Action::trivial(FgAbelianGroup(0, {2}), b));
}

TEST(OnePointExtension, SwappedPair) {
  UStructure b = make_graph(3, {{0, 2}}).renamed({"a1", "a2", "b"});
  UStructure a = b.induced({0, 1});
  Action pi(FgAbelianGroup(0, {2}), a, {{1, 0}});
  auto r = one_point_extension(b, pi);
  ASSERT_EQ(r.space.size(), 4);
  const UStructure& c = r.space;
  const int a1 = c.index_of("a1"), a2 = c.index_of("a2"), b0 = c.index_of("b"), b1 = c.index_of("b@1");
  EXPECT_TRUE(c.has_tuple(0, {a1, b0}));
  EXPECT_FALSE(c.has_tuple(0, {a2, b0}));
  EXPECT_TRUE(c.has_tuple(0, {a2, b1}));
  EXPECT_FALSE(c.has_tuple(0, {a1, b1}));
  expect_restricts(b, r);
}

TEST(OnePointExtension, RandomRestrictionIdentities) {
  Rng rng(13);
  const std::vector<FgAbelianGroup> groups = {FgAbelianGroup(0, {2}), FgAbelianGroup(0, {3}), FgAbelianGroup(2, {}),
                                              FgAbelianGroup(1, {2})};
  for (int it = 0; it < 200; ++it) {
    const auto& g = groups[it % groups.size()];
    USignature sig = random_signature(rng, 2, 3, 3);
    const int na = uniform_int(rng, 0, 5);
    auto base = random_invariant_extension(rng, UStructure(sig, {}), std::vector<Perm>(g.dim()),
                                           random_group_images(rng, g, na), na, "a", 0.3);
    Action pi(g, base.space, base.images);
    UStructure b = random_extension(rng, base.space, 1, "b", 0.4);
    auto r = one_point_extension(b, pi);
    expect_restricts(b, r);
    EXPECT_EQ(pullback(r.action, base.space, r.cosets->a_in_c), pi);
    expect_partition_formula(r, pi);
  }
}

TEST(ExtendThrough, Examples) {
  FgAbelianGroup z2(0, {2});
  UStructure a = make_graph(2, {{0, 1}});
  Action pi(z2, a, {{1, 0}});
  auto same = extend_action_through(a, pi);
  EXPECT_EQ(same.space, a);

  Rng rng(3);
  UStructure b = random_structure(rng, random_signature(rng, 2, 2, 2), 4, 0.4);
  Action empty = Action::trivial(z2, UStructure(b.signature(), {}));
  auto r = extend_action_through(b, empty);
  expect_restricts(b, r);

  FgAbelianGroup z4(0, {4});
  UStructure fixed(graph_signature(), {"a"});
  UStructure b3 = random_extension(rng, fixed, 2, "x", 0.5);
  auto r3 = extend_action_through(b3, Action::trivial(z4, fixed));
  EXPECT_LE(r3.space.size(), 1 + 2 * 4);
  expect_restricts(b3, r3);
}

TEST(ExtendThrough, RandomInstances) {
  Rng rng(17);
  const std::vector<FgAbelianGroup> groups = {FgAbelianGroup(0, {2}), FgAbelianGroup(0, {3}), FgAbelianGroup(1, {}),
                                              FgAbelianGroup(2, {})};
  for (int it = 0; it < 60; ++it) {
    const auto& g = groups[it % groups.size()];
    USignature sig = random_signature(rng, 2, 2, 2);
    const int na = uniform_int(rng, 0, 3);
    auto base = random_invariant_extension(rng, UStructure(sig, {}), std::vector<Perm>(g.dim()),
                                           random_group_images(rng, g, na), na, "a", 0.3);
    Action pi(g, base.space, base.images);
    UStructure b = random_extension(rng, base.space, uniform_int(rng, 0, 3), "b", 0.4);
    auto r = extend_action_through(b, pi);
    expect_restricts(b, r);
    PointMap a_in_c(base.space.size());
    for (int x = 0; x < base.space.size(); ++x) a_in_c[x] = r.inclusion[b.index_of(base.space.name(x))];
    EXPECT_EQ(pullback(r.action, base.space, a_in_c), pi);
  }
}

void expect_root_invariants(const RootProblem& p, const RootResult& r) {
  EXPECT_TRUE(validate(r.space).empty());
  EXPECT_TRUE(is_automorphism(r.space, r.root));
  EXPECT_EQ(perm::power(r.root, r.n), r.theta_image);
  for (const auto& d : r.delta_action.images()) EXPECT_TRUE(perm::commute(d, r.root));
  const Perm gpi = p.pi.element_image(p.g);
  for (int x = 0; x < p.pi.space().size(); ++x) EXPECT_EQ(r.root[r.copies.psi[x]], r.copies.psi[gpi[x]]);
  EXPECT_TRUE(validate_action(r.gamma_action).empty());
  EXPECT_EQ(pullback(r.gamma_action, p.pi.space(), r.copies.psi), p.pi);
  Action sigma(FgAbelianGroup(static_cast<int>(p.delta.size()), {}), p.b, p.sigma);
  EXPECT_EQ(pullback(r.delta_action, p.b, r.copies.phis[0]), sigma);
}

TEST(RootExtension, GInsideDelta) {
  FgAbelianGroup z(1, {});
  UStructure b = make_graph(3, {{0, 1}, {0, 2}}).renamed({"a", "x", "y"});
  UStructure a = b.induced({0});
  RootProblem p{b, Action::trivial(z, a), {z.element({1})}, z.element({1}), {{0, 2, 1}}, std::nullopt};
  auto r = root_extension(p);
  EXPECT_EQ(r.n, 1);
  EXPECT_EQ(r.space.size(), 3);
  EXPECT_EQ(r.root, (Perm{0, 2, 1}));
  expect_root_invariants(p, r);
}

TEST(RootExtension, SquareRootOfIdentity) {
  FgAbelianGroup z(1, {});
  UStructure b(graph_signature(), {"x"});
  UStructure a(graph_signature(), {});
  RootProblem p{b, Action::trivial(z, a), {}, z.element({1}), {}, Int{2}};
  auto r = root_extension(p);
  EXPECT_TRUE(r.infinite_case);
  EXPECT_EQ(r.space.size(), 2);
  EXPECT_EQ(r.root, (Perm{1, 0}));
  EXPECT_TRUE(perm::is_identity(perm::power(r.root, 2)));
  expect_root_invariants(p, r);
  p.order_override.reset();
  EXPECT_EQ(root_extension(p).space.size(), 1);
}

TEST(RootExtension, EvenSubgroup) {
  FgAbelianGroup z(1, {});
  UStructure b = make_graph(2, {{0, 1}}).renamed({"a", "x"});
  UStructure a = b.induced({0});
  RootProblem p{b, Action::trivial(z, a), {z.element({2})}, z.element({1}), {{0, 1}}, std::nullopt};
  auto r = root_extension(p);
  EXPECT_EQ(r.n, 2);
  ASSERT_EQ(r.space.size(), 3);
  const int x0 = r.space.index_of("x"), x1 = r.space.index_of("x#1");
  EXPECT_EQ(r.root[x0], x1);
  EXPECT_EQ(r.root[x1], x0);
  expect_root_invariants(p, r);
}

TEST(RootExtension, RejectsBrokenPrecondition) {
  FgAbelianGroup z(1, {});
  UStructure b = make_graph(2, {}).renamed({"a", "x"});
  UStructure a = b.induced({0});
  RootProblem p{b, Action::trivial(z, a), {z.element({2})}, z.element({1}), {{1, 0}}, std::nullopt};
  EXPECT_THROW(root_extension(p), PreconditionError);
}

TEST(RootExtension, RandomInstances) {
  Rng rng(23);
  for (int it = 0; it < 120; ++it) {
    USignature sig = random_signature(rng, 2, 2, 2);
    RootProblem p;
    FgAbelianGroup gamma;
    const int kind = it % 3;
    if (kind == 0) {
      // Gamma = Z, Delta = nZ.
      gamma = FgAbelianGroup(1, {});
      const int n = uniform_int(rng, 1, 5);
      p.delta = {gamma.element({n})};
      p.g = gamma.element({1});
    } else if (kind == 1) {
      // Gamma = Z^2, Delta = <e1>, g = e2 with finite order on A.
      gamma = FgAbelianGroup(2, {});
      p.delta = {gamma.element({1, 0})};
      p.g = gamma.element({0, 1});
    } else {
      gamma = FgAbelianGroup(0, {6});
      p.delta = {gamma.element({uniform_int(rng, 2, 3)})};
      p.g = gamma.element({1});
    }
    const int na = uniform_int(rng, 0, 3);
    std::vector<Perm> a_imgs = random_group_images(rng, gamma, na);
    if (kind == 1 && na > 0 && perm::order(a_imgs[1]) > 5) a_imgs[1] = perm::identity(na);
    auto base = random_invariant_extension(rng, UStructure(sig, {}), std::vector<Perm>(gamma.dim()), a_imgs, na, "a",
                                           0.3);
    p.pi = Action(gamma, base.space, base.images);
    std::vector<Perm> on_a;
    for (const auto& d : p.delta) on_a.push_back(p.pi.element_image(d));
    const int m = uniform_int(rng, 0, 6 - na);
    // Delta's images on the new points must respect Delta's relations.
    FgAbelianGroup delta_group = kind == 2 ? FgAbelianGroup(0, {6 / static_cast<int>(p.delta[0].coords[0])})
                                           : FgAbelianGroup(1, {});
    auto ext = random_invariant_extension(rng, base.space, on_a, random_group_images(rng, delta_group, m), m, "c",
                                          0.3);
    p.b = ext.space;
    p.sigma = ext.images;
    auto r = root_extension(p);
    EXPECT_LE(r.n, 6);
    expect_root_invariants(p, r);
  }
}

TEST(WapWitness, Examples) {
  FgAbelianGroup z2(0, {2});
  UStructure a = make_graph(2, {{0, 1}});
  Action pi(z2, a, {{0, 1}});
  auto same = wap_witness(pi, pi, pi);
  EXPECT_EQ(same.amalgam.d, a);
  EXPECT_EQ(same.rho, pi);

  UStructure b = make_graph(3, {{0, 1}}).renamed({"0", "1", "x"});
  auto one = wap_witness(Action::trivial(z2, a), Action::trivial(z2, b), Action::trivial(z2, b));
  EXPECT_EQ(one.amalgam.d.size(), 4);
  EXPECT_EQ(one.rho, Action::trivial(z2, one.amalgam.d));

  UStructure b2 = make_graph(4, {{0, 1}, {2, 0}, {3, 0}}).renamed({"0", "1", "p", "q"});
  Action th(z2, b2, {{0, 1, 3, 2}});
  auto two = wap_witness(pi, th, th);
  EXPECT_EQ(two.amalgam.d.size(), 6);
  EXPECT_TRUE(validate_action(two.rho).empty());
  EXPECT_EQ(pullback(two.rho, b2, two.e_b), th);
  EXPECT_EQ(pullback(two.rho, b2, two.e_c), th);
}

}  // namespace
}  // namespace forge
