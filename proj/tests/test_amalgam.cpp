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

#include "forge/amalgam.hpp"
#include "forge/errors.hpp"
#include "forge/instances.hpp"

namespace forge {
namespace {

PointMap by_name(const UStructure& a, const UStructure& b) {
  PointMap m(a.size());
  for (int i = 0; i < a.size(); ++i) m[i] = b.index_of(a.name(i));
  return m;
}

TEST(FreeAmalgam, PathOverPoint) {
  UStructure a(graph_signature(), {"a"});
  UStructure b1(graph_signature(), {"a", "x"});
  b1.add_tuple(0, {0, 1});
  b1.add_tuple(0, {1, 0});
  auto res = free_amalgam(a, {{b1, by_name(a, b1)}, {b1, by_name(a, b1)}});
  const UStructure& d = res.d;
  ASSERT_EQ(d.size(), 3);
  const int ca = d.index_of("a"), x0 = d.index_of("x#0"), x1 = d.index_of("x#1");
  EXPECT_TRUE(d.has_tuple(0, {ca, x0}));
  EXPECT_TRUE(d.has_tuple(0, {ca, x1}));
  EXPECT_FALSE(d.has_tuple(0, {x0, x1}));
  EXPECT_TRUE(validate(d).empty());
}

TEST(FreeAmalgam, SinglePartIsIsomorphic) {
  Rng rng(2);
  USignature sig = random_signature(rng, 2, 3, 3);
  UStructure a = random_structure(rng, sig, 2, 0.4);
  UStructure b = random_extension(rng, a, 3, "n", 0.4);
  auto res = free_amalgam(a, {{b, by_name(a, b)}});
  EXPECT_TRUE(is_embedding(b, res.d, res.phis[0]));
  EXPECT_EQ(res.d.size(), b.size());
}

TEST(FreeAmalgam, EmptyBaseSeparatesCrossPairsAtTop) {
  USignature sig;
  sig.labels = {Rational(1), Rational(2)};
  UStructure b(sig, {"u", "v"});
  auto res = free_amalgam(UStructure(sig, {}), {{b, {}}, {b, {}}});
  EXPECT_TRUE(validate(res.d).empty());
  EXPECT_EQ(res.cross_label, 1);
  auto d = as_ultrametric(res.d);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) EXPECT_EQ(d[i][j], Rational(2));
    }
  }
}

TEST(FreeAmalgam, EmptyBaseJoinsAboveDiameter) {
  USignature sig;
  sig.labels = {Rational(1), Rational(2), Rational(3)};
  UStructure b(sig, {"u", "v"});
  b.set_partition(1, {0, 0});
  b.set_partition(2, {0, 0});
  auto res = free_amalgam(UStructure(sig, {}), {{b, {}}, {b, {}}});
  ASSERT_TRUE(validate(res.d).empty());
  EXPECT_EQ(res.cross_label, 0);
  auto d = as_ultrametric(res.d);
  EXPECT_EQ(d[res.d.index_of("u#0")][res.d.index_of("u#1")], Rational(1));
}

TEST(FreeAmalgam, RejectsNonEmbedding) {
  UStructure a = make_graph(2, {{0, 1}});
  UStructure b = make_graph(2, {});
  EXPECT_THROW(free_amalgam(a, {{b, {0, 1}}}), InputError);
  EXPECT_THROW(free_amalgam(a, {}), InputError);
}

TEST(FreeAmalgam, RandomInstancesAreSound) {
  Rng rng(1);
  for (int it = 0; it < 300; ++it) {
    USignature sig = random_signature(rng, 2, 3, 3);
    UStructure a = random_structure(rng, sig, uniform_int(rng, 0, 4), 0.3);
    const int p = uniform_int(rng, 1, 3);
    std::vector<AmalgamPart> parts;
    for (int j = 0; j < p; ++j) {
      UStructure b = random_extension(rng, a, uniform_int(rng, 0, 6 - a.size()), "c", 0.3);
      parts.push_back({b, by_name(a, b)});
    }
    auto res = free_amalgam(a, parts);
    ASSERT_TRUE(validate(res.d).empty());
    EXPECT_TRUE(is_embedding(a, res.d, res.psi));
    for (int j = 0; j < p; ++j) {
      EXPECT_TRUE(is_embedding(parts[j].b, res.d, res.phis[j]));
      for (int x = 0; x < a.size(); ++x) EXPECT_EQ(res.phis[j][parts[j].iota[x]], res.psi[x]);
    }
    // Reversing the parts gives an isomorphic amalgam.
    std::vector<AmalgamPart> rev(parts.rbegin(), parts.rend());
    EXPECT_TRUE(find_isomorphism(res.d, free_amalgam(a, rev).d).has_value());
  }
}

TEST(AmalgamatedAction, Examples) {
  FgAbelianGroup z2(0, {2});
  UStructure a(graph_signature(), {"a"});
  UStructure b = make_graph(3, {{0, 1}, {0, 2}}).renamed({"a", "x", "y"});
  Action pi = Action::trivial(z2, a);
  auto res = free_amalgam(a, {{b, by_name(a, b)}, {b, by_name(a, b)}});
  Action triv = amalgamated_action(pi, {Action::trivial(z2, b), Action::trivial(z2, b)}, res);
  EXPECT_EQ(triv, Action::trivial(z2, res.d));

  Action swap(z2, b, {{0, 2, 1}});
  Action rho = amalgamated_action(pi, {swap, Action::trivial(z2, b)}, res);
  EXPECT_TRUE(validate_action(rho).empty());
  EXPECT_EQ(orbits(rho).size(), 4u);

  Action moves_a(z2, make_graph(2, {}).renamed({"a", "x"}), {{1, 0}});
  UStructure b2 = moves_a.space();
  auto res2 = free_amalgam(a, {{b2, by_name(a, b2)}});
  EXPECT_THROW(amalgamated_action(pi, {moves_a}, res2), PreconditionError);
}

TEST(AmalgamatedAction, RandomInstancesAreSound) {
  Rng rng(8);
  const std::vector<FgAbelianGroup> groups = {FgAbelianGroup(0, {2}), FgAbelianGroup(0, {4}),
                                              FgAbelianGroup(1, {}), FgAbelianGroup(2, {})};
  for (int it = 0; it < 200; ++it) {
    const auto& g = groups[it % groups.size()];
    USignature sig = random_signature(rng, 2, 3, 3);
    const int na = uniform_int(rng, 0, 4);
    auto base = random_invariant_extension(rng, UStructure(sig, {}), std::vector<Perm>(g.dim()),
                                           random_group_images(rng, g, na), na, "a", 0.3);
    Action pi(g, base.space, base.images);
    std::vector<AmalgamPart> parts;
    std::vector<Action> sigmas;
    for (int j = 0; j < uniform_int(rng, 1, 3); ++j) {
      const int m = uniform_int(rng, 0, 6 - na);
      auto ext = random_invariant_extension(rng, base.space, base.images, random_group_images(rng, g, m), m, "c",
                                            0.3);
      parts.push_back({ext.space, by_name(base.space, ext.space)});
      sigmas.emplace_back(g, ext.space, ext.images);
      ASSERT_TRUE(validate_action(sigmas.back()).empty());
    }
    auto res = free_amalgam(base.space, parts);
    Action rho = amalgamated_action(pi, sigmas, res);
    EXPECT_TRUE(validate_action(rho).empty());
    EXPECT_EQ(pullback(rho, base.space, res.psi), pi);
    for (size_t j = 0; j < parts.size(); ++j) EXPECT_EQ(pullback(rho, parts[j].b, res.phis[j]), sigmas[j]);
  }
}

}  // namespace
}  // namespace forge
