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

#include <algorithm>
#include <set>

#include "forge/errors.hpp"
#include "forge/instances.hpp"
#include "forge/ustructure.hpp"

namespace forge {
namespace {

USignature labels_sig(std::vector<Rational> labels) {
  USignature s;
  s.labels = std::move(labels);
  return s;
}

bool has_axiom(const std::vector<Violation>& v, int axiom) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.axiom == axiom; });
}

// Exhaustive isomorphism test.
bool brute_isomorphic(const UStructure& x, const UStructure& y) {
  if (x.size() != y.size()) return false;
  Perm p = perm::identity(x.size());
  do {
    if (is_embedding(x, y, p)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

std::set<Perm> closure(const std::vector<Perm>& gens, int n) {
  std::set<Perm> out{perm::identity(n)};
  std::vector<Perm> stack{perm::identity(n)};
  while (!stack.empty()) {
    Perm p = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      Perm q = perm::compose(g, p);
      if (out.insert(q).second) stack.push_back(q);
    }
  }
  return out;
}

TEST(Validate, SinglePointIsValid) {
  UStructure x(labels_sig({Rational(1)}), {"a"});
  EXPECT_TRUE(validate(x).empty());
}

TEST(Validate, UnseparatedPairBreaksAxiomFive) {
  UStructure x(labels_sig({Rational(1), Rational(2)}), {"a", "b"});
  x.set_partition(0, {0, 0});
  x.set_partition(1, {0, 0});
  auto v = validate(x);
  ASSERT_TRUE(has_axiom(v, 5));
  EXPECT_EQ(v.front().witness.size(), 2u);
}

TEST(Validate, OneSidedEdgeBreaksSymmetry) {
  UStructure x(graph_signature(), {"a", "b"});
  x.add_tuple(0, {0, 1});
  EXPECT_TRUE(has_axiom(validate(x), 1));
}

TEST(Validate, RepeatedEntryAndNesting) {
  UStructure x(graph_signature(), {"a"});
  x.add_tuple(0, {0, 0});
  EXPECT_TRUE(has_axiom(validate(x), 2));
  UStructure y(labels_sig({Rational(1), Rational(2), Rational(3)}), {"a", "b", "c"});
  y.set_partition(1, {0, 0, 1});
  y.set_partition(2, {0, 1, 1});
  EXPECT_TRUE(has_axiom(validate(y), 3));
}

TEST(Symmetrize, ClosesUnderSymmetry) {
  UStructure x(graph_signature(), {"a", "b"});
  x.add_tuple(0, {0, 1});
  UStructure y = symmetrize(x);
  EXPECT_EQ(y.tuples(0), (std::set<Tuple>{{0, 1}, {1, 0}}));
  EXPECT_EQ(symmetrize(y), y);

  USignature sig;
  sig.relations.push_back({"T", 3, {{1, 2, 0}}});
  UStructure t(sig, {"a", "b", "c"});
  t.add_tuple(0, {0, 1, 2});
  EXPECT_EQ(symmetrize(t).tuples(0), (std::set<Tuple>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
}

TEST(Symmetrize, NeverLeavesSymmetryViolations) {
  Rng rng(7);
  for (int it = 0; it < 100; ++it) {
    USignature sig = random_signature(rng, 2, 3, 2);
    UStructure x(sig, {"0", "1", "2", "3", "4"});
    for (size_t r = 0; r < sig.relations.size(); ++r) {
      for (int k = 0; k < 4; ++k) {
        Tuple t = random_perm(rng, 5);
        t.resize(sig.relations[r].arity);
        x.add_tuple(static_cast<int>(r), t);
      }
    }
    UStructure y = symmetrize(x);
    EXPECT_FALSE(has_axiom(validate(y), 1));
    for (const auto& g : automorphisms_fixing(x, {})) EXPECT_TRUE(is_automorphism(y, g));
    EXPECT_EQ(symmetrize(y), y);
  }
}

TEST(PartialIso, Examples) {
  UStructure one(graph_signature(), {"a"});
  EXPECT_EQ(extend_partial_iso(one, one, {-1}, 0).size(), 1u);

  UStructure edge = make_graph(2, {{0, 1}});
  UStructure empty2 = make_graph(2, {});
  EXPECT_TRUE(extend_partial_iso(edge, empty2, {0, -1}, 1).empty());

  UStructure path = make_graph(3, {{0, 1}, {1, 2}});
  UStructure tri = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  auto ext = extend_partial_iso(path, tri, {0, -1, -1}, 1);
  ASSERT_EQ(ext.size(), 2u);
  EXPECT_EQ(ext[0][1], 1);
  EXPECT_EQ(ext[1][1], 2);
}

TEST(Isomorphism, Examples) {
  UStructure tri = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  auto f = find_isomorphism(tri, tri);
  ASSERT_TRUE(f.has_value());
  EXPECT_TRUE(is_embedding(tri, tri, *f));
  UStructure path = make_graph(3, {{0, 1}, {1, 2}});
  EXPECT_FALSE(find_isomorphism(path, tri).has_value());
}

TEST(Isomorphism, AgreesWithExhaustiveSearch) {
  Rng rng(11);
  for (int it = 0; it < 150; ++it) {
    USignature sig = random_signature(rng, 2, 3, 2);
    const int n = uniform_int(rng, 1, 6);
    UStructure x = random_structure(rng, sig, n, 0.3);
    // Half the time y is a relabelled copy of x.
    UStructure y = random_structure(rng, sig, n, 0.3);
    if (coin(rng, 0.5)) {
      Perm p = random_perm(rng, n);
      std::vector<PointId> names(n);
      for (int i = 0; i < n; ++i) names[i] = x.name(p[i]);
      y = x.renamed(names);
    }
    auto f = find_isomorphism(x, y);
    EXPECT_EQ(f.has_value(), brute_isomorphic(x, y));
    if (f) EXPECT_TRUE(is_embedding(x, y, *f));
  }
}

TEST(Automorphisms, Examples) {
  EXPECT_EQ(closure(automorphisms_fixing(make_graph(2, {}), {}), 2).size(), 2u);
  EXPECT_EQ(closure(automorphisms_fixing(make_graph(2, {{0, 1}}), {0}), 2).size(), 1u);
  UStructure c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_EQ(closure(automorphisms_fixing(c4, {}), 4).size(), 8u);
}

TEST(Automorphisms, GenerateFullStabilizer) {
  Rng rng(3);
  for (int it = 0; it < 60; ++it) {
    USignature sig = random_signature(rng, 2, 2, 2);
    const int n = uniform_int(rng, 1, 7);
    UStructure x = random_structure(rng, sig, n, 0.3);
    std::vector<int> fixed;
    for (int i = 0; i < n; ++i) {
      if (coin(rng, 0.25)) fixed.push_back(i);
    }
    auto gens = automorphisms_fixing(x, fixed);
    std::set<Perm> brute;
    Perm p = perm::identity(n);
    do {
      bool fixes = std::all_of(fixed.begin(), fixed.end(), [&](int a) { return p[a] == a; });
      if (fixes && is_automorphism(x, p)) brute.insert(p);
    } while (std::next_permutation(p.begin(), p.end()));
    EXPECT_EQ(closure(gens, n), brute);
  }
}

UStructure paley13() {
  std::set<int> squares;
  for (int i = 1; i < 13; ++i) squares.insert(i * i % 13);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 13; ++i) {
    for (int j = i + 1; j < 13; ++j) {
      if (squares.count((j - i) % 13)) edges.emplace_back(i, j);
    }
  }
  return make_graph(13, edges);
}

TEST(ExtensionProperty, Examples) {
  std::vector<std::pair<int, int>> k5;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) k5.emplace_back(i, j);
  }
  auto ce = check_extension_property(make_graph(5, k5), 1, {0, 1, 2, 3, 4});
  ASSERT_TRUE(ce.has_value());
  EXPECT_TRUE(ce->adjacent.empty());
  EXPECT_EQ(ce->non_adjacent.size(), 1u);

  std::vector<int> all13(13);
  for (int i = 0; i < 13; ++i) all13[i] = i;
  EXPECT_FALSE(check_extension_property(paley13(), 2, all13).has_value());

  auto ce3 = check_extension_property(make_graph(3, {}), 1, {0, 1, 2});
  ASSERT_TRUE(ce3.has_value());
  EXPECT_EQ(ce3->adjacent.size(), 1u);
}

TEST(Saturate, Examples) {
  UStructure one(graph_signature(), {"a"});
  EXPECT_GE(saturate(one, 1, 100).size(), 3);
  UStructure edge = make_graph(2, {{0, 1}});
  UStructure y = saturate(edge, 2, 100);
  std::set<std::pair<bool, bool>> patterns;
  for (int z = 0; z < y.size(); ++z) {
    if (y.name(z) == "0" || y.name(z) == "1") continue;
    patterns.emplace(y.has_tuple(0, {y.index_of("0"), z}), y.has_tuple(0, {y.index_of("1"), z}));
  }
  EXPECT_EQ(patterns.size(), 4u);
  EXPECT_EQ(saturate(edge, 0, 2), edge);
  EXPECT_THROW(saturate(edge, 2, 3), BudgetExhausted);
}

TEST(Saturate, RealizesEveryTypeOverSmallSubsets) {
  Rng rng(5);
  for (int it = 0; it < 20; ++it) {
    USignature sig = random_signature(rng, 1, 2, 2);
    UStructure x = random_structure(rng, sig, uniform_int(rng, 1, 3), 0.4);
    UStructure y = saturate(x, 1, 400);
    EXPECT_TRUE(validate(y).empty());
    std::vector<int> xi;
    for (const auto& p : x.points()) xi.push_back(y.index_of(p));
    EXPECT_EQ(y.induced(xi), x);
    // Every embedding of a one-point substructure of x into x extends to
    // each of its one-point types inside y.
    for (int a = 0; a < x.size(); ++a) {
      for (int b = 0; b < x.size(); ++b) {
        UStructure sa = x.induced({a});
        if (!(x.induced({b}).renamed(sa.points()) == sa)) continue;
        for (const auto& type : one_point_types(sa, "\x02")) {
          bool found = false;
          for (int z = 0; z < y.size() && !found; ++z) {
            if (z == y.index_of(x.name(b))) continue;
            PointMap m(type.size());
            m[type.index_of(x.name(a))] = y.index_of(x.name(b));
            m[type.index_of("\x02")] = z;
            found = is_embedding(type, y, m);
          }
          EXPECT_TRUE(found);
        }
      }
    }
  }
}

TEST(Ultrametric, Examples) {
  UStructure one(labels_sig({Rational(1)}), {"a"});
  auto d1 = as_ultrametric(one);
  ASSERT_EQ(d1.size(), 1u);
  EXPECT_EQ(d1[0][0], Rational(0));

  UStructure two(labels_sig({Rational(1), Rational(2)}), {"x", "y"});
  two.set_partition(1, {0, 0});
  EXPECT_EQ(as_ultrametric(two)[0][1], Rational(1));

  UStructure three(labels_sig({Rational(1), Rational(2), Rational(3)}), {"a", "b", "c"});
  three.set_partition(1, {0, 0, 1});
  three.set_partition(2, {0, 0, 0});
  auto d = as_ultrametric(three);
  EXPECT_EQ(d[0][1], Rational(1));
  EXPECT_EQ(d[0][2], Rational(2));
  EXPECT_EQ(d[1][2], Rational(2));

  EXPECT_THROW(as_ultrametric(UStructure(graph_signature(), {"a"})), PreconditionError);
}

TEST(Ultrametric, InequalityAndRoundTrip) {
  Rng rng(9);
  for (int it = 0; it < 100; ++it) {
    USignature sig = random_signature(rng, 1, 2, 4);
    if (sig.labels.empty()) sig.labels = {Rational(1)};
    UStructure x = random_structure(rng, sig, uniform_int(rng, 1, 12), 0.2);
    ASSERT_TRUE(validate(x).empty());
    auto d = as_ultrametric(x);
    for (int i = 0; i < x.size(); ++i) {
      for (int j = 0; j < x.size(); ++j) {
        EXPECT_EQ(d[i][j], d[j][i]);
        for (int k = 0; k < x.size(); ++k) EXPECT_LE(d[i][j], std::max(d[i][k], d[k][j]));
      }
    }
    UStructure back = from_ultrametric(x, d);
    for (size_t s = 0; s + 1 < sig.labels.size(); ++s) {
      EXPECT_EQ(back.classes(static_cast<int>(s)), x.classes(static_cast<int>(s)));
    }
  }
}

TEST(PointOrder, IntegersFirst) {
  EXPECT_TRUE(point_less("2", "10"));
  EXPECT_TRUE(point_less("-3", "2"));
  EXPECT_TRUE(point_less("10", "a"));
  EXPECT_TRUE(point_less("a", "b"));
  EXPECT_THROW(UStructure(graph_signature(), {"a", "a"}), InputError);
}

}  // namespace
}  // namespace forge
