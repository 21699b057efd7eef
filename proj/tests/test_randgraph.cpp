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

#include "forge/errors.hpp"
#include "forge/randgraph.hpp"

namespace forge {
namespace {

std::vector<GroupElement> interval(const FgAbelianGroup& g, Int lo, Int hi) {
  std::vector<GroupElement> w;
  for (Int i = lo; i <= hi; ++i) w.push_back(g.element({i}));
  return w;
}

int edge_count(const UStructure& g) { return static_cast<int>(g.tuples(0).size()) / 2; }

TEST(RegularGraph, EmptySubset) {
  FgAbelianGroup z(1, {});
  auto s = make_symmetric_subset(z, {});
  EXPECT_EQ(edge_count(regular_graph(s, interval(z, 0, 4))), 0);
}

TEST(RegularGraph, PathOnZ) {
  FgAbelianGroup z(1, {});
  auto s = make_symmetric_subset(z, {z.element({1}), z.element({-1})});
  auto g = regular_graph(s, interval(z, 0, 4));
  EXPECT_EQ(edge_count(g), 4);
  EXPECT_TRUE(g.has_tuple(0, {g.index_of("2"), g.index_of("3")}));
  EXPECT_FALSE(g.has_tuple(0, {g.index_of("0"), g.index_of("2")}));
}

TEST(RegularGraph, CirculantIsLeftInvariant) {
  FgAbelianGroup c(0, {8});
  auto s = make_symmetric_subset(c, {c.element({1}), c.element({7}), c.element({4})});
  auto a = regular_action(s);
  const auto& g = a.space();
  for (int x = 0; x < 8; ++x) {
    int deg = 0;
    for (int y = 0; y < 8; ++y) deg += g.has_tuple(0, {x, y});
    EXPECT_EQ(deg, 3);
  }
  for (const auto& t : c.elements()) EXPECT_TRUE(is_automorphism(g, a.element_image(t)));
}

TEST(RegularGraph, RejectsAsymmetric) {
  FgAbelianGroup c(0, {8});
  EXPECT_THROW(make_symmetric_subset(c, {c.element({1})}), InputError);
  EXPECT_THROW(make_symmetric_subset(c, {c.element({0})}), InputError);
}

TEST(RegularConjugacy, Examples) {
  FgAbelianGroup c(0, {6});
  auto s1 = make_symmetric_subset(c, {c.element({1}), c.element({5})});
  auto s2 = make_symmetric_subset(c, {c.element({2}), c.element({4})});
  EXPECT_TRUE(regular_reps_conjugate(s1, s1, c.elements()));
  EXPECT_FALSE(regular_reps_conjugate(s1, s2, c.elements()));
  EXPECT_FALSE(regular_reps_conjugate(s2, s1, c.elements()));
  EXPECT_TRUE(equivariant_isomorphisms_brute(regular_action(s1), regular_action(s2)).empty());
}

TEST(RegularConjugacy, BruteConjugaciesAreTranslations) {
  for (Int n = 2; n <= 7; ++n) {
    auto subsets = all_symmetric_subsets(n);
    for (const auto& s1 : subsets) {
      const Action a1 = regular_action(s1);
      for (const auto& s2 : subsets) {
        const Action a2 = regular_action(s2);
        auto found = equivariant_isomorphisms_brute(a1, a2);
        EXPECT_EQ(!found.empty(), regular_reps_conjugate(s1, s2, s1.group.elements()));
        for (const auto& f : found) {
          // f(x) = x + c for c = f(0).
          const auto& sp1 = a1.space();
          const auto& sp2 = a2.space();
          const Int c = std::stoll(sp2.name(f[sp1.index_of("0")]));
          for (Int x = 0; x < n; ++x) {
            EXPECT_EQ(sp2.name(f[sp1.index_of(std::to_string(x))]), std::to_string((x + c) % n));
          }
        }
      }
    }
  }
}

TEST(StagedS, SmallLengthIsInitialBlock) {
  auto s = staged_s(3, 7);
  ASSERT_GE(s.log.size(), 1u);
  EXPECT_EQ(s.log[0].kind, StageRecord::kInitial);
  EXPECT_EQ(s.log[0].lo, 1);
  EXPECT_EQ(s.log[0].hi, 1);
  EXPECT_FALSE(s.contains(2));
  EXPECT_FALSE(s.contains(3));
}

TEST(StagedS, GapsAreExact) {
  for (std::uint64_t seed : {0u, 1u, 2u, 99u}) {
    auto s = staged_s(512, seed);
    std::int64_t covered = 0;
    for (const auto& r : s.log) {
      EXPECT_EQ(r.lo, covered + 1);
      covered = r.hi;
      if (r.kind == StageRecord::kGap) {
        EXPECT_EQ(r.hi, 3 * (r.lo - 1));
        for (std::int64_t d = r.lo; d <= std::min<std::int64_t>(r.hi, 512); ++d) EXPECT_FALSE(s.contains(d));
      } else {
        for (size_t i = 0; i < r.pattern.size(); ++i) {
          const std::int64_t d = r.lo + static_cast<std::int64_t>(i);
          if (d <= 512) EXPECT_EQ(s.contains(d), r.pattern[i]);
        }
      }
    }
    EXPECT_GE(covered, 512);
  }
}

TEST(StagedS, PatternScheduleOrder) {
  EXPECT_EQ(schedule_pattern(0), (std::vector<bool>{false}));
  EXPECT_EQ(schedule_pattern(1), (std::vector<bool>{true}));
  EXPECT_EQ(schedule_pattern(2), (std::vector<bool>{false, false}));
  EXPECT_EQ(schedule_pattern(5), (std::vector<bool>{true, true}));
  EXPECT_EQ(schedule_pattern(6), (std::vector<bool>{false, false, false}));
}

TEST(StagedS, Deterministic) {
  EXPECT_EQ(staged_s(512, 3).bits, staged_s(512, 3).bits);
  EXPECT_NE(staged_s(512, 3).bits, staged_s(512, 4).bits);
}

TEST(ShiftGraph, EdgesMatchDifferences) {
  auto s = staged_s(300, 1);
  auto g = shift_graph(s, 60);
  for (std::int64_t n = -60; n <= 60; ++n) {
    for (std::int64_t m = -60; m <= 60; ++m) {
      const std::int64_t d = n > m ? n - m : m - n;
      EXPECT_EQ(g.graph.has_tuple(0, {g.vertex(n), g.vertex(m)}), s.contains(d));
    }
  }
}

TEST(ShiftGraph, ShiftPreservesInteriorEdges) {
  auto s = staged_s(512, 0);
  auto g = shift_graph(s, 256);
  for (std::int64_t n = g.valid_lo; n <= g.valid_hi; ++n) {
    for (std::int64_t m = g.valid_lo; m <= g.valid_hi; ++m) {
      const int x = g.vertex(n), y = g.vertex(m);
      ASSERT_EQ(g.graph.has_tuple(0, {x, y}), g.graph.has_tuple(0, {g.shift[x], g.shift[y]}));
    }
  }
  EXPECT_EQ(g.shift[g.vertex(256)], -1);
}

TEST(ShiftGraph, PathAndEmpty) {
  StagedS one;
  one.length = 4;
  one.bits = {false, true, false, false, false};
  auto g = shift_graph(one, 4);
  EXPECT_EQ(edge_count(g.graph), 8);
  StagedS none = one;
  none.bits.assign(5, false);
  EXPECT_EQ(edge_count(shift_graph(none, 4).graph), 0);
}

TEST(UnrelatedTranslate, SinglePoint) {
  auto s = staged_s(512, 0);
  auto g = shift_graph(s, 256);
  std::int64_t first = 1;
  while (s.contains(first)) ++first;
  EXPECT_EQ(find_unrelated_translate(g, {0}), first);
}

TEST(UnrelatedTranslate, PairFallsInGap) {
  auto s = staged_s(512, 0);
  auto g = shift_graph(s, 256);
  auto n = find_unrelated_translate(g, {0, 1});
  EXPECT_GT(n, 1);
  EXPECT_FALSE(s.contains(n));
  EXPECT_FALSE(s.contains(n + 1));
  EXPECT_FALSE(s.contains(n - 1));
  EXPECT_LE(n, 3 * 128 - 1);
}

TEST(UnrelatedTranslate, WideSetNeedsLongerWindow) {
  auto s = staged_s(64, 0);
  auto g = shift_graph(s, 64);
  std::vector<std::int64_t> wide;
  for (std::int64_t x = -64; x <= 64; x += 3) wide.push_back(x);
  EXPECT_THROW(find_unrelated_translate(g, wide), InputError);
}

TEST(Splice, FixedPoints) {
  auto s = staged_s(512, 0);
  auto g = shift_graph(s, 256);
  FgAbelianGroup z2(0, {2});
  Action a = Action::trivial(z2, g.graph.induced({g.vertex(0)}));
  auto r = transitivity_splice(a, a, g);
  EXPECT_EQ(r.action.space().size(), 2);
  EXPECT_TRUE(r.action.space().tuples(0).empty());
  EXPECT_TRUE(validate_action(r.action).empty());
}

TEST(Splice, SwapsOfEdgesAndOverlap) {
  auto s = staged_s(512, 0);
  auto g = shift_graph(s, 256);
  std::int64_t d = 1;
  while (!s.contains(d)) ++d;
  FgAbelianGroup z2(0, {2});
  UStructure e = g.graph.induced({g.vertex(0), g.vertex(d)});
  Action swap(z2, e, {{1, 0}});
  ASSERT_TRUE(validate_action(swap).empty());
  auto r = transitivity_splice(swap, swap, g);
  EXPECT_EQ(r.action.space().size(), 4);
  EXPECT_TRUE(validate_action(r.action).empty());
  EXPECT_GT(r.k, 0);
  // Restriction to the first copy is the original swap.
  EXPECT_EQ(restrict_action(r.action, {r.action.space().index_of("0"), r.action.space().index_of(std::to_string(d))}),
            swap);
}

TEST(ExtensionProperty, CentralWindow) {
  auto s = staged_s(512, 0);
  auto g = shift_graph(s, 256);
  std::vector<int> window;
  for (std::int64_t n = -64; n < 64; ++n) window.push_back(g.vertex(n));
  EXPECT_FALSE(check_extension_property(g.graph, 3, window).has_value());
}

}  // namespace
}  // namespace forge
