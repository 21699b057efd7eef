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
#include "forge/faults.hpp"
#include "forge/instances.hpp"
#include "forge/json_io.hpp"
#include "forge/selftest.hpp"

namespace forge {
namespace {

TEST(JsonIo, StructureRoundTrip) {
  Rng rng(4);
  for (int it = 0; it < 50; ++it) {
    USignature sig = random_signature(rng, 2, 3, 3);
    UStructure x = random_structure(rng, sig, uniform_int(rng, 0, 7), 0.3);
    Json j = structure_to_json(x);
    EXPECT_EQ(structure_from_json(j), x);
    EXPECT_EQ(structure_to_json(structure_from_json(Json::parse(j.dump()))), j);
  }
}

TEST(JsonIo, ActionRoundTrip) {
  Rng rng(6);
  FgAbelianGroup g(1, {2});
  auto inv = random_invariant_extension(rng, UStructure(random_signature(rng, 1, 2, 2), {}), std::vector<Perm>(2),
                                        random_group_images(rng, g, 5), 5, "p", 0.4);
  Action a(g, inv.space, inv.images);
  EXPECT_EQ(action_from_json(action_to_json(a)), a);
}

TEST(JsonIo, ImagesFollowWrittenPointOrder) {
  Json j = Json::parse(R"({"group": {"free_rank": 0, "torsion": [2]},
    "space": {"signature": {"relations": [{"name": "R", "arity": 2, "symmetry": [[1, 0]]}]},
              "points": ["b", "a", "c"], "relations": {"R": [["a", "b"], ["b", "a"]]}},
    "images": [["a", "b", "c"]]})");
  Action a = action_from_json(j);
  const auto& x = a.space();
  EXPECT_EQ(a.images()[0][x.index_of("b")], x.index_of("a"));
  EXPECT_EQ(a.images()[0][x.index_of("c")], x.index_of("c"));
}

TEST(JsonIo, OverlappingClassesBecomeDefects) {
  Json j = Json::parse(R"({"signature": {"labels": ["1"]}, "points": ["a", "b", "c"],
    "partitions": {"1": [["a", "b"], ["b", "c"]]}})");
  UStructure x = structure_from_json(j);
  auto v = validate(x);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].axiom, 3);
}

TEST(JsonIo, MalformedInputThrows) {
  EXPECT_THROW(structure_from_json(Json::parse(R"({"points": ["a"]})")), InputError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"signature": {}, "points": ["a", "a"]})")), InputError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"signature": {}, "points": ["a"], "relations": {"R": []}})")),
               InputError);
  EXPECT_THROW(group_from_json(Json::parse(R"({"free_rank": 0, "torsion": [4, 2]})")), InputError);
  EXPECT_THROW(action_from_json(Json::parse(R"({"group": {"free_rank": 1}, "space": {"signature": {}, "points": ["a"]},
    "images": [["b"]]})")),
               InputError);
}

TEST(JsonIo, GroupsAndSubgroups) {
  FgAbelianGroup g(1, {2, 4});
  EXPECT_EQ(group_from_json(group_to_json(g)), g);
  Subgroup h = Subgroup::generated(g, {g.element({2, 1, 0})});
  EXPECT_EQ(subgroup_from_json(g, subgroup_to_json(h)), h);
  EXPECT_EQ(element_from_json(g, element_to_json(g.element({3, 1, 3}))), g.element({3, 1, 3}));
}

TEST(SelfTest, FilterSelectsModule) {
  auto r = run_checks("amalgam", 0, 1);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].id, "1");
  EXPECT_TRUE(r[0].passed && r[1].passed);
  EXPECT_THROW(run_checks("nothing", 0, 1), InputError);
}

TEST(SelfTest, SymmetrizeFaultIsCaught) {
  EXPECT_TRUE(run_check("symmetrize", 0).passed);
  set_faults({"symmetrize"});
  auto r = run_check("symmetrize", 0);
  clear_faults();
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.name.find("L_i-closure"), std::string::npos);
  EXPECT_NE(r.witness.find("symmetry"), std::string::npos);
  EXPECT_THROW(set_faults({"bogus"}), InputError);
}

}  // namespace
}  // namespace forge
