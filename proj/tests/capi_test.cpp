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

#include <cstring>
#include <string>

#include "forge/forge.h"
#include "json.hpp"

using Json = nlohmann::json;

namespace {

struct Ctx {
  forge_context* p = forge_context_new();
  ~Ctx() { forge_context_free(p); }
};

Json call(forge_context* ctx, const char* op, const std::string& req, forge_status* st) {
  char* out = nullptr;
  *st = forge_run(ctx, op, req.c_str(), &out);
  if (!out) return Json();
  Json j = Json::parse(out);
  forge_string_free(out);
  return j;
}

}  // namespace

TEST(CApi, Version) { EXPECT_STREQ(forge_version(), "1.0.0"); }

TEST(CApi, NullArguments) {
  Ctx c;
  char* out = reinterpret_cast<char*>(1);
  EXPECT_EQ(forge_run(c.p, nullptr, "{}", &out), FORGE_INPUT);
  EXPECT_EQ(out, nullptr);
  EXPECT_EQ(forge_run(nullptr, "validate", "{}", &out), FORGE_INPUT);
  EXPECT_STREQ(forge_last_error(nullptr), "");
}

TEST(CApi, MalformedJsonIsInputError) {
  Ctx c;
  forge_status st;
  Json j = call(c.p, "validate", "{\"documents\": [", &st);
  EXPECT_EQ(st, FORGE_INPUT);
  EXPECT_NE(std::string(forge_last_error(c.p)).find("malformed"), std::string::npos);
  EXPECT_TRUE(j.contains("error"));
}

TEST(CApi, UnknownOperation) {
  Ctx c;
  forge_status st;
  call(c.p, "frobnicate", "{}", &st);
  EXPECT_EQ(st, FORGE_INPUT);
  EXPECT_NE(std::string(forge_last_error(c.p)).find("frobnicate"), std::string::npos);
}

TEST(CApi, ValidateReportsAxiom) {
  Ctx c;
  const Json sig = {{"labels", Json::array()},
                    {"relations", {{{"name", "E"}, {"arity", 2}, {"symmetry", {{1, 0}}}}}}};
  Json bad = {{"signature", sig}, {"points", {"a", "b"}}, {"relations", {{"E", Json::array({Json::array({"a", "b"})})}}}};
  Json good = bad;
  good["relations"]["E"].push_back(Json::array({"b", "a"}));
  forge_status st;
  call(c.p, "validate", Json{{"documents", {{{"name", "g"}, {"json", good}}}}}.dump(), &st);
  EXPECT_EQ(st, FORGE_OK);
  EXPECT_STREQ(forge_last_error(c.p), "");
  Json j = call(c.p, "validate", Json{{"documents", {{{"name", "b"}, {"json", bad}}}}}.dump(), &st);
  EXPECT_EQ(st, FORGE_VIOLATION);
  EXPECT_EQ(j["reports"][0]["violations"][0]["axiom"], 1);
}

TEST(CApi, RandgraphCertificate) {
  Ctx c;
  forge_status st;
  Json j = call(c.p, "randgraph", R"({"length": 128, "window": 64, "check_ext": 2, "seed": 3, "emit_graph": false})", &st);
  ASSERT_EQ(st, FORGE_OK);
  const Json& cert = j["certificate"];
  EXPECT_EQ(cert["operation"], "randgraph");
  EXPECT_EQ(cert["seed"], 3);
  EXPECT_EQ(cert["tool_version"], "1.0.0");
  EXPECT_EQ(cert["input_sha256"]["request"].get<std::string>().size(), 64u);
  EXPECT_TRUE(cert["all_passed"]);
}

TEST(CApi, SelftestFaultsAreScoped) {
  Ctx c;
  char* out = nullptr;
  EXPECT_EQ(forge_selftest(c.p, "symmetrize", 0, "symmetrize", 1, &out), FORGE_VIOLATION);
  ASSERT_NE(out, nullptr);
  EXPECT_NE(std::strstr(out, "L_i-closure"), nullptr);
  forge_string_free(out);
  EXPECT_EQ(forge_selftest(c.p, "symmetrize", 0, nullptr, 1, &out), FORGE_OK);
  forge_string_free(out);
}

TEST(CApi, BudgetStatus) {
  Ctx c;
  const Json sig = {{"labels", Json::array()},
                    {"relations", {{{"name", "E"}, {"arity", 2}, {"symmetry", {{1, 0}}}}}}};
  Json req = {{"budget", 2},
              {"problem",
               {{"group", {{"free_rank", 1}, {"torsion", Json::array()}}},
                {"anchor_structure",
                 {{"signature", sig}, {"points", {"a", "b"}}, {"relations", {{"E", Json::array({Json::array({"a", "b"}), Json::array({"b", "a"})})}}}}},
                {"orbits", {{{"anchors", {{"a", Json::array({0})}, {"b", Json::array({1})}}}}}}}}};
  forge_status st;
  Json j = call(c.p, "close-orbits", req.dump(), &st);
  EXPECT_EQ(st, FORGE_BUDGET);
  EXPECT_EQ(j["largest_modulus"], 2);
  req["budget"] = 3;
  j = call(c.p, "close-orbits", req.dump(), &st);
  EXPECT_EQ(st, FORGE_OK);
  EXPECT_EQ(j["family"]["exponent"], 3);
}
