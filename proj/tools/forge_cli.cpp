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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "forge/forge.h"
#include "json.hpp"

using Json = nlohmann::json;

namespace {

struct Options {
  std::uint64_t seed = 0;
  long long budget = -1;
  std::string out;
  std::string request;
  std::vector<std::string> paths;
  std::string mode = "one-point";
  std::string filter;
  std::vector<std::string> faults;
  int check_ext = 0;
  long long window = -1;
  long long length = 512;
  int threads = 0;
  bool no_graph = false;
  bool extend = false;
};

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_file(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    throw Usage(path + ": malformed JSON: " + e.what());
  }
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Usage("cannot write " + tmp);
    out << text << '\n';
    if (!out.flush()) throw Usage("cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Usage("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

void print_failed_checks(const Json& body) {
  if (!body.contains("certificate")) return;
  for (const auto& c : body["certificate"]["checks"]) {
    if (c["passed"].get<bool>()) continue;
    std::cerr << "FAILED: " << c["name"].get<std::string>();
    if (c.contains("witness")) std::cerr << " -- " << c["witness"].get<std::string>();
    std::cerr << '\n';
  }
}

void print_validation(const Json& body) {
  for (const auto& r : body["reports"]) {
    const auto& v = r["violations"];
    std::cerr << r["path"].get<std::string>() << " " << r["kind"].get<std::string>() << ": "
              << (v.empty() ? "ok" : std::to_string(v.size()) + " violation(s)") << '\n';
    for (const auto& e : v) {
      if (e.contains("axiom")) {
        std::cerr << "  axiom (" << e["axiom"].get<int>() << "): " << e["message"].get<std::string>() << '\n';
      } else {
        std::cerr << "  " << e["kind"].get<std::string>() << ": " << e["message"].get<std::string>() << '\n';
      }
    }
  }
}

void print_selftest(const Json& body) {
  for (const auto& c : body["checks"]) {
    std::cout << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["id"].get<std::string>() << " ["
              << c["module"].get<std::string>() << "] " << c["name"].get<std::string>() << ": "
              << c["instances"].get<long long>() << " instances";
    if (c.contains("witness")) std::cout << " -- " << c["witness"].get<std::string>();
    std::cout << '\n';
  }
}

int run(const std::string& op, Json req, const Options& o) {
  forge_context* ctx = forge_context_new();
  if (!ctx) {
    std::cerr << "error: out of memory\n";
    return FORGE_INTERNAL;
  }
  char* raw = nullptr;
  const std::string text = req.dump();
  const forge_status st = forge_run(ctx, op.c_str(), text.c_str(), &raw);
  const std::string err = forge_last_error(ctx);
  std::string response = raw ? raw : "";
  forge_string_free(raw);
  forge_context_free(ctx);

  if (st != FORGE_OK && !err.empty()) std::cerr << "error: " << err << '\n';
  if (response.empty()) return st;
  Json body = Json::parse(response);
  if (op == "validate" && body.contains("reports")) print_validation(body);
  if (op == "selftest" && body.contains("checks")) {
    print_selftest(body);
    return st;
  }
  if (st == FORGE_BUDGET && body.contains("largest_modulus")) {
    std::cerr << "largest N tried: " << body["largest_modulus"] << '\n';
  }
  print_failed_checks(body);
  if (!o.out.empty()) {
    write_atomic(o.out, body.dump(2));
  } else if (op != "validate" || st == FORGE_OK || st == FORGE_VIOLATION) {
    std::cout << body.dump(2) << '\n';
  }
  return st;
}

Json build_request(const std::string& op, const Options& o) {
  Json req = Json::object();
  if (op == "validate") {
    req["documents"] = Json::array();
    for (const auto& p : o.paths) req["documents"].push_back({{"name", p}, {"json", parse_file(p)}});
    return req;
  }
  if (op == "selftest") {
    return {{"filter", o.filter}, {"seed", o.seed}, {"faults", o.faults}, {"threads", o.threads}};
  }
  if (!o.request.empty()) req = parse_file(o.request);
  if (!req.is_object()) throw Usage("request file must hold a JSON object");
  req["seed"] = o.seed;
  if (op == "close-orbits") {
    if (o.budget >= 0) req["budget"] = o.budget;
    if (o.extend) req["extend"] = true;
  }
  if (op == "extend") req["mode"] = o.mode;
  if (op == "randgraph" || op == "splice") {
    req["length"] = o.length;
    req["window"] = o.window >= 0 ? o.window : std::min(256LL, o.length);
  }
  if (op == "randgraph") {
    req["check_ext"] = o.check_ext;
    if (o.no_graph) req["emit_graph"] = false;
  }
  return req;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: finite structures, abelian group actions and their constructions"};
  app.set_version_flag("--version", std::string(forge_version()));
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    c->add_option("--out", o.out, "write the result here (atomically) instead of stdout");
  };
  auto add_request = [&](CLI::App* c) {
    c->add_option("request", o.request, "request JSON file")->required()->check(CLI::ExistingFile);
  };

  auto* validate = app.add_subcommand("validate", "check structure and action files against the axioms");
  validate->add_option("paths", o.paths, "JSON files")->required();
  add_common(validate);

  auto* amalgam = app.add_subcommand("amalgam", "free amalgam of structures over a common base");
  add_request(amalgam);
  add_common(amalgam);

  auto* extend = app.add_subcommand("extend", "extend an action to a larger structure");
  add_request(extend);
  add_common(extend);
  extend->add_option("--mode", o.mode, "one-point or through")
      ->check(CLI::IsMember({"one-point", "through"}))
      ->capture_default_str();

  auto* close = app.add_subcommand("close-orbits", "close an action into finite quotients");
  add_request(close);
  add_common(close);
  close->add_option("--budget", o.budget, "largest product of indices to try");
  close->add_flag("--extend", o.extend, "reduce labels and extend back over the original structure");

  auto* root = app.add_subcommand("root", "root extension of an automorphism");
  add_request(root);
  add_common(root);

  auto* randgraph = app.add_subcommand("randgraph", "staged shift graph on a window of Z");
  add_common(randgraph);
  randgraph->add_option("--length", o.length, "length M of the staged set")->capture_default_str();
  randgraph->add_option("--window", o.window, "radius W of the vertex window (default min(256, M))");
  randgraph->add_option("--check-ext", o.check_ext, "check the k-extension property on the central window")
      ->check(CLI::Range(0, 6));
  randgraph->add_flag("--no-graph", o.no_graph, "omit the graph from the output");

  auto* splice = app.add_subcommand("splice", "union of two actions with an unrelated translate");
  add_request(splice);
  add_common(splice);
  splice->add_option("--length", o.length, "length M of the staged set")->capture_default_str();
  splice->add_option("--window", o.window, "radius W of the vertex window");

  auto* conjugate = app.add_subcommand("conjugate", "decide conjugacy of two actions");
  add_request(conjugate);
  add_common(conjugate);

  auto* selftest = app.add_subcommand("selftest", "run the property suite");
  selftest->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  selftest->add_option("--filter", o.filter, "module name or check id");
  selftest->add_option("--fault", o.faults, "inject a named fault (repeatable)");
  selftest->add_option("--threads", o.threads, "worker threads (default FORGE_THREADS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : FORGE_INPUT;
  }

  const std::string op = app.get_subcommands().front()->get_name();
  try {
    return run(op, build_request(op, o), o);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << '\n';
    return FORGE_INPUT;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return FORGE_INTERNAL;
  }
}
