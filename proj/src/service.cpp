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

#include "forge/service.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <functional>
#include <map>

#include "forge/amalgam.hpp"
#include "forge/errors.hpp"
#include "forge/extend.hpp"
#include "forge/faults.hpp"
#include "forge/orbitclose.hpp"
#include "forge/randgraph.hpp"
#include "forge/selftest.hpp"

namespace forge {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

namespace {

class Certificate {
 public:
  bool check(const std::string& name, bool ok, const std::string& witness = "") {
    Json c = {{"name", name}, {"passed", ok}};
    if (!ok && !witness.empty()) c["witness"] = witness;
    checks_.push_back(c);
    all_ = all_ && ok;
    return ok;
  }
  bool all() const { return all_; }

  Json to_json(const std::string& op, const Json& request) const {
    Json digests = Json::object();
    digests["request"] = sha256_hex(request.dump());
    for (auto it = request.begin(); it != request.end(); ++it) {
      if (it.value().is_structured()) digests[it.key()] = sha256_hex(it.value().dump());
    }
    return {{"operation", op},
            {"input_sha256", digests},
            {"checks", checks_},
            {"all_passed", all_},
            {"tool_version", kToolVersion},
            {"seed", request.value("seed", std::uint64_t{0})}};
  }

 private:
  Json checks_ = Json::array();
  bool all_ = true;
};

std::uint64_t seed_of(const Json& r) { return r.value("seed", std::uint64_t{0}); }

PointMap named_embedding(const UStructure& a, const UStructure& b) {
  PointMap m(a.size());
  for (int i = 0; i < a.size(); ++i) {
    m[i] = b.index_of(a.name(i));
    if (m[i] < 0) throw InputError("point '" + a.name(i) + "' is missing from the larger structure");
  }
  return m;
}

std::string first_violation(const std::vector<Violation>& v) {
  return v.empty() ? "" : "axiom " + std::to_string(v[0].axiom) + ": " + v[0].message;
}

std::string first_issue(const std::vector<ActionIssue>& v) { return v.empty() ? "" : v[0].kind + ": " + v[0].message; }

int finish(Json& body, const Certificate& c, const std::string& op, const Json& request) {
  body["certificate"] = c.to_json(op, request);
  return c.all() ? 0 : 1;
}

// ---------------------------------------------------------------------------

void collect(const Json& j, const std::string& path, Json& reports, bool& bad) {
  if (j.is_object() && j.contains("images") && j.contains("group") && j.contains("space")) {
    Action a = action_from_json(j);
    Json viol = Json::array();
    for (const auto& v : validate(a.space())) viol.push_back({{"axiom", v.axiom}, {"message", v.message}, {"witness", v.witness}});
    for (const auto& v : validate_action(a)) viol.push_back({{"kind", v.kind}, {"message", v.message}});
    bad = bad || !viol.empty();
    reports.push_back({{"path", path}, {"kind", "action"}, {"violations", viol}});
    return;
  }
  if (j.is_object() && j.contains("signature") && j.contains("points")) {
    UStructure x = structure_from_json(j);
    Json viol = Json::array();
    for (const auto& v : validate(x)) viol.push_back({{"axiom", v.axiom}, {"message", v.message}, {"witness", v.witness}});
    bad = bad || !viol.empty();
    reports.push_back({{"path", path}, {"kind", "structure"}, {"violations", viol}});
    return;
  }
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "certificate") continue;
      collect(it.value(), path + "/" + it.key(), reports, bad);
    }
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) collect(j[i], path + "/" + std::to_string(i), reports, bad);
  }
}

int op_validate(const Json& req, Json& body) {
  Json reports = Json::array();
  bool bad = false;
  for (const auto& doc : require_field(req, "documents")) {
    const std::string name = doc.value("name", std::string("input"));
    const size_t before = reports.size();
    collect(require_field(doc, "json"), name + ":", reports, bad);
    if (reports.size() == before) throw InputError(name + " holds no structure or action");
  }
  body = {{"ok", !bad}, {"reports", reports}};
  return bad ? 1 : 0;
}

int op_amalgam(const Json& req, Json& body) {
  UStructure base;
  std::vector<UStructure> parts_in;
  std::optional<Action> pi;
  std::vector<Action> sigmas;
  if (req.contains("base_action")) {
    pi = action_from_json(req["base_action"]);
    base = pi->space();
    for (const auto& a : require_field(req, "part_actions")) {
      sigmas.push_back(action_from_json(a));
      parts_in.push_back(sigmas.back().space());
    }
  } else {
    base = structure_from_json(require_field(req, "base"));
    for (const auto& p : require_field(req, "parts")) parts_in.push_back(structure_from_json(p));
  }
  std::vector<AmalgamPart> parts;
  for (size_t j = 0; j < parts_in.size(); ++j) {
    PointMap iota = req.contains("embeddings") ? point_map_from_json(base, parts_in[j], req["embeddings"].at(j))
                                                : named_embedding(base, parts_in[j]);
    parts.push_back({parts_in[j], iota});
  }
  AmalgamOptions opts;
  if (req.contains("tags")) opts.tags = req["tags"].get<std::vector<std::string>>();
  auto res = free_amalgam(base, parts, opts);
  Certificate c;
  c.check("D is a valid structure", validate(res.d).empty(), first_violation(validate(res.d)));
  Json phis = Json::array();
  for (size_t j = 0; j < parts.size(); ++j) {
    c.check("phi_" + std::to_string(j) + " is an embedding", is_embedding(parts[j].b, res.d, res.phis[j]));
    bool commutes = true;
    for (int x = 0; x < base.size(); ++x) commutes = commutes && res.phis[j][parts[j].iota[x]] == res.psi[x];
    c.check("phi_" + std::to_string(j) + " o iota_" + std::to_string(j) + " = psi", commutes);
    phis.push_back(point_map_to_json(parts[j].b, res.d, res.phis[j]));
  }
  body = {{"structure", structure_to_json(res.d)}, {"psi", point_map_to_json(base, res.d, res.psi)}, {"phis", phis}};
  if (res.cross_label >= 0) body["cross_label"] = base.signature().labels[res.cross_label].str();
  if (pi) {
    Action rho = amalgamated_action(*pi, sigmas, res);
    c.check("rho is a valid action", validate_action(rho).empty(), first_issue(validate_action(rho)));
    c.check("rho restricts to pi on A", pullback(rho, base, res.psi) == *pi);
    for (size_t j = 0; j < parts.size(); ++j) {
      c.check("rho restricts to sigma_" + std::to_string(j), pullback(rho, parts[j].b, res.phis[j]) == sigmas[j]);
    }
    body["action"] = action_to_json(rho);
  }
  return finish(body, c, "amalgam", req);
}

int op_extend(const Json& req, Json& body) {
  UStructure b = structure_from_json(require_field(req, "structure"));
  Action pi = action_from_json(require_field(req, "action"));
  const std::string mode = req.value("mode", std::string("one-point"));
  PointMap a_in_b = req.contains("embedding") ? point_map_from_json(pi.space(), b, req["embedding"])
                                              : named_embedding(pi.space(), b);
  ExtensionResult r;
  if (mode == "one-point") {
    r = one_point_extension(b, pi, a_in_b);
  } else if (mode == "through") {
    r = extend_action_through(b, pi, a_in_b);
  } else {
    throw InputError("mode must be 'one-point' or 'through'");
  }
  Certificate c;
  c.check("C is a valid structure", validate(r.space).empty(), first_violation(validate(r.space)));
  c.check("sigma is a valid action", validate_action(r.action).empty(), first_issue(validate_action(r.action)));
  c.check("B embeds in C as an induced substructure", is_embedding(b, r.space, r.inclusion));
  PointMap a_in_c(pi.space().size());
  for (int x = 0; x < pi.space().size(); ++x) a_in_c[x] = r.inclusion[a_in_b[x]];
  c.check("sigma restricts to pi on A", pullback(r.action, pi.space(), a_in_c) == pi);
  body = {{"structure", structure_to_json(r.space)},
          {"action", action_to_json(r.action)},
          {"inclusion", point_map_to_json(b, r.space, r.inclusion)}};
  return finish(body, c, "extend", req);
}

OrbitCloseProblem problem_from_json(const Json& j) {
  OrbitCloseProblem p;
  p.group = group_from_json(require_field(j, "group"));
  p.anchor_structure = structure_from_json(require_field(j, "anchor_structure"));
  for (const auto& o : require_field(j, "orbits")) {
    p.kernels.push_back(o.contains("kernel") ? subgroup_from_json(p.group, o["kernel"]) : Subgroup::trivial(p.group));
    const Json& anchors = require_field(o, "anchors");
    if (!anchors.is_object()) throw InputError("orbit anchors must map point names to group elements");
    p.anchors.push_back({});
    p.anchor_points.push_back({});
    for (auto it = anchors.begin(); it != anchors.end(); ++it) {
      p.anchor_points.back().push_back(p.anchor_structure.require(it.key()));
      p.anchors.back().push_back(element_from_json(p.group, it.value()));
    }
  }
  return p;
}

Json family_to_json(const OrbitCloseProblem& p, const FamilySearch& fs) {
  Json fam = Json::array();
  for (size_t i = 0; i < fs.family.f.size(); ++i) {
    fam.push_back({{"quotient", group_to_json(quotient(p.group, p.kernels[i]).group())},
                   {"kernel", subgroup_to_json(p.kernels[i])},
                   {"subgroup", subgroup_to_json(fs.family.f[i])}});
  }
  return {{"subgroups", fam}, {"level", fs.level}, {"exponent", fs.exponent}, {"tried", fs.tried}};
}

int op_close_orbits(const Json& req, Json& body) {
  const Int budget = req.value("budget", kDefaultFamilyBudget);
  Certificate c;
  OrbitCloseProblem p;
  CloseResult r;
  std::optional<OrbitCloseResult> full;
  if (req.contains("problem")) {
    p = problem_from_json(req["problem"]);
    r = close_problem(p, budget);
  } else {
    Action alpha = action_from_json(require_field(req, "action"));
    std::vector<int> anchor = points_from_json(alpha.space(), require_field(req, "anchor"));
    full = req.value("extend", false) ? close_then_extend(alpha, anchor, budget) : close_orbits(alpha, anchor, budget);
    p = full->problem;
    r = full->close;
  }
  c.check("B is a valid structure", validate(r.b).empty(), first_violation(validate(r.b)));
  c.check("beta is a valid action", validate_action(r.beta).empty(), first_issue(validate_action(r.beta)));
  std::vector<int> sub(r.anchor_map.begin(), r.anchor_map.end());
  c.check("B restricted to the anchor equals A", r.b.induced(sub) == p.anchor_structure);
  c.check("family satisfies conditions (i) and (ii)", check_family(p, r.search.family).ok);
  bool agree = true;
  for (size_t i = 0; i < p.kernels.size(); ++i) {
    for (size_t a = 0; a < p.anchors[i].size(); ++a) {
      for (int j = 0; j < p.group.dim(); ++j) {
        const GroupElement moved = p.group.add(p.anchors[i][a], p.group.generator(j));
        for (size_t b = 0; b < p.anchors[i].size(); ++b) {
          if (p.kernels[i].contains(p.group.sub(moved, p.anchors[i][b]))) {
            agree = agree && r.beta.images()[j][r.anchor_map[p.anchor_points[i][a]]] == r.anchor_map[p.anchor_points[i][b]];
          }
        }
      }
    }
  }
  c.check("beta agrees with the original action on the anchor", agree);
  body = {{"structure", structure_to_json(r.b)},
          {"action", action_to_json(r.beta)},
          {"anchor_embedding", point_map_to_json(p.anchor_structure, r.b, r.anchor_map)},
          {"family", family_to_json(p, r.search)}};
  if (full) {
    Json classes = Json::array();
    for (const auto& run : full->labels.classes) {
      Json row = Json::array();
      for (int s : run) row.push_back(p.anchor_structure.signature().labels[s].str());
      classes.push_back(row);
    }
    body["label_classes"] = classes;
  }
  return finish(body, c, "close-orbits", req);
}

Perm perm_map_from_json(const UStructure& x, const Json& j) {
  PointMap m = point_map_from_json(x, x, j);
  for (int i = 0; i < x.size(); ++i) {
    if (m[i] < 0) m[i] = i;
  }
  if (!perm::is_permutation(m)) throw InputError("map is not a permutation");
  return m;
}

int op_root(const Json& req, Json& body) {
  RootProblem p;
  p.b = structure_from_json(require_field(req, "structure"));
  p.pi = action_from_json(require_field(req, "action"));
  for (const auto& d : require_field(req, "delta")) p.delta.push_back(element_from_json(p.pi.group(), d));
  p.g = element_from_json(p.pi.group(), require_field(req, "g"));
  for (const auto& s : require_field(req, "sigma")) p.sigma.push_back(perm_map_from_json(p.b, s));
  if (req.contains("order")) p.order_override = req["order"].get<Int>();
  auto r = root_extension(p);
  Certificate c;
  c.check("D is a valid structure", validate(r.space).empty(), first_violation(validate(r.space)));
  c.check("h is an automorphism of D", is_automorphism(r.space, r.root));
  c.check("h^n = theta^rho", perm::power(r.root, r.n) == r.theta_image);
  bool commute = true;
  for (const auto& d : r.delta_action.images()) commute = commute && perm::commute(d, r.root);
  c.check("h commutes with the Delta images", commute);
  const Perm gpi = p.pi.element_image(p.g);
  bool on_a = true;
  for (int x = 0; x < p.pi.space().size(); ++x) on_a = on_a && r.root[r.copies.psi[x]] == r.copies.psi[gpi[x]];
  c.check("h restricted to A is g^pi", on_a);
  c.check("Gamma action is valid", validate_action(r.gamma_action).empty(), first_issue(validate_action(r.gamma_action)));
  body = {{"structure", structure_to_json(r.space)},
          {"root", point_map_to_json(r.space, r.space, r.root)},
          {"n", r.n},
          {"infinite_case", r.infinite_case},
          {"theta", r.theta},
          {"theta_image", point_map_to_json(r.space, r.space, r.theta_image)},
          {"delta_action", action_to_json(r.delta_action)},
          {"gamma_action", action_to_json(r.gamma_action)},
          {"psi", point_map_to_json(p.pi.space(), r.space, r.copies.psi)}};
  return finish(body, c, "root", req);
}

Json staged_to_json(const StagedS& s, std::uint64_t seed) {
  Json log = Json::array();
  for (const auto& r : s.log) {
    Json e = {{"kind", stage_kind_name(r.kind)}, {"lo", r.lo}, {"hi", r.hi}};
    if (r.kind != StageRecord::kGap) {
      std::string bits;
      for (bool b : r.pattern) bits += b ? '1' : '0';
      e["pattern"] = bits;
    }
    log.push_back(e);
  }
  Json runs = Json::array();
  for (std::int64_t d = 1; d <= s.length;) {
    std::int64_t e = d;
    while (e + 1 <= s.length && s.bits[e + 1] == s.bits[d]) ++e;
    runs.push_back({s.bits[d] ? 1 : 0, e - d + 1});
    d = e + 1;
  }
  return {{"length", s.length}, {"seed", seed}, {"log", log}, {"runs", runs}};
}

ShiftGraph graph_from_request(const Json& req) {
  const std::int64_t length = req.value("length", std::int64_t{512});
  const std::int64_t window = req.value("window", std::min<std::int64_t>(256, length));
  return shift_graph(staged_s(length, seed_of(req)), window);
}

int op_randgraph(const Json& req, Json& body) {
  ShiftGraph g = graph_from_request(req);
  Certificate c;
  bool gaps = true;
  for (const auto& r : g.s.log) {
    if (r.kind != StageRecord::kGap) continue;
    gaps = gaps && r.hi == 3 * (r.lo - 1);
    for (std::int64_t d = r.lo; d <= std::min(r.hi, g.s.length); ++d) gaps = gaps && !g.s.contains(d);
  }
  c.check("gap stages clear [k+1, 3k]", gaps);
  bool shift_ok = true;
  for (std::int64_t n = g.valid_lo; n <= g.valid_hi && shift_ok; ++n) {
    for (std::int64_t m = g.valid_lo; m <= g.valid_hi; ++m) {
      const int x = g.vertex(n), y = g.vertex(m);
      if (g.graph.has_tuple(0, {x, y}) != g.graph.has_tuple(0, {g.shift[x], g.shift[y]})) {
        shift_ok = false;
        break;
      }
    }
  }
  c.check("unit shift preserves edges on [" + std::to_string(g.valid_lo) + ", " + std::to_string(g.valid_hi) + "]",
          shift_ok);
  const int k = req.value("check_ext", 0);
  if (k > 0) {
    const std::int64_t half = std::max<std::int64_t>(1, g.radius / 4);
    std::vector<int> window;
    for (std::int64_t n = -half; n < half; ++n) window.push_back(g.vertex(n));
    auto cex = check_extension_property(g.graph, k, window);
    std::string w;
    if (cex) {
      for (int x : cex->adjacent) w += " +" + g.graph.name(x);
      for (int x : cex->non_adjacent) w += " -" + g.graph.name(x);
    }
    c.check("extension property k=" + std::to_string(k) + " on [" + std::to_string(-half) + ", " +
                std::to_string(half - 1) + "]",
            !cex, "no witness for" + w);
  }
  body = {{"staged", staged_to_json(g.s, seed_of(req))},
          {"window", {{"radius", g.radius}, {"valid_lo", g.valid_lo}, {"valid_hi", g.valid_hi}}}};
  if (req.value("emit_graph", true)) body["structure"] = structure_to_json(g.graph);
  return finish(body, c, "randgraph", req);
}

int op_splice(const Json& req, Json& body) {
  ShiftGraph g = graph_from_request(req);
  Action sn = action_from_json(require_field(req, "sigma_n"));
  Action sm = action_from_json(require_field(req, "sigma_m"));
  auto r = transitivity_splice(sn, sm, g);
  Certificate c;
  c.check("union action is valid", validate_action(r.action).empty(), first_issue(validate_action(r.action)));
  std::vector<int> first;
  for (const auto& name : sn.space().points()) first.push_back(r.action.space().index_of(name));
  c.check("union restricts to sigma_n", restrict_action(r.action, first) == sn);
  body = {{"action", action_to_json(r.action)}, {"translate", r.k}};
  return finish(body, c, "splice", req);
}

int op_conjugate(const Json& req, Json& body) {
  Certificate c;
  if (req.contains("s1")) {
    FgAbelianGroup g = group_from_json(require_field(req, "group"));
    std::vector<GroupElement> m1, m2, window;
    for (const auto& e : req["s1"]) m1.push_back(element_from_json(g, e));
    for (const auto& e : require_field(req, "s2")) m2.push_back(element_from_json(g, e));
    auto s1 = make_symmetric_subset(g, m1), s2 = make_symmetric_subset(g, m2);
    if (req.contains("window")) {
      for (const auto& e : req["window"]) window.push_back(element_from_json(g, e));
    } else {
      window = g.elements();
    }
    const bool same = regular_reps_conjugate(s1, s2, window);
    body = {{"conjugate", same}};
    if (g.is_finite() && *g.order() <= 8) {
      auto found = equivariant_isomorphisms_brute(regular_action(s1), regular_action(s2));
      c.check("exhaustive search agrees", found.empty() != same);
    }
    return finish(body, c, "conjugate", req);
  }
  Action pi = action_from_json(require_field(req, "pi"));
  Action th = action_from_json(require_field(req, "theta"));
  auto g = are_conjugate(pi, th);
  body = {{"conjugate", g.has_value()}};
  if (g) {
    bool eq = is_embedding(pi.space(), th.space(), *g);
    for (size_t k = 0; k < pi.images().size(); ++k) {
      for (int x = 0; x < pi.space().size(); ++x) eq = eq && (*g)[pi.images()[k][x]] == th.images()[k][(*g)[x]];
    }
    c.check("map is an equivariant isomorphism", eq);
    body["map"] = point_map_to_json(pi.space(), th.space(), *g);
  }
  return finish(body, c, "conjugate", req);
}

int op_selftest(const Json& req, Json& body) {
  std::vector<std::string> faults;
  if (req.contains("faults")) faults = req["faults"].get<std::vector<std::string>>();
  set_faults(faults);
  std::vector<CheckResult> results;
  try {
    results = run_checks(req.value("filter", std::string()), seed_of(req), req.value("threads", 0));
  } catch (...) {
    clear_faults();
    throw;
  }
  clear_faults();
  Json checks = Json::array();
  bool all = true;
  for (const auto& r : results) {
    Json e = {{"id", r.id}, {"module", r.module}, {"name", r.name}, {"passed", r.passed}, {"instances", r.instances}};
    if (!r.passed) e["witness"] = r.witness;
    checks.push_back(e);
    all = all && r.passed;
  }
  body = {{"passed", all}, {"checks", checks}, {"seed", seed_of(req)}, {"faults", faults}};
  return all ? 0 : 1;
}

const std::map<std::string, std::function<int(const Json&, Json&)>>& table() {
  static const std::map<std::string, std::function<int(const Json&, Json&)>> t = {
      {"validate", op_validate}, {"amalgam", op_amalgam},       {"extend", op_extend},
      {"close-orbits", op_close_orbits}, {"root", op_root},     {"randgraph", op_randgraph},
      {"splice", op_splice},     {"conjugate", op_conjugate},   {"selftest", op_selftest},
  };
  return t;
}

}  // namespace

std::vector<std::string> operation_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : table()) out.push_back(k);
  return out;
}

ServiceResult run_operation(const std::string& op, const Json& request) {
  ServiceResult res;
  auto it = table().find(op);
  try {
    if (it == table().end()) throw InputError("unknown operation '" + op + "'");
    if (!request.is_object()) throw InputError("request must be a JSON object");
    res.status = it->second(request, res.body);
    return res;
  } catch (const BudgetExhausted& e) {
    res.status = 3;
    res.error = e.what();
    res.body = {{"error", res.error}, {"largest_modulus", e.largest_level()}};
  } catch (const ForgeError& e) {
    res.status = e.kind() == ErrorKind::kViolation ? 1 : 2;
    res.error = e.what();
    res.body = {{"error", res.error}};
  } catch (const Json::exception& e) {
    res.status = 2;
    res.error = std::string("malformed request: ") + e.what();
    res.body = {{"error", res.error}};
  } catch (const std::exception& e) {
    res.status = 4;
    res.error = std::string("internal error: ") + e.what();
    res.body = {{"error", res.error}};
  }
  return res;
}

}  // namespace forge
