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

#include "forge/json_io.hpp"

#include <map>

#include "forge/errors.hpp"

namespace forge {

namespace {

template <typename T>
T as(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw InputError(what + " has the wrong type");
  }
}

Rational label_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InputError("distance label must be a string or integer");
}

}  // namespace

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

Json group_to_json(const FgAbelianGroup& g) { return {{"free_rank", g.free_rank()}, {"torsion", g.torsion()}}; }

FgAbelianGroup group_from_json(const Json& j) {
  const int r = as<int>(require_field(j, "free_rank"), "free_rank");
  std::vector<Int> t;
  if (j.contains("torsion")) t = as<std::vector<Int>>(j["torsion"], "torsion");
  if (r < 0) throw InputError("free_rank must be nonnegative");
  return FgAbelianGroup(r, t);
}

Json element_to_json(const GroupElement& e) { return e.coords; }

GroupElement element_from_json(const FgAbelianGroup& g, const Json& j) {
  auto c = as<IntVec>(j, "group element");
  if (static_cast<int>(c.size()) != g.dim()) throw InputError("group element has the wrong length");
  return g.element(c);
}

Json subgroup_to_json(const Subgroup& h) { return h.basis(); }

Subgroup subgroup_from_json(const FgAbelianGroup& g, const Json& j) {
  auto rows = as<IntMat>(j, "subgroup basis");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != g.dim()) throw InputError("subgroup row has the wrong length");
  }
  return Subgroup::from_lattice(g, rows);
}

Json signature_to_json(const USignature& s) {
  Json labels = Json::array();
  for (const auto& l : s.labels) labels.push_back(l.str());
  Json rels = Json::array();
  for (const auto& r : s.relations) rels.push_back({{"name", r.name}, {"arity", r.arity}, {"symmetry", r.symmetry}});
  return {{"labels", labels}, {"relations", rels}};
}

USignature signature_from_json(const Json& j) {
  USignature s;
  if (j.contains("labels")) {
    for (const auto& l : require_field(j, "labels")) s.labels.push_back(label_from_json(l));
  }
  if (j.contains("relations")) {
    for (const auto& r : j["relations"]) {
      RelationSymbol sym;
      sym.name = as<std::string>(require_field(r, "name"), "relation name");
      sym.arity = as<int>(require_field(r, "arity"), "relation arity");
      if (r.contains("symmetry")) sym.symmetry = as<std::vector<Perm>>(r["symmetry"], "relation symmetry");
      s.relations.push_back(sym);
    }
  }
  s.check();
  return s;
}

Json structure_to_json(const UStructure& x) {
  Json rels = Json::object();
  for (size_t r = 0; r < x.signature().relations.size(); ++r) {
    Json ts = Json::array();
    for (const auto& t : x.tuples(static_cast<int>(r))) {
      Json row = Json::array();
      for (int p : t) row.push_back(x.name(p));
      ts.push_back(row);
    }
    rels[x.signature().relations[r].name] = ts;
  }
  Json parts = Json::object();
  for (size_t s = 0; s < x.signature().labels.size(); ++s) {
    Json cls = Json::array();
    for (const auto& c : x.class_lists(static_cast<int>(s))) {
      Json row = Json::array();
      for (int p : c) row.push_back(x.name(p));
      cls.push_back(row);
    }
    parts[x.signature().labels[s].str()] = cls;
  }
  return {{"signature", signature_to_json(x.signature())},
          {"points", x.points()},
          {"relations", rels},
          {"partitions", parts}};
}

UStructure structure_from_json(const Json& j) {
  USignature sig = signature_from_json(require_field(j, "signature"));
  auto pts = as<std::vector<std::string>>(require_field(j, "points"), "points");
  UStructure x(sig, pts);
  if (j.contains("relations")) {
    const Json& rels = j["relations"];
    if (!rels.is_object()) throw InputError("relations must be an object keyed by relation name");
    for (auto it = rels.begin(); it != rels.end(); ++it) {
      const int r = sig.relation_index(it.key());
      if (r < 0) throw InputError("unknown relation '" + it.key() + "'");
      for (const auto& t : it.value()) {
        auto names = as<std::vector<std::string>>(t, "tuple");
        if (static_cast<int>(names.size()) != sig.relations[r].arity) {
          throw InputError("tuple of '" + it.key() + "' has the wrong arity");
        }
        Tuple u;
        for (const auto& n : names) u.push_back(x.require(n));
        x.add_tuple(r, u);
      }
    }
  }
  if (j.contains("partitions")) {
    const Json& parts = j["partitions"];
    if (!parts.is_object()) throw InputError("partitions must be an object keyed by label");
    for (auto it = parts.begin(); it != parts.end(); ++it) {
      const int s = sig.label_index(Rational::parse(it.key()));
      if (s < 0) throw InputError("unknown distance label '" + it.key() + "'");
      std::vector<int> cls(x.size(), -1);
      int next = 0;
      for (const auto& c : it.value()) {
        auto names = as<std::vector<std::string>>(c, "class");
        const int id = next++;
        for (const auto& n : names) {
          const int p = x.require(n);
          if (cls[p] >= 0 && cls[p] != id) {
            x.add_defect({3, "point " + n + " lies in two classes at label " + it.key(), {n}});
            // Merge so the stored relation is still an equivalence.
            const int old = cls[p];
            for (auto& v : cls) {
              if (v == old) v = id;
            }
          }
          cls[p] = id;
        }
      }
      for (auto& v : cls) {
        if (v < 0) v = next++;
      }
      x.set_partition(s, cls);
    }
  }
  return x;
}

Json perm_to_json(const UStructure& x, const Perm& p) {
  Json row = Json::array();
  for (int i = 0; i < x.size(); ++i) row.push_back(x.name(p[i]));
  return row;
}

Perm perm_from_json(const UStructure& x, const Json& j) {
  auto names = as<std::vector<std::string>>(j, "permutation");
  if (static_cast<int>(names.size()) != x.size()) throw InputError("permutation has the wrong length");
  Perm p;
  for (const auto& n : names) p.push_back(x.require(n));
  if (!perm::is_permutation(p)) throw InputError("image list is not a permutation");
  return p;
}

Json action_to_json(const Action& a) {
  Json imgs = Json::array();
  for (const auto& p : a.images()) imgs.push_back(perm_to_json(a.space(), p));
  return {{"group", group_to_json(a.group())}, {"space", structure_to_json(a.space())}, {"images", imgs}};
}

Action action_from_json(const Json& j) {
  FgAbelianGroup g = group_from_json(require_field(j, "group"));
  const Json& sj = require_field(j, "space");
  UStructure x = structure_from_json(sj);
  // Image lists follow the order of the "points" array as written.
  auto written = as<std::vector<std::string>>(require_field(sj, "points"), "points");
  std::vector<Perm> imgs;
  for (const auto& row : require_field(j, "images")) {
    auto names = as<std::vector<std::string>>(row, "image list");
    if (names.size() != written.size()) throw InputError("image list has the wrong length");
    Perm p(x.size(), -1);
    for (size_t i = 0; i < names.size(); ++i) p[x.require(written[i])] = x.require(names[i]);
    if (!perm::is_permutation(p)) throw InputError("image list is not a permutation");
    imgs.push_back(p);
  }
  return Action(g, x, imgs);
}

Json point_map_to_json(const UStructure& from, const UStructure& to, const PointMap& m) {
  Json out = Json::object();
  for (int i = 0; i < from.size(); ++i) {
    if (m[i] >= 0) out[from.name(i)] = to.name(m[i]);
  }
  return out;
}

PointMap point_map_from_json(const UStructure& from, const UStructure& to, const Json& j) {
  if (!j.is_object()) throw InputError("point map must be an object");
  PointMap m(from.size(), -1);
  for (auto it = j.begin(); it != j.end(); ++it) {
    m[from.require(it.key())] = to.require(as<std::string>(it.value(), "point map target"));
  }
  return m;
}

std::vector<int> points_from_json(const UStructure& x, const Json& j) {
  std::vector<int> out;
  for (const auto& n : as<std::vector<std::string>>(j, "point list")) out.push_back(x.require(n));
  return out;
}

}  // namespace forge
