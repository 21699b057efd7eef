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

#include "forge/amalgam.hpp"

#include <functional>
#include <numeric>
#include <set>

#include "forge/errors.hpp"

namespace forge {

namespace {

std::vector<PointId> amalgam_names(const UStructure& a, const std::vector<AmalgamPart>& parts,
                                   const std::vector<std::string>& tags, bool* collision) {
  std::vector<PointId> names = a.points();
  std::set<PointId> seen(names.begin(), names.end());
  *collision = false;
  for (size_t j = 0; j < parts.size(); ++j) {
    std::vector<char> in_image(parts[j].b.size(), 0);
    for (int v : parts[j].iota) in_image[v] = 1;
    for (int x = 0; x < parts[j].b.size(); ++x) {
      if (in_image[x]) continue;
      PointId n = parts[j].b.name(x) + tags[j];
      if (!seen.insert(n).second) *collision = true;
      names.push_back(n);
    }
  }
  return names;
}

std::string describe(const std::vector<Violation>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + ("axiom " + std::to_string(x.axiom) + ": " + x.message);
  return s;
}

}  // namespace

AmalgamResult free_amalgam(const UStructure& a, const std::vector<AmalgamPart>& parts,
                           const AmalgamOptions& options) {
  if (parts.empty()) throw InputError("free amalgam needs at least one part");
  if (auto v = validate(a); !v.empty()) throw InputError("base structure is invalid: " + describe(v));
  for (size_t j = 0; j < parts.size(); ++j) {
    if (!(parts[j].b.signature() == a.signature())) throw InputError("part signatures differ");
    if (auto v = validate(parts[j].b); !v.empty()) {
      throw InputError("part " + std::to_string(j) + " is invalid: " + describe(v));
    }
    if (!is_embedding(a, parts[j].b, parts[j].iota)) {
      throw InputError("map into part " + std::to_string(j) + " is not an embedding");
    }
  }
  std::vector<std::string> tags = options.tags;
  if (tags.empty()) {
    for (size_t j = 0; j < parts.size(); ++j) tags.push_back("#" + std::to_string(j));
  }
  if (tags.size() != parts.size()) throw InputError("one tag per part required");
  bool collision = false;
  std::vector<PointId> names;
  if (options.bare_if_unique) {
    names = amalgam_names(a, parts, std::vector<std::string>(parts.size()), &collision);
  }
  if (!options.bare_if_unique || collision) {
    names = amalgam_names(a, parts, tags, &collision);
    if (collision) throw InputError("amalgam point names collide; choose distinct tags");
  }

  AmalgamResult res;
  res.d = UStructure(a.signature(), names);
  const UStructure& d = res.d;
  res.psi.resize(a.size());
  for (int i = 0; i < a.size(); ++i) res.psi[i] = d.index_of(a.name(i));
  size_t next = a.size();
  for (const auto& part : parts) {
    PointMap phi(part.b.size(), -1);
    for (int i = 0; i < a.size(); ++i) phi[part.iota[i]] = res.psi[i];
    for (int x = 0; x < part.b.size(); ++x) {
      if (phi[x] < 0) phi[x] = d.index_of(names[next++]);
    }
    res.phis.push_back(phi);
    res.iotas.push_back(part.iota);
  }

  // Relations: tuples inside A u C_j come from B_j; nothing crosses parts.
  for (size_t r = 0; r < a.signature().relations.size(); ++r) {
    for (const auto& t : a.tuples(static_cast<int>(r))) {
      Tuple u;
      for (int e : t) u.push_back(res.psi[e]);
      res.d.add_tuple(static_cast<int>(r), u);
    }
    for (size_t j = 0; j < parts.size(); ++j) {
      for (const auto& t : parts[j].b.tuples(static_cast<int>(r))) {
        Tuple u;
        for (int e : t) u.push_back(res.phis[j][e]);
        res.d.add_tuple(static_cast<int>(r), u);
      }
    }
  }

  const auto& labels = a.signature().labels;
  const int n = d.size();
  int t = -1;
  if (a.size() == 0 && !labels.empty()) {
    // Largest label separating some pair inside one part; above it every
    // part is a single class and cross pairs may be joined.
    t = static_cast<int>(labels.size()) - 1;
    int diam = -1;
    for (const auto& part : parts) {
      for (int x = 0; x < part.b.size(); ++x) {
        for (int y = x + 1; y < part.b.size(); ++y) {
          for (int s = static_cast<int>(labels.size()) - 1; s > diam; --s) {
            if (!part.b.equiv(s, x, y)) {
              diam = s;
              break;
            }
          }
        }
      }
    }
    if (diam >= 0) t = diam;
    res.cross_label = t;
  }
  for (size_t s = 0; s < labels.size(); ++s) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    if (a.size() == 0 && static_cast<int>(s) > t) {
      for (int x = 1; x < n; ++x) unite(0, x);
    } else {
      for (size_t j = 0; j < parts.size(); ++j) {
        for (const auto& cls : parts[j].b.class_lists(static_cast<int>(s))) {
          for (size_t k = 1; k < cls.size(); ++k) unite(res.phis[j][cls[0]], res.phis[j][cls[k]]);
        }
      }
    }
    std::vector<int> cls(n);
    for (int x = 0; x < n; ++x) cls[x] = find(x);
    res.d.set_partition(static_cast<int>(s), cls);
  }
  return res;
}

Action amalgamated_action(const Action& pi, const std::vector<Action>& sigmas, const AmalgamResult& result) {
  if (sigmas.size() != result.phis.size()) throw InputError("one action per part required");
  const int na = static_cast<int>(result.psi.size());
  if (pi.space().size() != na) throw InputError("base action lives on a different space");
  const int ng = pi.group().dim();
  for (size_t j = 0; j < sigmas.size(); ++j) {
    if (!(sigmas[j].group() == pi.group())) throw InputError("part actions must share the group");
    if (sigmas[j].space().size() != static_cast<int>(result.phis[j].size())) {
      throw InputError("part action lives on a different space");
    }
    for (int g = 0; g < ng; ++g) {
      for (int x = 0; x < na; ++x) {
        if (sigmas[j].images()[g][result.iotas[j][x]] != result.iotas[j][pi.images()[g][x]]) {
          throw PreconditionError("part " + std::to_string(j) + " does not contain the base action on " +
                                  pi.space().name(x));
        }
      }
    }
  }
  const int n = result.d.size();
  std::vector<Perm> imgs(ng, Perm(n, -1));
  for (int g = 0; g < ng; ++g) {
    for (int x = 0; x < na; ++x) imgs[g][result.psi[x]] = result.psi[pi.images()[g][x]];
    for (size_t j = 0; j < sigmas.size(); ++j) {
      const auto& phi = result.phis[j];
      for (int x = 0; x < static_cast<int>(phi.size()); ++x) imgs[g][phi[x]] = phi[sigmas[j].images()[g][x]];
    }
  }
  return Action(pi.group(), result.d, imgs);
}

}  // namespace forge
