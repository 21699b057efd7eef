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

#include <functional>

#include "forge/amalgam.hpp"
#include "forge/errors.hpp"
#include "forge/ustructure.hpp"

namespace forge {

namespace {

// Does some point of y outside `base` realize `type` over base? `type`
// lives on base's names plus `z`.
bool realized(const UStructure& y, const UStructure& type, const PointId& z, const std::vector<int>& base_in_y) {
  PointMap m(type.size(), -1);
  for (int i : base_in_y) m[type.index_of(y.name(i))] = i;
  const int zi = type.index_of(z);
  std::vector<char> used(y.size(), 0);
  for (int i : base_in_y) used[i] = 1;
  for (int p = 0; p < y.size(); ++p) {
    if (used[p]) continue;
    m[zi] = p;
    if (is_embedding(type, y, m)) return true;
  }
  return false;
}

}  // namespace

UStructure saturate(const UStructure& x, int t, int cap) {
  if (cap < x.size()) throw InputError("cap is smaller than the structure");
  if (t <= 0) return x;
  UStructure y = x;
  int fresh = 0;
  auto fresh_name = [&]() {
    PointId n;
    do {
      n = "sat" + std::to_string(fresh++);
    } while (y.index_of(n) >= 0);
    return n;
  };
  std::vector<int> subset;
  std::function<void(int)> visit = [&](int start) {
    if (!subset.empty()) {
      UStructure base = x.induced(subset);
      const PointId z = "\x01z";
      auto types = one_point_types(base, z);
      std::vector<int> base_in_y;
      for (int i : subset) base_in_y.push_back(y.index_of(x.name(i)));
      for (const auto& type : types) {
        if (realized(y, type, z, base_in_y)) continue;
        // Rename z to a fresh point and amalgamate over the base.
        std::vector<PointId> names = type.points();
        const PointId fname = fresh_name();
        for (auto& n : names) {
          if (n == z) n = fname;
        }
        UStructure named = type.renamed(names);
        PointMap into_y(base.size()), into_type(base.size());
        for (int i = 0; i < base.size(); ++i) {
          into_y[i] = y.index_of(base.name(i));
          into_type[i] = named.index_of(base.name(i));
        }
        AmalgamOptions opts;
        opts.tags = {"", ""};
        auto res = free_amalgam(base, {{y, into_y}, {named, into_type}}, opts);
        y = res.d;
        if (y.size() > cap) {
          throw BudgetExhausted("saturation exceeded the cap of " + std::to_string(cap) + " points", y.size());
        }
        base_in_y.clear();
        for (int i : subset) base_in_y.push_back(y.index_of(x.name(i)));
      }
    }
    if (static_cast<int>(subset.size()) == t) return;
    for (int i = start; i < x.size(); ++i) {
      subset.push_back(i);
      visit(i + 1);
      subset.pop_back();
    }
  };
  visit(0);
  return y;
}

}  // namespace forge
