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

#include "forge/permutation.hpp"

#include <algorithm>
#include <numeric>

namespace forge::perm {

Perm identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_identity(const Perm& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] != static_cast<int>(i)) return false;
  }
  return true;
}

bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

Perm power(const Perm& p, std::int64_t e) {
  const std::int64_t ord = order(p);
  e %= ord;
  if (e < 0) e += ord;
  Perm result = identity(static_cast<int>(p.size()));
  Perm base = p;
  while (e > 0) {
    if (e & 1) result = compose(base, result);
    base = compose(base, base);
    e >>= 1;
  }
  return result;
}

std::int64_t order(const Perm& p) {
  std::int64_t l = 1;
  for (int len : cycle_type(p)) l = std::lcm(l, static_cast<std::int64_t>(len));
  return l;
}

bool commute(const Perm& a, const Perm& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[b[i]] != b[a[i]]) return false;
  }
  return true;
}

std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> lens;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int x = static_cast<int>(i); !seen[x]; x = p[x]) {
      seen[x] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

}  // namespace forge::perm
