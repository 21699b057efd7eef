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

#ifndef FORGE_PERMUTATION_HPP_
#define FORGE_PERMUTATION_HPP_

#include <cstdint>
#include <vector>

namespace forge {

// p[i] is the image of point i.
using Perm = std::vector<int>;

namespace perm {

Perm identity(int n);
bool is_identity(const Perm& p);
bool is_permutation(const Perm& p);
// (a * b)(x) = a(b(x))
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
Perm power(const Perm& p, std::int64_t e);
std::int64_t order(const Perm& p);
bool commute(const Perm& a, const Perm& b);
// Sorted cycle lengths.
std::vector<int> cycle_type(const Perm& p);

}  // namespace perm
}  // namespace forge

#endif  // FORGE_PERMUTATION_HPP_
