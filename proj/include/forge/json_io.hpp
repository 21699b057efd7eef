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

// JSON forms of groups, elements, subgroups, structures and actions.
// Malformed input throws InputError.

#ifndef FORGE_JSON_IO_HPP_
#define FORGE_JSON_IO_HPP_

#include <json.hpp>

#include "forge/abelian.hpp"
#include "forge/actions.hpp"
#include "forge/ustructure.hpp"

namespace forge {

using Json = nlohmann::json;

// {"free_rank": r, "torsion": [d_1, ...]}
Json group_to_json(const FgAbelianGroup& g);
FgAbelianGroup group_from_json(const Json& j);

// Integer array.
Json element_to_json(const GroupElement& e);
GroupElement element_from_json(const FgAbelianGroup& g, const Json& j);

// Row-major basis matrix.
Json subgroup_to_json(const Subgroup& h);
Subgroup subgroup_from_json(const FgAbelianGroup& g, const Json& j);

// {"labels": ["1/2", ...], "relations": [{"name", "arity", "symmetry"}]}
Json signature_to_json(const USignature& s);
USignature signature_from_json(const Json& j);

// {"signature", "points", "relations": {name: [[point, ...]]},
//  "partitions": {label: [[point, ...]]}}. Points missing from a label's
// classes are singletons. A point in two classes is kept as an axiom-3
// defect.
Json structure_to_json(const UStructure& x);
UStructure structure_from_json(const Json& j);

// {"group", "space", "images": [[image of points[i], ...] per generator]}
Json action_to_json(const Action& a);
Action action_from_json(const Json& j);

// {name: name} objects for point maps.
Json point_map_to_json(const UStructure& from, const UStructure& to, const PointMap& m);
PointMap point_map_from_json(const UStructure& from, const UStructure& to, const Json& j);

Json perm_to_json(const UStructure& x, const Perm& p);
Perm perm_from_json(const UStructure& x, const Json& j);

std::vector<int> points_from_json(const UStructure& x, const Json& j);

// Typed field access with InputError naming the key.
const Json& require_field(const Json& j, const char* key);

}  // namespace forge

#endif  // FORGE_JSON_IO_HPP_
