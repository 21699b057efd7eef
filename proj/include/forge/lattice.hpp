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

// Exact integer lattice algorithms. Lattices are row spans of integer
// matrices; all transforms act on rows from the left (U * A = H).

#ifndef FORGE_LATTICE_HPP_
#define FORGE_LATTICE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace forge {

using Int = std::int64_t;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

namespace lattice {

// Overflow-checked arithmetic; throws std::overflow_error.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int floor_div(Int a, Int b);
Int mod(Int a, Int b);  // result in [0, |b|)

struct HermiteForm {
  IntMat h;  // echelon rows, same row count as the input
  IntMat u;  // unimodular, u * a = h
  int rank = 0;
};

// Row-style Hermite normal form: pivots positive, entries above each pivot
// reduced into [0, pivot), zero rows last.
HermiteForm hermite_with_transform(const IntMat& a, int ncols);

// Canonical basis of the lattice spanned by `rows` (zero rows dropped).
IntMat hermite_basis(const IntMat& rows, int ncols);

// Coefficients c with c * basis = v, for `basis` in Hermite form.
std::optional<IntVec> solve_hermite(const IntMat& basis, const IntVec& v);
bool in_lattice(const IntMat& basis, const IntVec& v);

// Coefficients x with x * a = v, for arbitrary generator rows `a`.
std::optional<IntVec> solve(const IntMat& a, const IntVec& v, int ncols);

// Basis of the left kernel {x : x * a = 0}.
IntMat left_kernel(const IntMat& a, int ncols);

// Hermite basis of the intersection of two lattices in Z^n.
IntMat intersect(const IntMat& a, const IntMat& b, int n);

struct SmithForm {
  std::vector<Int> diag;  // min(rows, cols) entries, d_i | d_{i+1}, zeros last
  IntMat u;               // rows x rows
  IntMat v;               // cols x cols, u * a * v = diag
};

SmithForm smith(const IntMat& a, int ncols);

IntMat inverse_unimodular(const IntMat& m);
IntVec row_times(const IntVec& x, const IntMat& m, int ncols);
IntMat identity(int n);

}  // namespace lattice
}  // namespace forge

#endif  // FORGE_LATTICE_HPP_
