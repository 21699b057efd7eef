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

#include "forge/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace forge::lattice {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod(Int a, Int b) {
  if (b < 0) b = -b;
  Int r = a % b;
  return r < 0 ? r + b : r;
}

namespace {

// row[dst] -= q * row[src]
void row_sub(IntMat& m, int dst, int src, Int q) {
  if (q == 0) return;
  for (size_t j = 0; j < m[dst].size(); ++j) {
    m[dst][j] = checked_add(m[dst][j], -checked_mul(q, m[src][j]));
  }
}

void col_sub(IntMat& m, int dst, int src, Int q) {
  if (q == 0) return;
  for (auto& row : m) row[dst] = checked_add(row[dst], -checked_mul(q, row[src]));
}

void negate_row(IntMat& m, int i) {
  for (auto& x : m[i]) x = -x;
}

void swap_cols(IntMat& m, int a, int b) {
  if (a == b) return;
  for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

IntMat identity(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

HermiteForm hermite_with_transform(const IntMat& a, int ncols) {
  HermiteForm hf;
  hf.h = a;
  for (auto& row : hf.h) {
    if (static_cast<int>(row.size()) != ncols) throw std::invalid_argument("row length mismatch");
  }
  const int m = static_cast<int>(a.size());
  hf.u = identity(m);
  int r = 0;
  for (int c = 0; c < ncols && r < m; ++c) {
    bool have_pivot = false;
    while (true) {
      int best = -1;
      for (int i = r; i < m; ++i) {
        if (hf.h[i][c] != 0 && (best < 0 || std::llabs(hf.h[i][c]) < std::llabs(hf.h[best][c]))) best = i;
      }
      if (best < 0) break;
      have_pivot = true;
      std::swap(hf.h[r], hf.h[best]);
      std::swap(hf.u[r], hf.u[best]);
      bool clean = true;
      for (int i = r + 1; i < m; ++i) {
        if (hf.h[i][c] == 0) continue;
        Int q = floor_div(hf.h[i][c], hf.h[r][c]);
        row_sub(hf.h, i, r, q);
        row_sub(hf.u, i, r, q);
        if (hf.h[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (!have_pivot) continue;
    if (hf.h[r][c] < 0) {
      negate_row(hf.h, r);
      negate_row(hf.u, r);
    }
    for (int i = 0; i < r; ++i) {
      Int q = floor_div(hf.h[i][c], hf.h[r][c]);
      row_sub(hf.h, i, r, q);
      row_sub(hf.u, i, r, q);
    }
    ++r;
  }
  hf.rank = r;
  return hf;
}

IntMat hermite_basis(const IntMat& rows, int ncols) {
  HermiteForm hf = hermite_with_transform(rows, ncols);
  hf.h.resize(hf.rank);
  return hf.h;
}

std::optional<IntVec> solve_hermite(const IntMat& basis, const IntVec& v) {
  IntVec w = v;
  IntVec coeff(basis.size(), 0);
  for (size_t i = 0; i < basis.size(); ++i) {
    size_t p = 0;
    while (p < basis[i].size() && basis[i][p] == 0) ++p;
    if (p == basis[i].size()) continue;
    if (w[p] % basis[i][p] != 0) return std::nullopt;
    Int c = w[p] / basis[i][p];
    coeff[i] = c;
    for (size_t j = 0; j < w.size(); ++j) w[j] = checked_add(w[j], -checked_mul(c, basis[i][j]));
  }
  for (Int x : w) {
    if (x != 0) return std::nullopt;
  }
  return coeff;
}

bool in_lattice(const IntMat& basis, const IntVec& v) { return solve_hermite(basis, v).has_value(); }

IntVec row_times(const IntVec& x, const IntMat& m, int ncols) {
  IntVec out(ncols, 0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < ncols; ++j) out[j] = checked_add(out[j], checked_mul(x[i], m[i][j]));
  }
  return out;
}

std::optional<IntVec> solve(const IntMat& a, const IntVec& v, int ncols) {
  if (a.empty()) {
    for (Int x : v) {
      if (x != 0) return std::nullopt;
    }
    return IntVec{};
  }
  HermiteForm hf = hermite_with_transform(a, ncols);
  IntMat top(hf.h.begin(), hf.h.begin() + hf.rank);
  auto c = solve_hermite(top, v);
  if (!c) return std::nullopt;
  IntMat utop(hf.u.begin(), hf.u.begin() + hf.rank);
  return row_times(*c, utop, static_cast<int>(a.size()));
}

IntMat left_kernel(const IntMat& a, int ncols) {
  const int m = static_cast<int>(a.size());
  if (m == 0) return {};
  HermiteForm hf = hermite_with_transform(a, ncols);
  IntMat k(hf.u.begin() + hf.rank, hf.u.end());
  return hermite_basis(k, m);
}

IntMat intersect(const IntMat& a, const IntMat& b, int n) {
  if (a.empty() || b.empty()) return {};
  IntMat stacked = a;
  stacked.insert(stacked.end(), b.begin(), b.end());
  IntMat k = left_kernel(stacked, n);
  IntMat vecs;
  for (const auto& row : k) {
    IntVec head(row.begin(), row.begin() + a.size());
    vecs.push_back(row_times(head, a, n));
  }
  return hermite_basis(vecs, n);
}

SmithForm smith(const IntMat& a, int ncols) {
  const int m = static_cast<int>(a.size());
  IntMat d = a;
  SmithForm sf;
  sf.u = identity(m);
  sf.v = identity(ncols);
  const int t_end = std::min(m, ncols);
  for (int t = 0; t < t_end; ++t) {
    while (true) {
      int bi = -1, bj = -1;
      for (int i = t; i < m; ++i) {
        for (int j = t; j < ncols; ++j) {
          if (d[i][j] != 0 && (bi < 0 || std::llabs(d[i][j]) < std::llabs(d[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi < 0) break;
      std::swap(d[t], d[bi]);
      std::swap(sf.u[t], sf.u[bi]);
      swap_cols(d, t, bj);
      swap_cols(sf.v, t, bj);
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (d[i][t] == 0) continue;
        Int q = floor_div(d[i][t], d[t][t]);
        row_sub(d, i, t, q);
        row_sub(sf.u, i, t, q);
        if (d[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < ncols; ++j) {
        if (d[t][j] == 0) continue;
        Int q = floor_div(d[t][j], d[t][t]);
        col_sub(d, j, t, q);
        col_sub(sf.v, j, t, q);
        if (d[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i) {
        for (int j = t + 1; j < ncols; ++j) {
          if (d[i][j] % d[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad < 0) break;
      row_sub(d, t, bad, -1);
      row_sub(sf.u, t, bad, -1);
    }
    if (d[t][t] < 0) {
      negate_row(d, t);
      negate_row(sf.u, t);
    }
  }
  sf.diag.resize(t_end);
  for (int t = 0; t < t_end; ++t) sf.diag[t] = d[t][t];
  return sf;
}

IntMat inverse_unimodular(const IntMat& m) {
  const int n = static_cast<int>(m.size());
  HermiteForm hf = hermite_with_transform(m, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (hf.h[i][j] != (i == j ? 1 : 0)) throw std::invalid_argument("matrix is not unimodular");
    }
  }
  return hf.u;
}

}  // namespace forge::lattice
