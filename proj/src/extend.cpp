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

#include "forge/extend.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "forge/errors.hpp"

namespace forge {

namespace {

PointMap match_by_name(const UStructure& a, const UStructure& b, const char* what) {
  PointMap m(a.size());
  for (int i = 0; i < a.size(); ++i) {
    m[i] = b.index_of(a.name(i));
    if (m[i] < 0) throw InputError(std::string(what) + " lacks point '" + a.name(i) + "'");
  }
  return m;
}

void require_valid(const Action& pi) {
  auto issues = validate_action(pi);
  if (!issues.empty()) throw InputError("invalid action: " + issues.front().message);
}

std::string coords_suffix(const GroupElement& e) {
  std::string s;
  for (size_t i = 0; i < e.coords.size(); ++i) s += (i ? "," : "") + std::to_string(e.coords[i]);
  return s;
}

}  // namespace

Perm combine_images(const std::vector<Perm>& images, const IntVec& coeffs, int npoints) {
  Perm out = perm::identity(npoints);
  for (size_t j = 0; j < images.size(); ++j) {
    if (coeffs[j] != 0) out = perm::compose(perm::power(images[j], coeffs[j]), out);
  }
  return out;
}

ExtensionResult one_point_extension(const UStructure& b, const Action& pi, const PointMap& a_in_b) {
  const UStructure& a = pi.space();
  require_valid(pi);
  if (b.size() != a.size() + 1) throw InputError("B must add exactly one point to A");
  if (!is_embedding(a, b, a_in_b)) throw InputError("A does not embed into B");
  std::vector<char> hit(b.size(), 0);
  for (int x : a_in_b) hit[x] = 1;
  const int bi = static_cast<int>(std::find(hit.begin(), hit.end(), 0) - hit.begin());
  const FgAbelianGroup& gamma = pi.group();

  CosetData cd;
  cd.delta = quotient(gamma, kernel_of_permutation_images(gamma, pi.images()));
  cd.elements = cd.delta.group().elements();
  std::map<GroupElement, int> pos;
  for (size_t i = 0; i < cd.elements.size(); ++i) pos[cd.elements[i]] = static_cast<int>(i);

  std::vector<PointId> names = a.points();
  std::set<PointId> used(names.begin(), names.end());
  std::vector<PointId> coset_names;
  for (const auto& e : cd.elements) {
    PointId n = cd.delta.group().is_zero(e) ? b.name(bi) : b.name(bi) + "@" + coords_suffix(e);
    while (used.count(n)) n += "'";
    used.insert(n);
    coset_names.push_back(n);
    names.push_back(n);
  }
  UStructure c(a.signature(), names);
  const int n = c.size();
  cd.a_in_c = match_by_name(a, c, "extension");
  for (const auto& nm : coset_names) cd.points.push_back(c.index_of(nm));

  std::vector<Perm> imgs(gamma.dim(), Perm(n));
  for (int i = 0; i < gamma.dim(); ++i) {
    for (int x = 0; x < a.size(); ++x) imgs[i][cd.a_in_c[x]] = cd.a_in_c[pi.images()[i][x]];
    const GroupElement step = cd.delta.project(gamma.generator(i));
    for (size_t k = 0; k < cd.elements.size(); ++k) {
      imgs[i][cd.points[k]] = cd.points[pos.at(cd.delta.group().add(cd.elements[k], step))];
    }
  }

  PointMap b_to_c(b.size());
  for (int x = 0; x < a.size(); ++x) b_to_c[a_in_b[x]] = cd.a_in_c[x];
  b_to_c[bi] = cd.points[0];
  PointMap b_to_a(b.size(), -1);
  for (int x = 0; x < a.size(); ++x) b_to_a[a_in_b[x]] = x;

  // P^C holds iff some group element moves the tuple into a P^B tuple.
  for (size_t r = 0; r < a.signature().relations.size(); ++r) {
    std::set<Tuple> seeds;
    for (const auto& t : b.tuples(static_cast<int>(r))) {
      Tuple u;
      for (int x : t) u.push_back(b_to_c[x]);
      seeds.insert(u);
    }
    for (const auto& t : tuple_orbit_closure(seeds, imgs)) c.add_tuple(static_cast<int>(r), t);
  }

  for (size_t s = 0; s < a.signature().labels.size(); ++s) {
    const int si = static_cast<int>(s);
    int w = -1;
    for (int x = 0; x < a.size() && w < 0; ++x) {
      if (b.equiv(si, a_in_b[x], bi)) w = x;
    }
    cd.witness.push_back(w);
    std::vector<std::pair<int, int>> pairs;
    for (const auto& cls : a.class_lists(si)) {
      for (size_t k = 1; k < cls.size(); ++k) pairs.emplace_back(cd.a_in_c[cls[0]], cd.a_in_c[cls[k]]);
    }
    if (w >= 0) {
      for (size_t k = 0; k < cd.elements.size(); ++k) {
        const int moved = apply(pi, cd.delta.section(cd.elements[k]), w);
        pairs.emplace_back(cd.points[k], cd.a_in_c[moved]);
      }
    }
    c.set_partition(si, invariant_equivalence(n, {}, pairs));
  }

  ExtensionResult res;
  res.space = c;
  res.action = Action(gamma, c, imgs);
  res.inclusion = b_to_c;
  res.cosets = std::move(cd);
  return res;
}

ExtensionResult one_point_extension(const UStructure& b, const Action& pi) {
  return one_point_extension(b, pi, match_by_name(pi.space(), b, "B"));
}

std::vector<std::vector<int>> coset_formula_classes(const ExtensionResult& r, const Action& pi, int label) {
  if (!r.cosets) throw InputError("result carries no coset data");
  const CosetData& cd = *r.cosets;
  const UStructure& a = pi.space();
  const FgAbelianGroup& dg = cd.delta.group();
  std::map<GroupElement, int> pos;
  for (size_t i = 0; i < cd.elements.size(); ++i) pos[cd.elements[i]] = static_cast<int>(i);
  auto act = [&](const GroupElement& d, int x) { return apply(pi, cd.delta.section(d), x); };
  auto a_class = [&](int x) {
    std::vector<int> out;
    for (int y = 0; y < a.size(); ++y) {
      if (a.equiv(label, x, y)) out.push_back(cd.a_in_c[y]);
    }
    return out;
  };
  std::set<std::vector<int>> classes;
  const int w = cd.witness.at(label);
  if (w < 0) {
    for (int x = 0; x < a.size(); ++x) {
      auto cls = a_class(x);
      std::sort(cls.begin(), cls.end());
      classes.insert(cls);
    }
    for (int p : cd.points) classes.insert({p});
  } else {
    for (const auto& d : cd.elements) {
      std::vector<int> cls = a_class(act(d, w));
      for (const auto& s : cd.elements) {
        if (a.equiv(label, act(s, w), w)) cls.push_back(cd.points[pos.at(dg.add(d, s))]);
      }
      std::sort(cls.begin(), cls.end());
      cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
      classes.insert(cls);
    }
    for (int x = 0; x < a.size(); ++x) {
      bool avoids = true;
      for (const auto& d : cd.elements) {
        if (a.equiv(label, act(d, x), w)) avoids = false;
      }
      if (!avoids) continue;
      auto cls = a_class(x);
      std::sort(cls.begin(), cls.end());
      classes.insert(cls);
    }
  }
  return {classes.begin(), classes.end()};
}

ExtensionResult extend_action_through(const UStructure& b, const Action& pi, const PointMap& a_in_b) {
  require_valid(pi);
  if (!is_embedding(pi.space(), b, a_in_b)) throw InputError("A does not embed into B");
  if (auto v = validate(b); !v.empty()) throw InputError("B is invalid: " + v.front().message);
  std::vector<int> covered(a_in_b.begin(), a_in_b.end());
  std::vector<char> is_covered(b.size(), 0);
  for (int x : covered) is_covered[x] = 1;
  // B index -> index in the current space.
  PointMap inc(b.size(), -1);
  for (int x = 0; x < pi.space().size(); ++x) inc[a_in_b[x]] = x;
  Action cur = pi;
  for (int u = 0; u < b.size(); ++u) {
    if (is_covered[u]) continue;
    std::sort(covered.begin(), covered.end());
    UStructure bk = b.induced(covered);
    std::vector<int> next = covered;
    next.push_back(u);
    std::sort(next.begin(), next.end());
    UStructure bk1 = b.induced(next);
    PointMap to_cur(bk.size()), to_next(bk.size());
    for (int i = 0; i < bk.size(); ++i) {
      const int bidx = b.index_of(bk.name(i));
      to_cur[i] = inc[bidx];
      to_next[i] = bk1.index_of(bk.name(i));
    }
    AmalgamOptions opts;
    opts.tags = {"#c", "#b"};
    opts.bare_if_unique = true;
    auto am = free_amalgam(bk, {{cur.space(), to_cur}, {bk1, to_next}}, opts);
    ExtensionResult step = one_point_extension(am.d, cur, am.phis[0]);
    for (int x : covered) inc[x] = step.inclusion[am.phis[0][inc[x]]];
    inc[u] = step.inclusion[am.phis[1][bk1.index_of(b.name(u))]];
    covered.push_back(u);
    is_covered[u] = 1;
    cur = step.action;
  }
  ExtensionResult res;
  res.space = cur.space();
  res.action = cur;
  res.inclusion = inc;
  return res;
}

ExtensionResult extend_action_through(const UStructure& b, const Action& pi) {
  return extend_action_through(b, pi, match_by_name(pi.space(), b, "B"));
}

RootResult root_extension(const RootProblem& p) {
  const FgAbelianGroup& gamma = p.pi.group();
  const UStructure& a = p.pi.space();
  const UStructure& b = p.b;
  const int m = static_cast<int>(p.delta.size());
  const int dim = gamma.dim();
  require_valid(p.pi);
  for (const auto& d : p.delta) gamma.check_element(d);
  gamma.check_element(p.g);
  if (static_cast<int>(p.sigma.size()) != m) throw InputError("one image on B per Delta generator required");
  const FgAbelianGroup free_m(m, {});
  Action sigma(free_m, b, p.sigma);
  if (auto v = validate_action(sigma); !v.empty()) throw InputError("invalid Delta action: " + v.front().message);
  const PointMap a_in_b = match_by_name(a, b, "B");
  if (!is_embedding(a, b, a_in_b)) throw InputError("A is not an induced substructure of B");

  std::vector<Perm> pi_delta;
  for (const auto& d : p.delta) pi_delta.push_back(p.pi.element_image(d));
  for (int j = 0; j < m; ++j) {
    for (int x = 0; x < a.size(); ++x) {
      if (p.sigma[j][a_in_b[x]] != a_in_b[pi_delta[j][x]]) {
        throw PreconditionError("Delta action on B does not extend the action on A at '" + a.name(x) + "'");
      }
    }
  }
  IntMat rows;
  for (const auto& d : p.delta) rows.push_back(d.coords);
  const IntMat rel = gamma.relation_rows();
  IntMat delta_rel = rows;
  delta_rel.insert(delta_rel.end(), rel.begin(), rel.end());
  for (const auto& k : lattice::left_kernel(delta_rel, dim)) {
    IntVec c(k.begin(), k.begin() + m);
    if (!perm::is_identity(combine_images(p.sigma, c, b.size()))) {
      throw PreconditionError("Delta action on B violates a relation among the Delta generators");
    }
  }

  RootResult res;
  const Perm gpi = p.pi.element_image(p.g);
  QuotientGroup q = quotient(gamma, Subgroup::generated(gamma, p.delta));
  auto ord = q.group().element_order(q.project(p.g));
  if (ord) {
    if (p.order_override) throw InputError("an order override applies only when g has infinite order modulo Delta");
    res.n = *ord;
    IntVec target = gamma.scale(p.g, res.n).coords;
    auto sol = lattice::solve(delta_rel, target, dim);
    if (!sol) throw ViolationError("g^n is not a combination of the Delta generators");
    res.theta.assign(sol->begin(), sol->begin() + m);
  } else {
    res.infinite_case = true;
    const Int d0 = perm::order(gpi);
    res.n = p.order_override.value_or(d0);
    if (res.n <= 0 || res.n % d0 != 0) {
      throw InputError("order override must be a positive multiple of " + std::to_string(d0));
    }
    res.theta.assign(m, 0);
  }
  if (res.n > 4096) throw InputError("root order " + std::to_string(res.n) + " is too large");
  const int n = static_cast<int>(res.n);

  std::vector<AmalgamPart> parts;
  AmalgamOptions opts;
  for (int j = 0; j < n; ++j) {
    const Perm back = perm::power(gpi, -j);
    PointMap iota(a.size());
    for (int x = 0; x < a.size(); ++x) iota[x] = a_in_b[back[x]];
    parts.push_back({b, iota});
    opts.tags.push_back(j == 0 ? "" : "#" + std::to_string(j));
  }
  res.copies = free_amalgam(a, parts, opts);
  const UStructure& dsp = res.copies.d;
  const int nd = dsp.size();
  Action pi_d(free_m, a, pi_delta);
  Action rho = amalgamated_action(pi_d, std::vector<Action>(n, sigma), res.copies);
  res.space = dsp;
  res.delta_action = rho;

  const Perm theta_b = combine_images(p.sigma, res.theta, b.size());
  std::vector<char> in_a(b.size(), 0);
  for (int x : a_in_b) in_a[x] = 1;
  Perm h(nd, -1);
  for (int x = 0; x < a.size(); ++x) h[res.copies.psi[x]] = res.copies.psi[gpi[x]];
  for (int j = 0; j < n; ++j) {
    for (int x = 0; x < b.size(); ++x) {
      if (in_a[x]) continue;
      h[res.copies.phis[j][x]] = j + 1 < n ? res.copies.phis[j + 1][x] : res.copies.phis[0][theta_b[x]];
    }
  }
  res.root = h;
  res.theta_image = combine_images(rho.images(), res.theta, nd);

  // Gamma acts by rho on Delta and by h on g.
  IntMat gen_rows = rows;
  gen_rows.push_back(p.g.coords);
  gen_rows.insert(gen_rows.end(), rel.begin(), rel.end());
  std::vector<Perm> with_h = rho.images();
  with_h.push_back(h);
  for (const auto& k : lattice::left_kernel(gen_rows, dim)) {
    IntVec c(k.begin(), k.begin() + m + 1);
    if (!perm::is_identity(combine_images(with_h, c, nd))) {
      throw ViolationError("assembled action violates a relation of Gamma");
    }
  }
  std::vector<Perm> imgs;
  for (int i = 0; i < dim; ++i) {
    auto sol = lattice::solve(gen_rows, gamma.generator(i).coords, dim);
    if (!sol) throw InputError("Delta and g do not generate the group");
    imgs.push_back(combine_images(with_h, IntVec(sol->begin(), sol->begin() + m + 1), nd));
  }
  res.gamma_action = Action(gamma, dsp, imgs);
  if (auto v = validate_action(res.gamma_action); !v.empty()) {
    throw ViolationError("assembled action is invalid: " + v.front().message);
  }
  return res;
}

WapWitness wap_witness(const Action& pi_hat, const Action& theta, const Action& tau) {
  require_valid(pi_hat);
  require_valid(theta);
  require_valid(tau);
  const UStructure& a = pi_hat.space();
  PointMap ib = match_by_name(a, theta.space(), "B");
  PointMap ic = match_by_name(a, tau.space(), "C");
  AmalgamOptions opts;
  opts.tags = {"#b", "#c"};
  opts.bare_if_unique = true;
  WapWitness w;
  w.amalgam = free_amalgam(a, {{theta.space(), ib}, {tau.space(), ic}}, opts);
  w.rho = amalgamated_action(pi_hat, {theta, tau}, w.amalgam);
  w.e_b = w.amalgam.phis[0];
  w.e_c = w.amalgam.phis[1];
  return w;
}

}  // namespace forge
