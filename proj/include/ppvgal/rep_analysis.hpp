/*
   Copyright 2026 The ppvgal Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppvgal/field.hpp"
#include "ppvgal/matrix.hpp"

namespace ppv {

/// Unital algebra generated by a finite set of square matrices. `basis` is
/// the reduced echelon basis of its span (matrices flattened row-major).
template <class F>
struct MatAlgebra {
  std::vector<Matrix<F>> generators;
  std::vector<Matrix<F>> basis;
  std::size_t dim() const { return basis.size(); }
};

/// 0 = S_0 < S_1 < ... < S_k = V; chain[i] is a basis of S_i.
template <class F>
struct SocleChain {
  std::vector<std::vector<Vec<F>>> chain;
  std::size_t length = 0;
};

namespace detail {

// Incrementally maintained reduced row echelon basis. Keeping the rows fully
// reduced makes them converge to the canonical basis of the span, whose
// entries stay small even when the inserted vectors are large.
template <class F>
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t dim) : dim_(dim) {}

  // Reduces v in place; true when v is independent (then it is stored).
  bool insert(Vec<F>& v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) axpy(v, rows_[k], piv_[k]);
    std::size_t p = 0;
    while (p < dim_ && detail::zero(v[p])) ++p;
    if (p == dim_) return false;
    const F inv = F(1) / v[p];
    for (auto& e : v)
      if (!detail::zero(e)) e *= inv;
    for (auto& r : rows_) axpy(r, v, p);
    rows_.push_back(v);
    piv_.push_back(p);
    return true;
  }
  std::size_t size() const { return rows_.size(); }
  const std::vector<Vec<F>>& rows() const { return rows_; }

 private:
  // v -= v[p] * row, where row[p] = 1.
  void axpy(Vec<F>& v, const Vec<F>& row, std::size_t p) const {
    const F c = v[p];
    if (detail::zero(c)) return;
    for (std::size_t j = 0; j < dim_; ++j)
      if (!detail::zero(row[j])) v[j] -= c * row[j];
  }

  std::size_t dim_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> piv_;
};

template <class F>
std::size_t matrix_weight(const Matrix<F>& m) {
  std::size_t w = 0;
  for (const auto& e : m.data())
    if (!detail::zero(e)) w += pivot_weight(e);
  return w;
}

template <class F>
Vec<F> flatten(const Matrix<F>& m) {
  return m.data();
}

template <class F>
std::size_t common_size(const std::vector<Matrix<F>>& gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  const std::size_t n = gens.front().rows();
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("generators must be square of equal size");
  return n;
}

// Columns of the returned matrix are the given vectors.
template <class F>
Matrix<F> as_columns(const std::vector<Vec<F>>& vs, std::size_t n) {
  Matrix<F> m(n, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = vs[j][i];
  return m;
}

// Rows of the returned matrix span the annihilator {w : w.s = 0 for s in S}.
template <class F>
Matrix<F> left_annihilator(const std::vector<Vec<F>>& s, std::size_t n) {
  if (s.empty()) return Matrix<F>::identity(n);
  Matrix<F> st(s.size(), n);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) st(i, j) = s[i][j];
  auto ker = nullspace(st);
  Matrix<F> q(ker.size(), n);
  for (std::size_t i = 0; i < ker.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = ker[i][j];
  return q;
}

// Action of the generators on an invariant subspace with basis `b`, in that
// basis: g B = B R.
template <class F>
std::vector<Matrix<F>> restrict_to(const std::vector<Matrix<F>>& gens, const std::vector<Vec<F>>& b) {
  const std::size_t n = common_size(gens), k = b.size();
  const Matrix<F> B = as_columns(b, n);
  Echelon<F> e = rref(B.transpose());
  if (e.rank() != k) throw std::invalid_argument("subspace vectors are dependent");
  // Rows e.pivots of B form an invertible k x k block.
  Matrix<F> bp(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) bp(i, j) = B(e.pivots[i], j);
  const Matrix<F> bp_inv = inverse(bp);
  std::vector<Matrix<F>> out;
  for (const auto& g : gens) {
    const Matrix<F> gb = g * B;
    Matrix<F> gp(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) gp(i, j) = gb(e.pivots[i], j);
    Matrix<F> r = bp_inv * gp;
    if (B * r != gb) throw std::invalid_argument("subspace is not invariant");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// Smallest generator-invariant subspace containing the seeds, as a reduced
/// echelon basis.
template <class F>
std::vector<Vec<F>> spin(const std::vector<Matrix<F>>& generators, const std::vector<Vec<F>>& seeds) {
  const std::size_t n = detail::common_size(generators);
  detail::RowEchelon<F> ech(n);
  std::vector<Vec<F>> found;
  auto push = [&](const Vec<F>& v) {
    if (v.size() != n) throw std::invalid_argument("seed dimension mismatch");
    Vec<F> r = v;
    if (ech.insert(r)) found.push_back(v);
  };
  for (const auto& s : seeds) push(s);
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& g : generators) push(g * found[i]);
  return span_basis(found, n);
}

template <class F>
MatAlgebra<F> generate_algebra(const std::vector<Matrix<F>>& generators) {
  const std::size_t n = detail::common_size(generators);
  // Cheap generators first: the span is then mostly found from small
  // products and the large generators reduce against a small basis.
  std::vector<Matrix<F>> gens = generators;
  std::stable_sort(gens.begin(), gens.end(), [](const Matrix<F>& a, const Matrix<F>& b) {
    return detail::matrix_weight(a) < detail::matrix_weight(b);
  });
  detail::RowEchelon<F> ech(n * n);
  std::vector<Matrix<F>> queue;  // inserted vectors; together they span the algebra
  auto push = [&](const Matrix<F>& m) {
    Vec<F> v = detail::flatten(m);
    if (ech.insert(v)) queue.emplace_back(n, n, std::move(v));
  };
  push(Matrix<F>::identity(n));
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) push(g * queue[i]);
  MatAlgebra<F> alg{generators, {}};
  for (const auto& r : ech.rows()) alg.basis.emplace_back(n, n, r);
  return alg;
}

/// Jacobson radical of the algebra: in characteristic zero it is the kernel
/// of the trace form tr(ab) on the basis.
template <class F>
std::vector<Matrix<F>> radical(const MatAlgebra<F>& alg) {
  const std::size_t d = alg.dim();
  if (d == 0) return {};
  const std::size_t n = alg.basis.front().rows();
  std::vector<Vec<F>> tr;  // transposes, flattened
  for (const auto& b : alg.basis) tr.push_back(b.transpose().data());
  Matrix<F> gram(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      F s(0);
      const auto& a = alg.basis[i].data();
      for (std::size_t k = 0; k < n * n; ++k)
        if (!detail::zero(a[k]) && !detail::zero(tr[j][k])) s += a[k] * tr[j][k];
      gram(i, j) = s;
      gram(j, i) = s;
    }
  std::vector<Matrix<F>> out;
  for (const auto& c : nullspace(gram)) {
    Matrix<F> m(n, n);
    for (std::size_t i = 0; i < d; ++i)
      if (!detail::zero(c[i])) m = m + c[i] * alg.basis[i];
    out.push_back(std::move(m));
  }
  return out;
}

/// Socle (Loewy) filtration of the module V under the generated algebra.
/// `subspace` is a basis of an invariant subspace V; empty means the whole
/// space. Chain vectors are returned in ambient coordinates.
template <class F>
SocleChain<F> socle_filtration(const std::vector<Matrix<F>>& generators,
                               const std::vector<Vec<F>>& subspace = {}) {
  const std::size_t n = detail::common_size(generators);
  const std::vector<Matrix<F>> gens = subspace.empty() ? generators : detail::restrict_to(generators, subspace);
  const std::size_t k = subspace.empty() ? n : subspace.size();
  const std::vector<Matrix<F>> rad = radical(generate_algebra(gens));

  auto lift = [&](const std::vector<Vec<F>>& vs) {
    if (subspace.empty()) return vs;
    const Matrix<F> B = detail::as_columns(subspace, n);
    std::vector<Vec<F>> out;
    for (const auto& v : vs) out.push_back(B * v);
    return span_basis(out, n);
  };

  SocleChain<F> sc;
  std::vector<Vec<F>> cur;
  sc.chain.push_back({});
  while (cur.size() < k) {
    // S_{i+1} = {v : J v in S_i}.
    const Matrix<F> q = detail::left_annihilator(cur, k);
    Matrix<F> stacked(q.rows() * rad.size(), k);
    for (std::size_t r = 0; r < rad.size(); ++r) stacked.set_block(r * q.rows(), 0, q * rad[r]);
    std::vector<Vec<F>> next = rad.empty() ? std::vector<Vec<F>>{} : nullspace(stacked);
    if (rad.empty())
      for (std::size_t i = 0; i < k; ++i) {
        Vec<F> e(k, F(0));
        e[i] = F(1);
        next.push_back(std::move(e));
      }
    next = span_basis(next, k);
    if (next.size() <= cur.size()) throw std::logic_error("socle filtration stalled");
    cur = std::move(next);
    sc.chain.push_back(lift(cur));
  }
  sc.length = sc.chain.size() - 1;
  return sc;
}

/// Complete reducibility of the module under the generated algebra.
template <class F>
bool is_semisimple(const std::vector<Matrix<F>>& generators) {
  for (const auto& j : radical(generate_algebra(generators)))
    if (!j.is_zero()) return false;
  return true;
}

/// True when every vector of `a` lies in span(b).
template <class F>
bool subspace_contained(const std::vector<Vec<F>>& a, const std::vector<Vec<F>>& b, std::size_t n) {
  std::vector<Vec<F>> all = b;
  all.insert(all.end(), a.begin(), a.end());
  return span_basis(all, n).size() == span_basis(b, n).size();
}

/// A sampled point g of SL2 over Q(eps) together with dg/deps.
struct Jet {
  Matrix<ParamRat> g;
  Matrix<ParamRat> dg;
};

inline Matrix<ParamRat> derive_t(const Matrix<ParamRat>& m) {
  return m.map([](const ParamRat& c) { return c.derivative(); });
}

/// Deterministic SL2 jets. The first two samples are the elementary
/// generators [[1,eps],[0,1]] and [[1,0],[eps,1]]; the rest are products of
/// two to four elementary factors drawn from `seed`.
inline std::vector<Jet> sample_sl2_jets(std::size_t count, std::uint32_t seed) {
  if (count == 0) throw std::invalid_argument("count must be positive");
  const ParamRat e = param_t();
  const std::vector<ParamRat> pool{e, ParamRat(1) + e, ParamRat(1) / (ParamRat(1) + e), e * e};
  auto upper = [](const ParamRat& p) { return Matrix<ParamRat>(2, 2, {ParamRat(1), p, ParamRat(0), ParamRat(1)}); };
  auto lower = [](const ParamRat& q) { return Matrix<ParamRat>(2, 2, {ParamRat(1), ParamRat(0), q, ParamRat(1)}); };
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(2, 4), side(0, 1);
  std::vector<Jet> out;
  for (std::size_t s = 0; s < count; ++s) {
    Matrix<ParamRat> g;
    if (s == 0) {
      g = upper(e);
    } else if (s == 1) {
      g = lower(e);
    } else {
      g = Matrix<ParamRat>::identity(2);
      bool up = side(rng) == 0;
      for (int k = len(rng); k > 0; --k, up = !up) g = g * (up ? upper(pool[pick(rng)]) : lower(pool[pick(rng)]));
    }
    out.push_back({g, derive_t(g)});
  }
  return out;
}

enum class RepTemplate {
  Prolongation,          // (a): g -> [[g, g'], [0, g]]
  FiveDim,               // (b): the 5-dimensional representation on quadrics
  IteratedProlongation,  // (c): P^n of the standard representation
};

inline RepTemplate parse_template(const std::string& s) {
  if (s == "a") return RepTemplate::Prolongation;
  if (s == "b") return RepTemplate::FiveDim;
  if (s == "pn") return RepTemplate::IteratedProlongation;
  throw std::invalid_argument("unknown template '" + s + "' (expected a, b or pn)");
}

namespace detail {
inline Matrix<ParamRat> prolong_rep(const Matrix<ParamRat>& m, const Matrix<ParamRat>& dm) {
  const std::size_t k = m.rows();
  Matrix<ParamRat> out(2 * k, 2 * k);
  out.set_block(0, 0, m);
  out.set_block(0, k, dm);
  out.set_block(k, k, m);
  return out;
}
}  // namespace detail

/// Image of the jet under a template. `n` is the prolongation depth for the
/// iterated template and is ignored otherwise.
inline Matrix<ParamRat> build_rep_matrix(RepTemplate tpl, const Matrix<ParamRat>& g, const Matrix<ParamRat>& dg,
                                         int n = 1) {
  if (g.rows() != 2 || g.cols() != 2 || dg.rows() != 2 || dg.cols() != 2)
    throw std::invalid_argument("jets are 2x2");
  switch (tpl) {
    case RepTemplate::Prolongation:
      return detail::prolong_rep(g, dg);
    case RepTemplate::FiveDim: {
      const ParamRat &a = g(0, 0), &b = g(0, 1), &c = g(1, 0), &d = g(1, 1);
      const ParamRat &da = dg(0, 0), &db = dg(0, 1), &dc = dg(1, 0), &dd = dg(1, 1);
      const ParamRat z(0), one(1), two(2);
      return Matrix<ParamRat>(5, 5, {one, da * c - a * dc, da * d - b * dc, db * d - b * dd, da * dd - db * dc,
                                     z, a * a, a * b, b * b, a * db - da * b,
                                     z, two * a * c, a * d + b * c, two * b * d, two * (a * dd - b * dc),
                                     z, c * c, c * d, d * d, c * dd - dc * d,
                                     z, z, z, z, one});
    }
    case RepTemplate::IteratedProlongation: {
      if (n < 0) throw std::invalid_argument("prolongation depth must be non-negative");
      Matrix<ParamRat> m = g;
      for (int i = 0; i < n; ++i) m = detail::prolong_rep(m, i == 0 ? dg : derive_t(m));
      return m;
    }
  }
  throw std::invalid_argument("unknown template");
}

/// Images of all jets under a template.
inline std::vector<Matrix<ParamRat>> rep_images(RepTemplate tpl, const std::vector<Jet>& jets, int n = 1) {
  std::vector<Matrix<ParamRat>> out;
  for (const auto& j : jets) out.push_back(build_rep_matrix(tpl, j.g, j.dg, n));
  return out;
}

}  // namespace ppv
