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
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppvgal/kovacic.hpp"
#include "ppvgal/op_matrix.hpp"

namespace ppv {

enum class Verdict { Yes, No, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

/// The system dY/dx = A Y together with the parameter derivations acting on
/// its coefficients.
struct DiffModule {
  Matrix<RF> A;
  std::vector<DerivationTag> param_tags{DerivationTag::Dt};

  DiffModule() = default;
  explicit DiffModule(Matrix<RF> a, std::vector<DerivationTag> tags = {DerivationTag::Dt})
      : A(std::move(a)), param_tags(std::move(tags)) {
    if (!A.is_square()) throw std::invalid_argument("DiffModule: matrix must be square");
    for (auto d : param_tags)
      if (d == DerivationTag::Dx) throw std::invalid_argument("DiffModule: x is not a parameter");
  }

  std::size_t dim() const { return A.rows(); }
  friend bool operator==(const DiffModule& a, const DiffModule& b) { return a.A == b.A; }
};

/// r = b^2/4 + b'/2 - c and a = b/2 for y'' + b y' + c y = 0, so that
/// y = z exp(-int a) turns it into z'' = r z.
struct Sl2Reduction {
  RF r, a;
};

inline Sl2Reduction sl2_reduction_substitution(const RF& b, const RF& c) {
  return {b * b / RF(4) + b.derivative() / RF(2) - c, b / RF(2)};
}

/// Coefficients (b, c) of the scalar equation y'' + b y' + c y = 0 satisfied
/// by the first coordinate of solutions of Y' = B Y (B 2x2, B(0,1) != 0).
inline std::pair<RF, RF> cyclic_coefficients(const Matrix<RF>& B) {
  const RF &b11 = B(0, 0), &b12 = B(0, 1), &b21 = B(1, 0), &b22 = B(1, 1);
  if (b12.is_zero()) throw std::invalid_argument("cyclic_coefficients: e1 is not cyclic");
  const RF l12 = b12.derivative() / b12;
  return {-(b11 + b22 + l12), b11 * b22 - b12 * b21 - b11.derivative() + b11 * l12};
}

/// Matrix of y'' + b y' + c y = 0 acting on (y, y').
inline Matrix<RF> companion_matrix(const RF& b, const RF& c) { return Matrix<RF>(2, 2, {RF(), RF(1), -c, -b}); }

inline Matrix<RF> gauge_matrix(const Matrix<RF>& A, const Matrix<RF>& C) {
  if (!A.is_square() || C.rows() != A.rows() || !C.is_square())
    throw std::invalid_argument("gauge: dimension mismatch");
  if (determinant(C).is_zero()) throw std::invalid_argument("gauge: singular matrix");
  Matrix<RF> Ci = inverse(C);
  return Ci * A * C - Ci * derive(C, DerivationTag::Dx);
}

/// C^-1 A C - C^-1 C'.
inline DiffModule gauge(const DiffModule& M, const Matrix<RF>& C) { return DiffModule(gauge_matrix(M.A, C), M.param_tags); }

/// [[C, dC],[0, C]]: the gauge induced on a prolongation.
inline Matrix<RF> prolong_matrix(const Matrix<RF>& C, DerivationTag d) {
  if (d == DerivationTag::Dx) throw std::invalid_argument("prolong: x is not a parameter");
  const std::size_t n = C.rows();
  Matrix<RF> P(2 * n, 2 * C.cols());
  P.set_block(0, 0, C);
  P.set_block(0, C.cols(), derive(C, d));
  P.set_block(n, C.cols(), C);
  return P;
}

inline DiffModule prolong(const DiffModule& M, DerivationTag d) {
  if (d == DerivationTag::Dx) throw std::invalid_argument("prolong: x is not a parameter");
  return DiffModule(prolong_matrix(M.A, d), M.param_tags);
}

inline DiffModule total_prolong(const DiffModule& M, int s) {
  if (s < 0) throw std::invalid_argument("total_prolong: negative order");
  DiffModule out = M;
  for (auto d : M.param_tags)
    for (int k = 0; k < s; ++k) out = prolong(out, d);
  return out;
}

inline DiffModule dsum(const DiffModule& M, const DiffModule& N) { return DiffModule(block_diag(M.A, N.A), M.param_tags); }

/// Basis e_i (x) f_j in row-major order, left factor first.
inline DiffModule tensor(const DiffModule& M, const DiffModule& N) {
  return DiffModule(kronecker(M.A, Matrix<RF>::identity(N.dim())) + kronecker(Matrix<RF>::identity(M.dim()), N.A),
                    M.param_tags);
}

inline DiffModule dual(const DiffModule& M) { return DiffModule(-M.A.transpose(), M.param_tags); }

/// Block structure of a reduced matrix: block index of every coordinate.
inline std::vector<std::size_t> block_index(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> idx;
  for (std::size_t b = 0; b < dims.size(); ++b) idx.insert(idx.end(), dims[b], b);
  return idx;
}

inline bool is_block_upper_triangular(const Matrix<RF>& T, const std::vector<std::size_t>& dims) {
  auto idx = block_index(dims);
  if (idx.size() != T.rows()) return false;
  for (std::size_t i = 0; i < T.rows(); ++i)
    for (std::size_t j = 0; j < T.cols(); ++j)
      if (idx[i] > idx[j] && !T(i, j).is_zero()) return false;
  return true;
}

struct FlagBlock {
  std::size_t dim = 1;
  bool certified = true;  // irreducibility proved, not only "within search"
  std::string method;
};

/// C^-1 A C - C^-1 C' = reduced is block upper triangular with the given
/// diagonal block sizes.
struct Flag {
  Matrix<RF> gauge;
  Matrix<RF> reduced;
  std::vector<FlagBlock> blocks;

  std::vector<std::size_t> block_dims() const {
    std::vector<std::size_t> d;
    for (const auto& b : blocks) d.push_back(b.dim);
    return d;
  }
  bool all_certified() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const FlagBlock& b) { return b.certified; });
  }
};

namespace detail {

/// Strongly connected components of the pattern graph i -> j (A(i,j) != 0),
/// listed so that every edge goes from an earlier component to a later one.
inline std::vector<std::vector<std::size_t>> pattern_components(const Matrix<RF>& A) {
  const std::size_t n = A.rows();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v || A(v, w).is_zero()) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(comp);
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  // Tarjan emits sinks first.
  std::reverse(comps.begin(), comps.end());
  return comps;
}

/// A vector v and lambda with v' = (B - lambda) v, i.e. an invariant line.
struct InvariantLine {
  std::vector<RF> v;
  RF lambda;
};

struct LineSearch {
  std::optional<InvariantLine> line;
  bool certified = false;
  std::string method;
};

inline LineSearch find_invariant_line(const Matrix<RF>& B) {
  const std::size_t n = B.rows();
  LineSearch out;
  if (n == 2 && !B(0, 1).is_zero()) {
    auto [b, c] = cyclic_coefficients(B);
    Sl2Reduction red = sl2_reduction_substitution(b, c);
    RiccatiSearch rs = riccati_rational(red.r);
    out.method = "riccati";
    if (rs.solution) {
      RF w = *rs.solution - b / RF(2);
      out.line = InvariantLine{{RF(1), (w - B(0, 0)) / B(0, 1)}, w};
      return out;
    }
    out.certified = rs.decided;
    if (!rs.note.empty()) out.method += " (" + rs.note + ")";
    return out;
  }
  // Larger blocks: rational solutions of Y' = (B - lambda) Y for a few
  // candidate lambda; never certifies irreducibility.
  out.method = "rational-solution search";
  std::vector<RF> lambdas{RF()};
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(lambdas.begin(), lambdas.end(), B(i, i)) == lambdas.end()) lambdas.push_back(B(i, i));
  for (const auto& lam : lambdas) {
    Matrix<RF> S = -(B - lam * Matrix<RF>::identity(n));
    SystemSolutionBasis sb = param_system_solve(S, {});
    if (!sb.elements.empty()) {
      out.line = InvariantLine{sb.elements.front().Z, lam};
      return out;
    }
  }
  return out;
}

struct FlagPart {
  Matrix<RF> C;
  std::vector<FlagBlock> blocks;
};

inline FlagPart factor_rec(const Matrix<RF>& B) {
  const std::size_t n = B.rows();
  if (n == 1) return {Matrix<RF>::identity(1), {FlagBlock{1, true, "rank one"}}};

  auto comps = pattern_components(B);
  if (comps.size() > 1) {
    std::vector<std::size_t> perm;
    for (const auto& c : comps) perm.insert(perm.end(), c.begin(), c.end());
    Matrix<RF> P(n, n);
    for (std::size_t k = 0; k < n; ++k) P(perm[k], k) = RF(1);
    Matrix<RF> T = P.transpose() * B * P;
    Matrix<RF> Cb(n, n);
    FlagPart out;
    std::size_t off = 0;
    for (const auto& c : comps) {
      FlagPart sub = factor_rec(T.block(off, off, c.size(), c.size()));
      Cb.set_block(off, off, sub.C);
      for (auto& b : sub.blocks) {
        if (b.method == "rank one") b.method = "triangular pattern";
        out.blocks.push_back(b);
      }
      off += c.size();
    }
    out.C = P * Cb;
    return out;
  }

  LineSearch ls = find_invariant_line(B);
  if (!ls.line) return {Matrix<RF>::identity(n), {FlagBlock{n, ls.certified, ls.method}}};
  const auto& v = ls.line->v;
  std::size_t k = 0;
  while (v[k].is_zero()) ++k;
  Matrix<RF> C1(n, n);
  for (std::size_t i = 0; i < n; ++i) C1(i, 0) = v[i];
  for (std::size_t j = 0, col = 1; j < n; ++j)
    if (j != k) C1(j, col++) = RF(1);
  Matrix<RF> T = gauge_matrix(B, C1);
  for (std::size_t i = 1; i < n; ++i)
    if (!T(i, 0).is_zero()) throw std::logic_error("factor_flag: invariant line check failed");
  FlagPart sub = factor_rec(T.block(1, 1, n - 1, n - 1));
  FlagPart out;
  out.blocks.push_back(FlagBlock{1, true, ls.method});
  out.blocks.insert(out.blocks.end(), sub.blocks.begin(), sub.blocks.end());
  Matrix<RF> C2 = Matrix<RF>::identity(n);
  C2.set_block(1, 1, sub.C);
  out.C = C1 * C2;
  return out;
}

}  // namespace detail

/// Complete flag by triangular detection and invariant-line search;
/// blocks not split further are irreducible within that search.
inline Flag factor_flag(const DiffModule& M) {
  detail::FlagPart part = detail::factor_rec(M.A);
  Flag f{part.C, gauge_matrix(M.A, part.C), part.blocks};
  if (!is_block_upper_triangular(f.reduced, f.block_dims()))
    throw std::logic_error("factor_flag: reduced matrix is not block upper triangular");
  return f;
}

/// The block diagonal of the reduced matrix.
struct DiagPart {
  DiffModule module;
};

inline Matrix<RF> block_diagonal_part(const Matrix<RF>& T, const std::vector<std::size_t>& dims) {
  auto idx = block_index(dims);
  Matrix<RF> D(T.rows(), T.cols());
  for (std::size_t i = 0; i < T.rows(); ++i)
    for (std::size_t j = 0; j < T.cols(); ++j)
      if (idx[i] == idx[j]) D(i, j) = T(i, j);
  return D;
}

inline DiagPart diag_part(const DiffModule& M, const Flag& f) {
  Matrix<RF> T = gauge_matrix(M.A, f.gauge);
  if (!is_block_upper_triangular(T, f.block_dims())) throw std::invalid_argument("diag_part: flag does not fit module");
  return {DiffModule(block_diagonal_part(T, f.block_dims()), M.param_tags)};
}

/// Verdict on splitting of all extensions in a flag. On yes, witness maps M
/// to its diagonal part; on no, failing_block is the first block i whose
/// extension by block i + 1 does not split (or the last block index when only
/// the full system fails).
struct ReducibilityResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Matrix<RF>> witness;
  std::optional<std::size_t> failing_block;
  std::string note;
};

namespace detail {

/// Solve X' = T X - X D + N for X supported strictly above the diagonal
/// blocks; returns X on success, nullopt when no solution, and sets
/// incomplete when the solver could not certify absence.
inline std::optional<Matrix<RF>> splitting_solution(const Matrix<RF>& T, const std::vector<std::size_t>& dims,
                                                    bool& incomplete) {
  const std::size_t n = T.rows();
  auto idx = block_index(dims);
  Matrix<RF> D = block_diagonal_part(T, dims), N = T - D;
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  std::vector<std::vector<long>> at(n, std::vector<long>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (idx[i] < idx[j]) {
        at[i][j] = static_cast<long>(pos.size());
        pos.emplace_back(i, j);
      }
  incomplete = false;
  if (pos.empty()) return Matrix<RF>(n, n);
  const std::size_t m = pos.size();
  Matrix<RF> S(m, m);
  std::vector<RF> rhs(m);
  for (std::size_t p = 0; p < m; ++p) {
    auto [i, j] = pos[p];
    rhs[p] = N(i, j);
    for (std::size_t k = 0; k < n; ++k) {
      if (at[k][j] >= 0 && !T(i, k).is_zero()) S(p, static_cast<std::size_t>(at[k][j])) -= T(i, k);
      if (at[i][k] >= 0 && !D(k, j).is_zero()) S(p, static_cast<std::size_t>(at[i][k])) += D(k, j);
    }
  }
  SystemSolutionBasis sb = param_system_solve(S, {rhs});
  incomplete = sb.possibly_incomplete;
  for (const auto& e : sb.elements) {
    if (e.c[0].is_zero()) continue;
    const RF inv = RF(ParamRat(1) / e.c[0]);
    Matrix<RF> X(n, n);
    for (std::size_t p = 0; p < m; ++p) X(pos[p].first, pos[p].second) = inv * e.Z[p];
    return X;
  }
  return std::nullopt;
}

}  // namespace detail

inline ReducibilityResult is_completely_reducible(const DiffModule& M, const Flag& f) {
  ReducibilityResult res;
  const auto dims = f.block_dims();
  Matrix<RF> T = gauge_matrix(M.A, f.gauge);
  if (!is_block_upper_triangular(T, dims)) throw std::invalid_argument("is_completely_reducible: flag does not fit");
  bool incomplete = false;
  auto X = detail::splitting_solution(T, dims, incomplete);
  if (X) {
    Matrix<RF> W = f.gauge * (Matrix<RF>::identity(T.rows()) + *X);
    if (gauge_matrix(M.A, W) != block_diagonal_part(T, dims))
      throw std::logic_error("is_completely_reducible: splitting gauge check failed");
    res.verdict = Verdict::Yes;
    res.witness = W;
    return res;
  }
  if (incomplete) {
    res.verdict = Verdict::Unknown;
    res.note = "splitting system solved without a certified bound";
    return res;
  }
  res.verdict = Verdict::No;
  // Locate an adjacent pair of blocks whose extension already fails.
  std::size_t off = 0;
  for (std::size_t b = 0; b + 1 < dims.size(); ++b) {
    const std::size_t sz = dims[b] + dims[b + 1];
    bool inc = false;
    if (!detail::splitting_solution(T.block(off, off, sz, sz), {dims[b], dims[b + 1]}, inc) && !inc) {
      res.failing_block = b;
      return res;
    }
    off += dims[b];
  }
  res.failing_block = dims.empty() ? 0 : dims.size() - 1;
  res.note = "adjacent extensions split; the full system does not";
  return res;
}

}  // namespace ppv
