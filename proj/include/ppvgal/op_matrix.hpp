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

#include <stdexcept>
#include <vector>

#include "ppvgal/matrix.hpp"
#include "ppvgal/ore.hpp"
#include "ppvgal/rat_solve.hpp"

namespace ppv {

using OpMat = Matrix<OrePoly>;

/// U C V = D with U U_inv = U_inv U = I and V V_inv = V_inv V = I.
struct DiagReduction {
  OpMat U, U_inv, V, V_inv, D;
};

/// The operator matrix I D + A of the system Y' = -A Y written as C Y = 0.
inline OpMat system_operator(const Matrix<RF>& A) {
  OpMat C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = OrePoly(A(i, j)) + (i == j ? OrePoly::D(1) : OrePoly());
  return C;
}

inline std::vector<RF> apply_op_matrix(const OpMat& M, const std::vector<RF>& v) {
  if (M.cols() != v.size()) throw std::invalid_argument("operator matrix and vector sizes differ");
  std::vector<RF> out(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero() && !v[j].is_zero()) out[i] += M(i, j).apply(v[j]);
  return out;
}

inline bool is_diagonal(const OpMat& M) {
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (i != j && !M(i, j).is_zero()) return false;
  return true;
}

namespace detail {

class Reducer {
 public:
  explicit Reducer(const OpMat& C)
      : W(C),
        U(OpMat::identity(C.rows())),
        Ui(OpMat::identity(C.rows())),
        V(OpMat::identity(C.cols())),
        Vi(OpMat::identity(C.cols())) {}

  // row_i <- row_i - q row_k
  void row_sub(std::size_t i, std::size_t k, const OrePoly& q) {
    for (std::size_t j = 0; j < W.cols(); ++j)
      if (!W(k, j).is_zero()) W(i, j) -= q * W(k, j);
    for (std::size_t j = 0; j < U.cols(); ++j)
      if (!U(k, j).is_zero()) U(i, j) -= q * U(k, j);
    for (std::size_t r = 0; r < Ui.rows(); ++r)
      if (!Ui(r, i).is_zero()) Ui(r, k) += Ui(r, i) * q;
  }
  // col_j <- col_j - col_k q
  void col_sub(std::size_t j, std::size_t k, const OrePoly& q) {
    for (std::size_t r = 0; r < W.rows(); ++r)
      if (!W(r, k).is_zero()) W(r, j) -= W(r, k) * q;
    for (std::size_t r = 0; r < V.rows(); ++r)
      if (!V(r, k).is_zero()) V(r, j) -= V(r, k) * q;
    for (std::size_t c = 0; c < Vi.cols(); ++c)
      if (!Vi(j, c).is_zero()) Vi(k, c) += q * Vi(j, c);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    W.swap_rows(a, b);
    U.swap_rows(a, b);
    Ui.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    W.swap_cols(a, b);
    V.swap_cols(a, b);
    Vi.swap_rows(a, b);
  }
  // row_i <- s row_i for a nonzero scalar s
  void row_scale(std::size_t i, const RF& s) {
    const RF inv = s.inverse();
    for (std::size_t j = 0; j < W.cols(); ++j) W(i, j) = s * W(i, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) = s * U(i, j);
    for (std::size_t r = 0; r < Ui.rows(); ++r) Ui(r, i) = Ui(r, i) * OrePoly(inv);
  }

  static std::size_t weight(const OrePoly& e) {
    std::size_t w = 0;
    for (const auto& c : e.coeffs()) w += pivot_weight(c);
    return w;
  }

  // Minimal-order nonzero entry of the trailing block; ties go to the
  // smallest coefficient weight, then lexicographically.
  bool find_pivot(std::size_t k, std::size_t& pr, std::size_t& pc) const {
    int best = -1;
    std::size_t best_w = 0;
    for (std::size_t i = k; i < W.rows(); ++i)
      for (std::size_t j = k; j < W.cols(); ++j) {
        const OrePoly& e = W(i, j);
        if (e.is_zero()) continue;
        if (best >= 0 && e.order() > best) continue;
        const std::size_t w = weight(e);
        if (best < 0 || e.order() < best || w < best_w) {
          best = e.order();
          best_w = w;
          pr = i;
          pc = j;
        }
      }
    return best >= 0;
  }

  void run() {
    const std::size_t steps = std::min(W.rows(), W.cols());
    for (std::size_t k = 0; k < steps; ++k) {
      std::size_t pr = 0, pc = 0;
      if (!find_pivot(k, pr, pc)) break;
      swap_rows(k, pr);
      swap_cols(k, pc);
      for (;;) {
        for (std::size_t i = k + 1; i < W.rows(); ++i) {
          if (W(i, k).is_zero()) continue;
          OrePoly q = right_divide(W(i, k), W(k, k)).quotient;
          if (!q.is_zero()) row_sub(i, k, q);
        }
        for (std::size_t j = k + 1; j < W.cols(); ++j) {
          if (W(k, j).is_zero()) continue;
          OrePoly q = left_divide(W(k, j), W(k, k)).quotient;
          if (!q.is_zero()) col_sub(j, k, q);
        }
        bool clean = true;
        for (std::size_t i = k + 1; i < W.rows(); ++i) clean = clean && W(i, k).is_zero();
        for (std::size_t j = k + 1; j < W.cols(); ++j) clean = clean && W(k, j).is_zero();
        if (clean) break;
        find_pivot(k, pr, pc);
        swap_rows(k, pr);
        swap_cols(k, pc);
      }
      row_scale(k, W(k, k).lc().inverse());
    }
  }

  OpMat W, U, Ui, V, Vi;
};

}  // namespace detail

/// Two-sided reduction of a matrix over Q(t)(x)[D] to diagonal form by
/// elementary operations; every diagonal entry is monic or zero.
inline DiagReduction diagonalize(const OpMat& C) {
  detail::Reducer r(C);
  r.run();
  return {std::move(r.U), std::move(r.Ui), std::move(r.V), std::move(r.Vi), std::move(r.W)};
}

inline bool verify(const DiagReduction& red, const OpMat& C) {
  const std::size_t m = C.rows(), n = C.cols();
  return is_diagonal(red.D) && red.U * C * red.V == red.D && red.U * red.U_inv == OpMat::identity(m) &&
         red.U_inv * red.U == OpMat::identity(m) && red.V * red.V_inv == OpMat::identity(n) &&
         red.V_inv * red.V == OpMat::identity(n);
}

/// One element (Z, c) of W = {(Z, c) : Z' + A Z = sum_l c_l B_l}.
struct SystemSolution {
  std::vector<RF> Z;
  std::vector<ParamRat> c;
};

struct SystemSolutionBasis {
  std::vector<SystemSolution> elements;
  bool possibly_incomplete = false;
  std::size_t dimension() const { return elements.size(); }
};

inline std::vector<RF> system_residual(const Matrix<RF>& A, const std::vector<std::vector<RF>>& B,
                                       const SystemSolution& s) {
  std::vector<RF> r = A * s.Z;
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] += s.Z[i].derivative();
    for (std::size_t l = 0; l < B.size(); ++l) r[i] -= RF(s.c[l]) * B[l][i];
  }
  return r;
}

/// Q(t)-basis of W, obtained by diagonalizing C = I D + A and solving the
/// resulting scalar problems with shared constants c.
inline SystemSolutionBasis param_system_solve(const Matrix<RF>& A, const std::vector<std::vector<RF>>& B,
                                              const SolveOptions& opt = {}) {
  if (!A.is_square()) throw std::invalid_argument("param_system_solve: A must be square");
  const std::size_t n = A.rows(), ell = B.size();
  for (const auto& b : B)
    if (b.size() != n) throw std::invalid_argument("param_system_solve: right-hand side size mismatch");

  DiagReduction red = diagonalize(system_operator(A));
  std::vector<std::vector<RF>> UB;
  for (const auto& b : B) UB.push_back(apply_op_matrix(red.U, b));

  SystemSolutionBasis out;
  // Per-row solution spaces; rows with zero diagonal entry only constrain c.
  std::vector<SolutionBasis> rows(n);
  std::vector<std::vector<std::vector<ParamRat>>> zero_rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RF> rhs;
    for (std::size_t l = 0; l < ell; ++l) rhs.push_back(UB[l][i]);
    if (red.D(i, i).is_zero()) throw std::logic_error("param_system_solve: singular operator matrix");
    rows[i] = rational_solutions(red.D(i, i), rhs, opt);
    if (!rows[i].certified_complete) out.possibly_incomplete = true;
  }

  // Unknowns: lambda_{ik} for every row basis element, then c_1..c_l.
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + rows[i].dimension();
  const std::size_t nl = offset[n], nv = nl + ell;
  if (nv == 0) return out;
  Matrix<ParamRat> M(std::max<std::size_t>(n * ell, 1), nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < ell; ++l) {
      const std::size_t r = i * ell + l;
      for (std::size_t k = 0; k < rows[i].dimension(); ++k) M(r, offset[i] + k) = rows[i].elements[k].c[l];
      M(r, nl + l) = ParamRat(-1);
    }
  for (const auto& v : nullspace(M)) {
    std::vector<RF> X(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < rows[i].dimension(); ++k)
        if (!v[offset[i] + k].is_zero()) X[i] += RF(v[offset[i] + k]) * rows[i].elements[k].y;
    SystemSolution s{apply_op_matrix(red.V, X), std::vector<ParamRat>(v.begin() + static_cast<std::ptrdiff_t>(nl), v.end())};
    for (const auto& e : system_residual(A, B, s))
      if (!e.is_zero()) throw std::logic_error("param_system_solve: residual check failed");
    out.elements.push_back(std::move(s));
  }
  return out;
}

}  // namespace ppv
