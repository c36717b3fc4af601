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

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppvgal/field.hpp"

namespace ppv {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data) : r_(rows), c_(cols), a_(std::move(data)) {
    if (a_.size() != r_ * c_) throw std::invalid_argument("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!detail::zero(v)) return false;
    return true;
  }

  template <class Fn>
  auto map(Fn&& fn) const {
    using U = decltype(fn(std::declval<const T&>()));
    std::vector<U> v;
    v.reserve(a_.size());
    for (const auto& e : a_) v.push_back(fn(e));
    return Matrix<U>(r_, c_, std::move(v));
  }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += b.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= b.a_[k];
    return m;
  }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& v : m.a_) v = -v;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& aik = a(i, k);
        if (detail::zero(aik)) continue;
        for (std::size_t j = 0; j < b.c_; ++j)
          if (!detail::zero(b(k, j))) m(i, j) += aik * b(k, j);
      }
    return m;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix m = a;
    for (auto& v : m.a_) v = s * v;
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  const std::vector<T>& data() const { return a_; }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix dimension mismatch");
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
using Vec = std::vector<T>;

template <class T>
Vec<T> operator*(const Matrix<T>& m, const Vec<T>& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  Vec<T> out(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!detail::zero(m(i, j)) && !detail::zero(v[j])) out[i] += m(i, j) * v[j];
  return out;
}

template <class T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (detail::zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

// Cheap size estimate used to pick pivots that keep expressions small.
inline std::size_t pivot_weight(const Rat& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}
template <class F>
std::size_t pivot_weight(const Frac<F>& f) {
  std::size_t w = 64 * static_cast<std::size_t>(f.num().degree() + f.den().degree() + 1);
  if (f.is_constant()) w += pivot_weight(f.constant());
  return w;
}

/// Reduced row echelon form over an exact field; pivots[k] is the pivot
/// column of row k.
template <class F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

template <class F>
Echelon<F> rref(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    std::size_t best_w = 0;
    for (std::size_t i = row; i < m.rows(); ++i) {
      if (detail::zero(m(i, col))) continue;
      std::size_t w = pivot_weight(m(i, col));
      if (best == m.rows() || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (best == m.rows()) continue;
    m.swap_rows(row, best);
    const F inv = F(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!detail::zero(m(row, j))) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || detail::zero(m(i, col))) continue;
      const F f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!detail::zero(m(row, j))) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank();
}

/// Basis of the right kernel {v : m v = 0}.
template <class F>
std::vector<Vec<F>> nullspace(const Matrix<F>& m) {
  Echelon<F> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
F determinant(Matrix<F> m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  F det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && detail::zero(m(p, col))) ++p;
    if (p == n) return F(0);
    if (p != col) {
      m.swap_rows(p, col);
      det = -det;
    }
    det *= m(col, col);
    const F inv = F(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (detail::zero(m(i, col))) continue;
      const F f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
    }
  }
  return det;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<F>::identity(n));
  Echelon<F> e = rref(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) throw division_by_zero("singular matrix");
  return e.reduced.block(0, n, n, n);
}

/// Basis of the span of the given vectors, in reduced echelon form.
template <class F>
std::vector<Vec<F>> span_basis(const std::vector<Vec<F>>& vs, std::size_t dim) {
  if (vs.empty()) return {};
  Matrix<F> m(vs.size(), dim);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vs[i][j];
  Echelon<F> e = rref(std::move(m));
  std::vector<Vec<F>> out;
  for (std::size_t k = 0; k < e.rank(); ++k) out.push_back(e.reduced.row(k));
  return out;
}

/// Entry-wise derivation of a matrix over Q(t)(x).
inline Matrix<RF> derive(const Matrix<RF>& m, DerivationTag d) {
  return m.map([d](const RF& f) { return derive(f, d); });
}

}  // namespace ppv
