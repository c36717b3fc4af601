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

// Brute-force reference computations. They share only the field arithmetic
// with the library and use their own elimination.

#include <vector>

#include "ppvgal/field.hpp"
#include "ppvgal/matrix.hpp"
#include "ppvgal/ore.hpp"

namespace ppv::oracle {

/// Rank over Q by plain Gaussian elimination with the first nonzero pivot.
inline std::size_t rank_q(std::vector<std::vector<Rat>> rows) {
  std::size_t r = 0;
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rat f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// Rank over Q(t) as the maximum of the ranks at a few specializations of t.
/// A specialization never raises the rank, so the value is a lower bound
/// that is exact unless every sample point is degenerate.
inline std::size_t rank(const std::vector<std::vector<ParamRat>>& rows) {
  std::size_t best = 0;
  for (const Rat& t0 : {Rat(7, 3), Rat(-5, 4), Rat(13, 6), Rat(-17, 5)}) {
    std::vector<std::vector<Rat>> spec;
    spec.reserve(rows.size());
    try {
      for (const auto& row : rows) {
        std::vector<Rat> v;
        v.reserve(row.size());
        for (const auto& e : row) v.push_back(e.eval(t0));
        spec.push_back(std::move(v));
      }
    } catch (const division_by_zero&) {
      continue;
    }
    best = std::max(best, rank_q(std::move(spec)));
  }
  return best;
}

// Appends the x-coefficients of each polynomial column as rows.
inline std::vector<std::vector<ParamRat>> coefficient_rows(const std::vector<std::vector<XPoly>>& eqs,
                                                           std::size_t ncols) {
  std::vector<std::vector<ParamRat>> rows;
  for (const auto& eq : eqs) {
    std::size_t deg = 0;
    for (const auto& p : eq) deg = std::max(deg, p.coeffs().size());
    for (std::size_t k = 0; k < deg; ++k) {
      std::vector<ParamRat> row(ncols);
      for (std::size_t j = 0; j < ncols; ++j) row[j] = eq[j][k];
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// Common denominator clearing of a list of rational functions.
inline std::vector<XPoly> clear(const std::vector<RF>& fs) {
  XPoly m(1);
  for (const auto& f : fs) m = lcm(m, f.den());
  std::vector<XPoly> out;
  for (const auto& f : fs) out.push_back(f.num() * (m / f.den()));
  return out;
}

inline XPoly ansatz_denominator(const std::vector<XPoly>& factors, int max_pole) {
  XPoly d(1);
  for (const auto& f : factors) d *= pow(f, static_cast<unsigned>(max_pole));
  return d;
}

/// Dimension of {(y, c) : L y = sum c_j b_j} restricted to
/// y = N / prod factors^max_pole with deg N <= max_deg + deg denominator, a
/// space containing every y with pole orders <= max_pole at the factors and
/// degree at infinity <= max_deg.
inline std::size_t scalar_ansatz_dimension(const OrePoly& L, const std::vector<RF>& rhs,
                                           const std::vector<XPoly>& factors, int max_pole, int max_deg) {
  const XPoly den = ansatz_denominator(factors, max_pole);
  std::vector<RF> cols;
  for (int k = 0; k <= max_deg + den.degree(); ++k) {
    RF basis = RF::make(XPoly::monomial(ParamRat(1), static_cast<std::size_t>(k)), den);
    RF acc;
    RF deriv = basis;
    for (int i = 0; i <= L.order(); ++i) {
      if (i > 0) deriv = deriv.derivative();
      acc += L.coeff(static_cast<std::size_t>(i)) * deriv;
    }
    cols.push_back(acc);
  }
  for (const auto& b : rhs) cols.push_back(-b);
  auto rows = coefficient_rows({clear(cols)}, cols.size());
  return cols.size() - rank(rows);
}

/// Dimension of {(Z, c) : Z' + A Z = sum c_j B_j} restricted to entries
/// (poly of degree <= max_deg) / prod factors^max_pole.
inline std::size_t system_ansatz_dimension(const Matrix<RF>& A, const std::vector<std::vector<RF>>& B,
                                           const std::vector<XPoly>& factors, int max_pole, int max_deg) {
  const std::size_t n = A.rows();
  const XPoly den = ansatz_denominator(factors, max_pole);
  const std::size_t per = static_cast<std::size_t>(max_deg + den.degree() + 1);
  const std::size_t ncols = n * per + B.size();
  // eqs[r][col]: contribution of unknown col to equation row r.
  std::vector<std::vector<RF>> eqs(n, std::vector<RF>(ncols));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < per; ++k) {
      RF e = RF::make(XPoly::monomial(ParamRat(1), k), den);
      RF de = e.derivative();
      const std::size_t col = j * per + k;
      eqs[j][col] += de;
      for (std::size_t r = 0; r < n; ++r)
        if (!A(r, j).is_zero()) eqs[r][col] += A(r, j) * e;
    }
  for (std::size_t l = 0; l < B.size(); ++l)
    for (std::size_t r = 0; r < n; ++r) eqs[r][n * per + l] = -B[l][r];
  std::vector<std::vector<XPoly>> polys;
  for (const auto& eq : eqs) polys.push_back(clear(eq));
  return ncols - rank(coefficient_rows(polys, ncols));
}

}  // namespace ppv::oracle
