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
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppvgal/matrix.hpp"
#include "ppvgal/ore.hpp"
#include "ppvgal/roots.hpp"

namespace ppv {

struct ScalarParamProblem {
  OrePoly L;
  std::vector<RF> rhs;
};

/// One solution (y, c) of L y = sum_j c_j rhs_j.
struct SolutionPair {
  RF y;
  std::vector<ParamRat> c;
};

struct SolutionBasis {
  std::vector<SolutionPair> elements;
  bool certified_complete = true;
  int degree_bound = 0;  // numerator degree bound used
  XPoly denominator{1};  // denominator bound used

  std::size_t dimension() const { return elements.size(); }
  bool only_zero() const { return elements.empty(); }
};

/// Caller-supplied fallback bounds replace the derived ones and clear the
/// certification flag; caps truncate derived bounds and clear it as well.
struct SolveOptions {
  std::optional<int> degree_bound;
  std::optional<int> pole_bound;
  int max_degree = 96;
  int max_pole = 48;
};

namespace detail {

// s(s-1)...(s-i+1) as a polynomial in s.
inline Poly<ParamRat> falling_factorial(int i) {
  Poly<ParamRat> r(1);
  for (int k = 0; k < i; ++k) r *= Poly<ParamRat>(std::vector<ParamRat>{ParamRat(-k), ParamRat(1)});
  return r;
}

inline ParamRat falling_factorial_at(long s, int i) {
  Rat r(1);
  for (int k = 0; k < i; ++k) r *= Rat(s - k);
  return ParamRat(r);
}

// Newton interpolation through (k, values[k]), k = 0..n-1.
inline Poly<Rat> interpolate_at_naturals(const std::vector<Rat>& values) {
  std::vector<Rat> dd = values;
  const std::size_t n = values.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / Rat(static_cast<long>(j));
  Poly<Rat> acc;
  for (std::size_t i = n; i-- > 0;)
    acc = acc * Poly<Rat>(std::vector<Rat>{Rat(-static_cast<long>(i)), Rat(1)}) + Poly<Rat>(dd[i]);
  return acc;
}

inline int valuation(const XPoly& q, const XPoly& p) {
  if (p.is_zero()) return std::numeric_limits<int>::max();
  return multiplicity(q, p);
}

// Degree at infinity, deg num - deg den; zero maps to a very small value.
inline int degree_at_infinity(const RF& f) {
  if (f.is_zero()) return std::numeric_limits<int>::min() / 4;
  return f.num().degree() - f.den().degree();
}

struct LocalData {
  int h = 0;                       // min over i of v_i - i
  std::vector<Integer> int_roots;  // integer roots of the indicial resultant
};

// Local exponent data at all roots of the squarefree factor q, which must
// belong to a coprime base of the coefficients p.
inline LocalData local_indicial(const std::vector<XPoly>& p, const XPoly& q) {
  LocalData out;
  const int d = static_cast<int>(p.size()) - 1;
  std::vector<int> v(p.size());
  out.h = std::numeric_limits<int>::max();
  for (int i = 0; i <= d; ++i) {
    v[static_cast<std::size_t>(i)] = valuation(q, p[static_cast<std::size_t>(i)]);
    if (!p[static_cast<std::size_t>(i)].is_zero()) out.h = std::min(out.h, v[static_cast<std::size_t>(i)] - i);
  }
  const XPoly dq = q.derivative();
  std::vector<std::pair<int, XPoly>> terms;  // (i, coefficient mod q)
  for (int i = 0; i <= d; ++i) {
    const auto& pi = p[static_cast<std::size_t>(i)];
    if (pi.is_zero() || v[static_cast<std::size_t>(i)] - i != out.h) continue;
    XPoly r = pi / pow(q, static_cast<unsigned>(v[static_cast<std::size_t>(i)]));
    XPoly c = (r * pow(dq % q, static_cast<unsigned>(v[static_cast<std::size_t>(i)]))) % q;
    terms.emplace_back(i, c);
  }
  // Integer s with Res_x(q, I(x, s)) = 0 are roots of the specialized
  // resultant at any t0 where no coefficient has a pole, so a specialization
  // screens candidates and each candidate is then confirmed exactly by a gcd.
  const std::size_t npts = static_cast<std::size_t>(d * q.degree() + 1);
  static const long kPoints[][2] = {{7, 3}, {-5, 4}, {13, 6}, {2, 7}, {-11, 5}, {17, 9}, {-3, 8}, {19, 4}};
  for (const auto& pt : kPoints) {
    const Rat t0 = make_rat(pt[0], pt[1]);
    auto spec = [&t0](const XPoly& f, Poly<Rat>& out) {
      std::vector<Rat> v;
      for (const auto& c : f.coeffs()) {
        if (c.den().eval(t0) == 0) return false;
        v.push_back(c.eval(t0));
      }
      out = Poly<Rat>(std::move(v));
      return true;
    };
    Poly<Rat> q0;
    if (!spec(q, q0) || q0.degree() != q.degree()) continue;
    std::vector<std::pair<int, Poly<Rat>>> terms0;
    bool ok = true;
    for (const auto& [i, c] : terms) {
      Poly<Rat> c0;
      ok = ok && spec(c, c0);
      terms0.emplace_back(i, c0);
    }
    if (!ok) continue;
    std::vector<Rat> values;
    values.reserve(npts);
    for (std::size_t k = 0; k < npts; ++k) {
      Poly<Rat> Is;
      for (const auto& [i, c0] : terms0) Is += c0 * falling_factorial_at(static_cast<long>(k), i).constant();
      values.push_back(resultant(q0, Is));
    }
    Poly<Rat> R0 = interpolate_at_naturals(values);
    if (R0.is_zero()) continue;
    for (const auto& s0 : integer_roots(R0)) {
      XPoly Is;
      for (const auto& [i, c] : terms) Is += c * falling_factorial_at(s0.get_si(), i);
      if (Is.is_zero() || gcd(q, Is).degree() >= 1) out.int_roots.push_back(s0);
    }
    return out;
  }
  throw std::logic_error("indicial resultant vanishes identically");
}

}  // namespace detail

/// Rational solutions over Q(t)(x) of L y = c_1 b_1 + ... + c_l b_l with
/// unknown constants c_j in Q(t). Returns a basis of the solution space of
/// pairs (y, c).
inline SolutionBasis rational_solutions(const OrePoly& L, const std::vector<RF>& rhs, const SolveOptions& opt = {}) {
  if (L.is_zero()) throw std::invalid_argument("rational_solutions: zero operator");
  const std::size_t ell = rhs.size();
  SolutionBasis out;
  const int d = L.order();

  if (d == 0) {
    for (std::size_t j = 0; j < ell; ++j) {
      SolutionPair sp{rhs[j] / L.coeff(0), std::vector<ParamRat>(ell)};
      sp.c[j] = ParamRat(1);
      out.elements.push_back(std::move(sp));
    }
    return out;
  }

  // Polynomial coefficients p_i = den * a_i.
  XPoly den(1);
  for (const auto& a : L.coeffs()) den = lcm(den, a.den());
  std::vector<XPoly> p;
  for (const auto& a : L.coeffs()) p.push_back(a.num() * (den / a.den()));
  std::vector<RF> b;
  for (const auto& r : rhs) b.push_back(RF(den) * r);

  std::vector<XPoly> pool = p;
  for (const auto& r : b) pool.push_back(r.den());
  std::vector<XPoly> base = coprime_base(pool);

  bool certified = true;
  XPoly D(1);
  for (const auto& q : base) {
    int beta = 0;
    for (const auto& r : b) beta = std::max(beta, multiplicity(q, r.den()));
    if (beta == 0 && detail::valuation(q, p.back()) == 0) continue;
    int E = 0;
    if (opt.pole_bound) {
      E = *opt.pole_bound;
      certified = false;
    } else {
      detail::LocalData ld = detail::local_indicial(p, q);
      for (const auto& s : ld.int_roots)
        if (s < 0) E = std::max(E, static_cast<int>(-s.get_si()));
      E = std::max(E, beta + ld.h);
      if (E > opt.max_pole) {
        E = opt.max_pole;
        certified = false;
      }
    }
    if (E > 0) D *= pow(q, static_cast<unsigned>(E));
  }

  // y = z / D; P = M * (L o 1/D) has polynomial coefficients.
  OrePoly Lz = L * OrePoly(RF::make(XPoly(1), D));
  XPoly M(1);
  for (const auto& a : Lz.coeffs()) M = lcm(M, a.den());
  std::vector<XPoly> P;
  for (const auto& a : Lz.coeffs()) P.push_back(a.num() * (M / a.den()));
  std::vector<RF> bz;
  for (const auto& r : rhs) bz.push_back(RF(M) * r);

  int delta = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < P.size(); ++i)
    if (!P[i].is_zero()) delta = std::max(delta, P[i].degree() - static_cast<int>(i));
  Poly<ParamRat> Iinf;
  for (std::size_t i = 0; i < P.size(); ++i)
    if (!P[i].is_zero() && P[i].degree() - static_cast<int>(i) == delta)
      Iinf += detail::falling_factorial(static_cast<int>(i)) * P[i].lc();

  int N = -1;
  if (opt.degree_bound) {
    N = *opt.degree_bound;
    certified = false;
  } else {
    for (const auto& s : integer_roots(Iinf))
      if (s >= 0) N = std::max(N, static_cast<int>(s.get_si()));
    for (const auto& r : bz) N = std::max(N, detail::degree_at_infinity(r) - delta);
    if (N > opt.max_degree) {
      N = opt.max_degree;
      certified = false;
    }
  }
  out.certified_complete = certified;
  out.degree_bound = N;
  out.denominator = D;
  if (N < 0 && ell == 0) return out;
  N = std::max(N, -1);

  // Columns: P(x^k) for k = 0..N, then -bz_j; cleared by a common denominator.
  const std::size_t nz = static_cast<std::size_t>(N + 1);
  std::vector<RF> cols;
  OrePoly Pop;
  {
    std::vector<RF> pc;
    for (const auto& pi : P) pc.emplace_back(pi);
    Pop = OrePoly(pc);
  }
  for (std::size_t k = 0; k < nz; ++k) cols.push_back(Pop.apply(RF(XPoly::monomial(ParamRat(1), k))));
  for (const auto& r : bz) cols.push_back(-r);
  XPoly E(1);
  for (const auto& c : cols) E = lcm(E, c.den());
  std::vector<XPoly> polys;
  std::size_t rows = 0;
  for (const auto& c : cols) {
    polys.push_back(c.num() * (E / c.den()));
    rows = std::max(rows, static_cast<std::size_t>(polys.back().degree() + 1));
  }
  Matrix<ParamRat> A(std::max<std::size_t>(rows, 1), cols.size());
  for (std::size_t j = 0; j < polys.size(); ++j)
    for (std::size_t i = 0; i < polys[j].coeffs().size(); ++i) A(i, j) = polys[j].coeffs()[i];

  const RF invD = RF::make(XPoly(1), D);
  for (const auto& v : nullspace(A)) {
    XPoly z;
    for (std::size_t k = 0; k < nz; ++k)
      if (!v[k].is_zero()) z += XPoly::monomial(v[k], k);
    SolutionPair sp{RF(z) * invD, std::vector<ParamRat>(v.begin() + static_cast<std::ptrdiff_t>(nz), v.end())};
    out.elements.push_back(std::move(sp));
  }
  for (const auto& sp : out.elements) {
    RF lhs = L.apply(sp.y), r;
    for (std::size_t j = 0; j < ell; ++j) r += RF(sp.c[j]) * rhs[j];
    if (lhs != r) throw std::logic_error("rational_solutions: residual check failed");
  }
  return out;
}

inline SolutionBasis rational_solutions(const ScalarParamProblem& prob, const SolveOptions& opt = {}) {
  return rational_solutions(prob.L, prob.rhs, opt);
}

/// Smallest n in 1..n_max such that dy/dx = n a y has a nonzero rational
/// solution; the solution is stored in witness.
inline std::optional<int> hyperexp_rank1(const RF& a, int n_max, RF* witness = nullptr) {
  if (n_max < 1) throw std::invalid_argument("hyperexp_rank1: n_max must be positive");
  for (int n = 1; n <= n_max; ++n) {
    OrePoly L = OrePoly::D(1) - OrePoly(RF(n) * a);
    SolutionBasis sb = rational_solutions(L, {});
    if (!sb.only_zero()) {
      if (witness) *witness = sb.elements.front().y;
      return n;
    }
  }
  return std::nullopt;
}

}  // namespace ppv
