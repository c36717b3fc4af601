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

#include <optional>
#include <string>
#include <vector>

#include "ppvgal/partial_fractions.hpp"
#include "ppvgal/rat_solve.hpp"

namespace ppv {

enum class KovacicVerdict { SL2, Case1Candidate, Case2Candidate, Case3Candidate };

inline const char* to_string(KovacicVerdict v) {
  switch (v) {
    case KovacicVerdict::SL2: return "SL2";
    case KovacicVerdict::Case1Candidate: return "case1_candidate";
    case KovacicVerdict::Case2Candidate: return "case2_candidate";
    case KovacicVerdict::Case3Candidate: return "case3_candidate";
  }
  return "?";
}

/// Outcome of the rational Riccati search u' + u^2 = r over Q(t)(x).
///   decided: the search covered every candidate (poles and square roots in
///            Q(t)), so absence of a solution is a proof over the algebraic
///            closure as well.
struct RiccatiSearch {
  std::optional<RF> solution;
  bool decided = false;
  std::string note;
};

struct KovacicResult {
  KovacicVerdict verdict = KovacicVerdict::SL2;
  bool case1_possible = false, case2_possible = false, case3_possible = false;
  RiccatiSearch case1;
  std::vector<int> pole_orders;
  long order_at_infinity = 0;  // deg den - deg num; meaningless when r = 0
};

namespace detail {

using Series = std::vector<ParamRat>;

/// Power series of a/b mod u^n; b(0) must be nonzero.
inline Series series_div(const XPoly& a, const XPoly& b, std::size_t n) {
  Series out(n);
  const ParamRat inv = ParamRat(1) / b[0];
  for (std::size_t k = 0; k < n; ++k) {
    ParamRat acc = k <= static_cast<std::size_t>(std::max(a.degree(), 0)) ? a[k] : ParamRat();
    for (std::size_t j = 1; j <= k && j <= static_cast<std::size_t>(b.degree()); ++j) acc -= b[j] * out[k - j];
    out[k] = acc * inv;
  }
  return out;
}

/// First n coefficients of sqrt(R) with sqrt(R_0) = a0.
inline Series series_sqrt(const Series& R, const ParamRat& a0, std::size_t n) {
  Series a(n);
  a[0] = a0;
  const ParamRat inv = ParamRat(1) / (ParamRat(2) * a0);
  for (std::size_t j = 1; j < n; ++j) {
    ParamRat acc = j < R.size() ? R[j] : ParamRat();
    for (std::size_t i = 1; i < j; ++i) acc -= a[i] * a[j - i];
    a[j] = acc * inv;
  }
  return a;
}

/// Coefficient of u^k in R - (a_0 + ... + a_m u^m)^2.
inline ParamRat square_defect(const Series& R, const Series& a, std::size_t m, std::size_t k) {
  ParamRat acc = k < R.size() ? R[k] : ParamRat();
  for (std::size_t i = 0; i <= m && i <= k; ++i)
    if (k - i <= m) acc -= a[i] * a[k - i];
  return acc;
}

/// Local data for one singular point: the candidates (sqrt part, alpha) for
/// the sign choices + and -.
struct KovacicLocal {
  RF sqrt_part;
  ParamRat alpha_plus, alpha_minus;
  XPoly point;  // x - c, or 0 for infinity
};

inline std::optional<ParamRat> half_one_plus_sqrt(const ParamRat& b, bool plus) {
  auto s = param_sqrt(ParamRat(1) + ParamRat(4) * b);
  if (!s) return std::nullopt;
  return (ParamRat(1) + (plus ? *s : -*s)) / ParamRat(2);
}

/// Monic polynomials P of degree d with P'' + 2 w P' + (w' + w^2 - r) P = 0.
inline std::optional<XPoly> riccati_polynomial(const RF& w, const RF& r, int d) {
  const RF c0 = w.derivative() + w * w - r, two_w = RF(2) * w;
  std::vector<RF> images;
  XPoly common(ParamRat(1));
  for (int i = 0; i <= d; ++i) {
    RF xi(XPoly::monomial(ParamRat(1), static_cast<std::size_t>(i)));
    RF img = xi.derivative().derivative() + two_w * xi.derivative() + c0 * xi;
    common = lcm(common, img.den());
    images.push_back(img);
  }
  std::vector<XPoly> cols;
  std::size_t rows = 1;
  for (const auto& img : images) {
    cols.push_back(img.num() * (common / img.den()));
    rows = std::max(rows, static_cast<std::size_t>(std::max(cols.back().degree(), 0)) + 1);
  }
  Matrix<ParamRat> M(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int k = 0; k <= cols[j].degree(); ++k) M(static_cast<std::size_t>(k), j) = cols[j][static_cast<std::size_t>(k)];
  for (const auto& v : nullspace(M)) {
    if (v.back().is_zero()) continue;
    const ParamRat inv = ParamRat(1) / v.back();
    std::vector<ParamRat> p;
    for (const auto& e : v) p.push_back(e * inv);
    return XPoly(std::move(p));
  }
  return std::nullopt;
}

}  // namespace detail

/// Rational solutions u of u' + u^2 = r by the first case of Kovacic's
/// algorithm, carried out over Q(t).
inline RiccatiSearch riccati_rational(const RF& r, int max_degree = 64) {
  RiccatiSearch out;
  if (r.is_zero()) {
    out.solution = RF();
    out.decided = true;
    return out;
  }
  std::vector<detail::KovacicLocal> locals;
  // Simple poles contribute alpha = 1 at every root, so a whole factor q
  // adds q'/q to omega and deg q to the sum of alphas.
  RF w_simple;
  long simple_count = 0;
  for (const auto& [factor, m] : squarefree_decomposition(r.den())) {
    if (factor.degree() < 1) continue;
    if (m >= 3 && m % 2 == 1) {
      out.decided = true;
      out.note = "pole of odd order above 2";
      return out;
    }
    if (m == 1) {
      w_simple += RF::make(factor.derivative(), factor);
      simple_count += factor.degree();
      continue;
    }
    for (const auto& lin : split_linear(factor)) {
      if (lin.degree() != 1) {
        out.note = "poles outside Q(t)";
        return out;
      }
      const ParamRat c = -lin[0];
      detail::KovacicLocal loc{RF(), ParamRat(1), ParamRat(1), lin};
      if (m == 2) {
        // b is the coefficient of u^-2; the factor u^2 is removed exactly.
        XPoly e = r.den().shift(c) / XPoly::monomial(ParamRat(1), 2);
        ParamRat b = r.num().shift(c)[0] / e[0];
        auto ap = detail::half_one_plus_sqrt(b, true), am = detail::half_one_plus_sqrt(b, false);
        if (!ap) {
          out.note = "indicial square root outside Q(t)";
          return out;
        }
        loc.alpha_plus = *ap;
        loc.alpha_minus = *am;
      } else if (m >= 4) {
        const std::size_t nu = static_cast<std::size_t>(m / 2);
        XPoly e = r.den().shift(c) / XPoly::monomial(ParamRat(1), static_cast<std::size_t>(m));
        detail::Series R = detail::series_div(r.num().shift(c), e, nu + 1);
        auto a0 = param_sqrt(R[0]);
        if (!a0) {
          out.note = "Laurent square root outside Q(t)";
          return out;
        }
        detail::Series a = detail::series_sqrt(R, *a0, nu);
        // [sqrt r]_c = sum_{j <= nu-2} a_j u^{j - nu}.
        XPoly num;
        for (std::size_t j = 0; j + 2 <= nu; ++j) num += XPoly::monomial(a[j], nu - 2 - j);
        loc.sqrt_part = RF::make(num.shift(-c), pow(lin, static_cast<unsigned>(nu)));
        ParamRat b = detail::square_defect(R, a, nu - 2, nu - 1);
        ParamRat ratio = b / *a0, nu_q(static_cast<long>(nu));
        loc.alpha_plus = (ratio + nu_q) / ParamRat(2);
        loc.alpha_minus = (-ratio + nu_q) / ParamRat(2);
      }
      locals.push_back(loc);
    }
  }

  const long o_inf = static_cast<long>(r.den().degree()) - r.num().degree();
  detail::KovacicLocal inf{RF(), ParamRat(0), ParamRat(1), XPoly()};
  if (o_inf == 2) {
    ParamRat b = r.num().lc() / r.den().lc();
    auto ap = detail::half_one_plus_sqrt(b, true), am = detail::half_one_plus_sqrt(b, false);
    if (!ap) {
      out.note = "indicial square root at infinity outside Q(t)";
      return out;
    }
    inf.alpha_plus = *ap;
    inf.alpha_minus = *am;
  } else if (o_inf < 2) {
    if (o_inf % 2 != 0) {
      out.decided = true;
      out.note = "odd order at infinity";
      return out;
    }
    const std::size_t nu = static_cast<std::size_t>(-o_inf / 2);
    const std::size_t dn = static_cast<std::size_t>(r.num().degree()), dd = static_cast<std::size_t>(r.den().degree());
    detail::Series R = detail::series_div(r.num().reversed(dn), r.den().reversed(dd), nu + 2);
    auto a0 = param_sqrt(R[0]);
    if (!a0) {
      out.note = "square root at infinity outside Q(t)";
      return out;
    }
    detail::Series a = detail::series_sqrt(R, *a0, nu + 1);
    XPoly sq;
    for (std::size_t j = 0; j <= nu; ++j) sq += XPoly::monomial(a[j], nu - j);
    inf.sqrt_part = RF(sq);
    ParamRat b = detail::square_defect(R, a, nu, nu + 1);
    ParamRat ratio = b / *a0, nu_q(static_cast<long>(nu));
    inf.alpha_plus = (ratio - nu_q) / ParamRat(2);
    inf.alpha_minus = (-ratio - nu_q) / ParamRat(2);
  }

  out.decided = true;
  const std::size_t k = locals.size();
  for (std::size_t mask = 0; mask < (std::size_t{2} << k); ++mask) {
    const bool inf_plus = (mask & 1) == 0;
    ParamRat d = (inf_plus ? inf.alpha_plus : inf.alpha_minus) - ParamRat(simple_count);
    RF w = (inf_plus ? inf.sqrt_part : -inf.sqrt_part) + w_simple;
    for (std::size_t i = 0; i < k; ++i) {
      const bool plus = ((mask >> (i + 1)) & 1) == 0;
      const ParamRat& al = plus ? locals[i].alpha_plus : locals[i].alpha_minus;
      d -= al;
      w += (plus ? locals[i].sqrt_part : -locals[i].sqrt_part) + RF::make(XPoly(al), locals[i].point);
    }
    if (!is_integer_constant(d) || d.constant() < 0) continue;
    if (d.constant() > max_degree) {
      out.decided = false;
      out.note = "polynomial degree above search cap";
      continue;
    }
    auto P = detail::riccati_polynomial(w, r, static_cast<int>(d.constant().get_num().get_si()));
    if (!P) continue;
    RF u = w + RF(P->derivative()) / RF(*P);
    if (u.derivative() + u * u != r) throw std::logic_error("riccati_rational: verification failed");
    out.solution = u;
    out.note.clear();
    return out;
  }
  return out;
}

/// Necessary-condition sieve over the cases of Kovacic's algorithm for
/// y'' = r y; the first case is decided by an exact search when possible.
inline KovacicResult kovacic_sl2_test(const RF& r) {
  KovacicResult res;
  if (r.is_zero()) {
    res.case1_possible = true;
    res.case1 = riccati_rational(r);
    res.verdict = KovacicVerdict::Case1Candidate;
    return res;
  }
  for (const auto& [factor, m] : squarefree_decomposition(r.den()))
    for (int j = 0; j < factor.degree(); ++j) res.pole_orders.push_back(m);
  res.order_at_infinity = static_cast<long>(r.den().degree()) - r.num().degree();
  const long oi = res.order_at_infinity;

  bool c1 = oi > 2 || oi % 2 == 0, c2 = false, c3 = oi >= 2;
  for (int m : res.pole_orders) {
    if (!(m == 1 || m % 2 == 0)) c1 = false;
    if (m == 2 || (m >= 3 && m % 2 == 1)) c2 = true;
    if (m > 2) c3 = false;
  }
  res.case1_possible = c1;
  res.case2_possible = c2;
  res.case3_possible = c3;
  if (c1) {
    res.case1 = riccati_rational(r);
    if (res.case1.solution || !res.case1.decided) {
      res.verdict = KovacicVerdict::Case1Candidate;
      return res;
    }
  }
  if (c2)
    res.verdict = KovacicVerdict::Case2Candidate;
  else if (c3)
    res.verdict = KovacicVerdict::Case3Candidate;
  else
    res.verdict = KovacicVerdict::SL2;
  return res;
}

}  // namespace ppv
