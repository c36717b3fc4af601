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

#include <vector>

#include "ppvgal/roots.hpp"

namespace ppv {

struct PartialFractionTerm {
  XPoly numerator;  // deg numerator < deg base
  XPoly base;       // monic, irreducible unless listed as unsplit
  int power = 1;
};

/// f = polynomial_part + sum numerator / base^power. Bases of degree >= 4
/// without a root in Q(t) may still factor; they are reported in unsplit,
/// and the sum remains an exact identity.
struct PartialFractions {
  XPoly polynomial_part;
  std::vector<PartialFractionTerm> terms;
  std::vector<XPoly> unsplit;

  bool fully_split() const { return unsplit.empty(); }
  RF reconstruct() const {
    RF acc(polynomial_part);
    for (const auto& term : terms) acc += RF::make(term.numerator, pow(term.base, static_cast<unsigned>(term.power)));
    return acc;
  }
};

/// Splits a monic squarefree polynomial into its linear factors over Q(t)
/// and the remaining cofactor (returned last when nonconstant).
inline std::vector<XPoly> split_linear(const XPoly& q) {
  std::vector<XPoly> out;
  XPoly rest = q.monic();
  for (const auto& r : param_roots(rest)) {
    XPoly lin(std::vector<ParamRat>{-r, ParamRat(1)});
    out.push_back(lin);
    rest = rest / lin;
  }
  if (rest.degree() >= 1) out.push_back(rest.monic());
  return out;
}

inline PartialFractions partial_fractions_x(const RF& f) {
  PartialFractions pf;
  auto [quo, rem] = divmod(f.num(), f.den());
  pf.polynomial_part = quo;
  if (rem.is_zero()) return pf;

  std::vector<std::pair<XPoly, int>> blocks;
  for (const auto& [sq, mult] : squarefree_decomposition(f.den()))
    for (const auto& p : split_linear(sq)) {
      blocks.emplace_back(p, mult);
      if (p.degree() >= 4) pf.unsplit.push_back(p);
    }

  const XPoly& d = f.den();
  for (const auto& [p, e] : blocks) {
    XPoly pe = pow(p, static_cast<unsigned>(e));
    XPoly cof = d / pe;
    // rem/d = A/p^e + B/cof with A = rem * cof^{-1} mod p^e.
    auto [g, s, t] = xgcd(cof, pe);
    (void)t;
    (void)g;
    XPoly A = (rem * s) % pe;
    // p-adic expansion A = sum_j a_j p^j gives A/p^e = sum_j a_j / p^(e-j).
    for (int j = 0; j < e && !A.is_zero(); ++j) {
      auto [q, r] = divmod(A, p);
      if (!r.is_zero()) pf.terms.push_back({r, p, e - j});
      A = q;
    }
  }
  return pf;
}

}  // namespace ppv
