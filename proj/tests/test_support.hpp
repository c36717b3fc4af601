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

#include <random>
#include <vector>

#include "ppvgal/expr.hpp"
#include "ppvgal/field.hpp"
#include "ppvgal/matrix.hpp"
#include "ppvgal/ore.hpp"

namespace ppv::test {

inline long uniform(std::mt19937& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rat random_rat(std::mt19937& rng, long bound = 4) {
  long den = uniform(rng, 1, 3);
  return make_rat(uniform(rng, -bound, bound), den);
}

/// Element of Q(t) with numerator of t-degree <= 1 and a denominator that is
/// 1 or t.
inline ParamRat random_param(std::mt19937& rng) {
  TPoly n(std::vector<Rat>{random_rat(rng), uniform(rng, 0, 2) == 0 ? random_rat(rng) : Rat(0)});
  if (uniform(rng, 0, 4) == 0) return ParamRat::make(n, TPoly::var());
  return ParamRat(n);
}

inline XPoly random_xpoly(std::mt19937& rng, int deg) {
  std::vector<ParamRat> c;
  for (int i = 0; i <= deg; ++i) c.push_back(uniform(rng, 0, 2) == 0 ? ParamRat() : random_param(rng));
  return XPoly(c);
}

/// Denominator built from the small pool {x, x+1, x-t, x^2+t}.
inline XPoly random_denominator(std::mt19937& rng, int max_factors) {
  const XPoly x = XPoly::var();
  const XPoly t(param_t());
  const std::vector<XPoly> pool{x, x + XPoly(1), x - t, x * x + t};
  XPoly d(1);
  int k = static_cast<int>(uniform(rng, 0, max_factors));
  for (int i = 0; i < k; ++i) d *= pool[static_cast<std::size_t>(uniform(rng, 0, 3))];
  return d;
}

inline RF random_rf(std::mt19937& rng, int deg) {
  return RF::make(random_xpoly(rng, deg), random_denominator(rng, 2));
}

inline OrePoly random_ore(std::mt19937& rng, int order, int deg) {
  std::vector<RF> c;
  for (int i = 0; i <= order; ++i) c.push_back(random_rf(rng, deg));
  if (c.back().is_zero()) c.back() = RF(1);
  return OrePoly(c);
}

inline Matrix<RF> random_rf_matrix(std::mt19937& rng, std::size_t n, int deg) {
  Matrix<RF> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(rng, 0, 2) == 0 ? RF() : random_rf(rng, deg);
  return m;
}

/// Square matrix from row-major expression strings.
inline Matrix<RF> parse_matrix(std::size_t n, std::vector<const char*> entries) {
  Matrix<RF> m(n, n);
  for (std::size_t k = 0; k < entries.size(); ++k) m(k / n, k % n) = parse_rf(entries[k]);
  return m;
}

}  // namespace ppv::test
