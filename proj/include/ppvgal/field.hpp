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

#include "ppvgal/frac.hpp"

namespace ppv {

/// Q(t): the computable stand-in for the field of constants of d/dx.
using ParamRat = Frac<Rat>;
/// Q(t)(x): the base differential field with the commuting derivations
/// d/dx and d/dt.
using RF = Frac<ParamRat>;
using XPoly = Poly<ParamRat>;
using TPoly = Poly<Rat>;

enum class DerivationTag { Dx, Dt };

inline const char* tag_name(DerivationTag d) { return d == DerivationTag::Dx ? "x" : "t"; }

inline ParamRat param_t() { return ParamRat::var(); }
inline RF rf_x() { return RF::var(); }
inline RF rf_t() { return RF(param_t()); }
inline RF rf_const(long n, long d = 1) { return RF(ParamRat(make_rat(n, d))); }

inline ParamRat derive_t(const ParamRat& c) { return c.derivative(); }

/// Exact derivation of an element of Q(t)(x).
inline RF derive(const RF& f, DerivationTag d) {
  if (d == DerivationTag::Dx) return f.derivative();
  return f.derive_coefficients([](const ParamRat& c) { return c.derivative(); });
}

inline RF derive_n(RF f, DerivationTag d, int n) {
  for (int i = 0; i < n; ++i) f = derive(f, d);
  return f;
}

/// True when f lies in Q(t), i.e. is annihilated by d/dx.
inline bool is_x_constant(const RF& f) { return f.is_constant(); }

inline bool is_integer_constant(const ParamRat& c) {
  return c.is_constant() && is_integer(c.constant());
}

}  // namespace ppv
