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
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ppvgal/field.hpp"

namespace ppv {

namespace detail {

inline Integer pollard_rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
  if (n <= 1) return;
  for (unsigned long p = 2; p < 1000; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  if (n == 1) return;
  std::vector<Integer> stack{n};
  while (!stack.empty()) {
    Integer m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (mpz_probab_prime_p(m.get_mpz_t(), 30)) {
      ++out[m];
      continue;
    }
    Integer d = pollard_rho(m);
    stack.push_back(d);
    stack.push_back(m / d);
  }
}

}  // namespace detail

/// Positive divisors of |n| (n nonzero), ascending.
inline std::vector<Integer> divisors(const Integer& n) {
  if (n == 0) throw std::invalid_argument("divisors of zero");
  std::map<Integer, int> fac;
  detail::factor_into(abs(n), fac);
  std::vector<Integer> out{1};
  for (const auto& [p, e] : fac) {
    std::size_t sz = out.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Distinct rational roots of a nonzero polynomial over Q, ascending.
inline std::vector<Rat> rational_roots(const Poly<Rat>& p) {
  if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  std::vector<Rat> out;
  if (p.degree() < 1) return out;
  detail::ZPoly z = detail::primitive_integer_part(squarefree_part(p));
  std::size_t low = 0;
  while (low < z.size() && sgn(z[low]) == 0) ++low;
  if (low > 0) {
    out.emplace_back(0);
    z.erase(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (z.size() >= 2) {
    auto nums = divisors(z.front());
    auto dens = divisors(z.back());
    const std::size_t n = z.size() - 1;
    for (const auto& q : dens)
      for (const auto& a : nums) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
        if (g != 1) continue;
        for (int sign : {1, -1}) {
          Integer num = sign * a;
          // z(num/q) * q^n evaluated in Z.
          Integer acc = 0, qpow = 1;
          std::vector<Integer> qp(n + 1);
          for (std::size_t i = 0; i <= n; ++i) {
            qp[i] = qpow;
            qpow *= q;
          }
          Integer npow = 1;
          for (std::size_t i = 0; i <= n; ++i) {
            acc += z[i] * npow * qp[n - i];
            npow *= num;
          }
          if (acc == 0) out.emplace_back(num, q);
        }
      }
  }
  for (auto& r : out) r.canonicalize();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Distinct integer roots of a nonzero polynomial over Q, ascending.
inline std::vector<Integer> integer_roots(const Poly<Rat>& p) {
  std::vector<Integer> out;
  for (const auto& r : rational_roots(p))
    if (is_integer(r)) out.push_back(r.get_num());
  return out;
}

/// Integers n with P(n) = 0 identically in Q(t).
inline std::vector<Integer> integer_roots(const Poly<ParamRat>& P) {
  if (P.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  // Clear t-denominators, then collect the Q[s] coefficient of each t^j.
  TPoly m(1);
  for (const auto& c : P.coeffs())
    if (c.den().degree() >= 1) m = lcm(m, c.den());
  std::vector<std::vector<Rat>> by_t;
  for (std::size_t i = 0; i < P.coeffs().size(); ++i) {
    TPoly c = P.coeffs()[i].num() * (m / P.coeffs()[i].den());
    for (std::size_t j = 0; j < c.coeffs().size(); ++j) {
      if (by_t.size() <= j) by_t.resize(j + 1);
      if (by_t[j].size() <= i) by_t[j].resize(i + 1, Rat(0));
      by_t[j][i] = c.coeffs()[j];
    }
  }
  TPoly g;
  for (const auto& row : by_t) {
    g = gcd(g, TPoly(row));
    if (g.degree() == 0) return {};
  }
  if (g.is_zero()) return {};
  return integer_roots(g);
}

namespace detail {

inline Poly<Rat> series_mul(const Poly<Rat>& a, const Poly<Rat>& b, std::size_t n) {
  return (a.truncated(n) * b.truncated(n)).truncated(n);
}

inline Poly<Rat> series_inverse(const Poly<Rat>& a, std::size_t n) {
  Poly<Rat> b(Rat(1) / a[0]);
  for (std::size_t k = 1; k < n;) {
    k = std::min(2 * k, n);
    Poly<Rat> e = Poly<Rat>(2) - series_mul(a, b, k);
    b = series_mul(b, e, k);
  }
  return b.truncated(n);
}

inline Poly<Rat> eval_series(const std::vector<Poly<Rat>>& P, const Poly<Rat>& s, std::size_t n) {
  Poly<Rat> acc;
  for (std::size_t i = P.size(); i-- > 0;) acc = series_mul(acc, s, n) + P[i].truncated(n);
  return acc;
}

// Rational function a/b with deg a <= da, deg b <= db matching the series
// modulo u^n (n > da + db), if one exists.
inline std::optional<std::pair<Poly<Rat>, Poly<Rat>>> pade(const Poly<Rat>& s, std::size_t n, int da,
                                                          int db) {
  Poly<Rat> r0 = Poly<Rat>::monomial(Rat(1), n), r1 = s.truncated(n), t0, t1(1);
  while (r1.degree() > da) {
    auto [q, r] = divmod(r0, r1);
    Poly<Rat> t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1.degree() > db || t1.is_zero() || is_zero(t1[0])) return std::nullopt;
  return std::make_pair(r1, t1);
}

}  // namespace detail

/// Distinct roots in Q(t) of a nonzero polynomial with Q(t) coefficients.
/// Roots are found at a specialization t = t0, lifted to power series in
/// t - t0 by Newton iteration, reconstructed by Pade approximation and
/// verified exactly.
inline std::vector<ParamRat> param_roots(const Poly<ParamRat>& P) {
  if (P.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  std::vector<ParamRat> out;
  if (P.degree() < 1) return out;
  XPoly Q = squarefree_part(P);
  if (is_zero(Q[0])) {
    out.emplace_back();
    Q = Q / XPoly::var();
  }
  if (Q.degree() < 1) return out;
  TPoly m(1);
  for (const auto& c : Q.coeffs())
    if (c.den().degree() >= 1) m = lcm(m, c.den());
  std::vector<TPoly> coeffs;
  for (const auto& c : Q.coeffs()) coeffs.push_back(c.num() * (m / c.den()));
  const int da = coeffs.front().degree(), db = coeffs.back().degree();
  const std::size_t prec = static_cast<std::size_t>(da + db + 2);

  for (long k = 0; k < 400; ++k) {
    Rat t0(k % 2 == 0 ? k / 2 : -(k + 1) / 2);
    if (is_zero(coeffs.back().eval(t0)) || is_zero(coeffs.front().eval(t0))) continue;
    std::vector<Rat> spec;
    for (const auto& c : coeffs) spec.push_back(c.eval(t0));
    Poly<Rat> ps(spec);
    if (gcd(ps, ps.derivative()).degree() > 0) continue;

    const TPoly shift_to_u = TPoly(std::vector<Rat>{t0, Rat(1)});  // t = u + t0
    std::vector<Poly<Rat>> Pu, dPu;
    for (const auto& c : coeffs) Pu.push_back(c.compose(shift_to_u));
    for (std::size_t i = 1; i < Pu.size(); ++i) dPu.push_back(Pu[i] * Rat(static_cast<long>(i)));
    const TPoly back_to_t = TPoly(std::vector<Rat>{-t0, Rat(1)});  // u = t - t0
    for (const auto& r0 : rational_roots(ps)) {
      Poly<Rat> s(r0);
      for (std::size_t n = 1; n < prec;) {
        n = std::min(2 * n, prec);
        Poly<Rat> f = detail::eval_series(Pu, s, n);
        Poly<Rat> df = detail::eval_series(dPu, s, n);
        s = (s - detail::series_mul(f, detail::series_inverse(df, n), n)).truncated(n);
      }
      auto pq = detail::pade(s, prec, da, db);
      if (!pq) continue;
      ParamRat cand = ParamRat::make(pq->first.compose(back_to_t), pq->second.compose(back_to_t));
      if (Q.eval(cand).is_zero()) out.push_back(cand);
    }
    return out;
  }
  throw std::runtime_error("no admissible specialization point for root finding");
}

/// Square root in Q(t), if it exists.
inline std::optional<ParamRat> param_sqrt(const ParamRat& c) {
  if (c.is_zero()) return ParamRat();
  XPoly s2 = XPoly::monomial(ParamRat(1), 2) - XPoly(c);
  auto r = param_roots(s2);
  if (r.empty()) return std::nullopt;
  return r.front();
}

}  // namespace ppv
