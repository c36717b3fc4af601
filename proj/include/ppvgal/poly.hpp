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
#include <cstddef>
#include <tuple>
#include <utility>
#include <vector>

#include "ppvgal/rational.hpp"

namespace ppv {

namespace detail {
// Unqualified call so that overloads found by argument-dependent lookup at
// instantiation take part.
template <class T>
bool zero(const T& v) {
  return is_zero(v);
}
}  // namespace detail

/// Dense univariate polynomial over an exact field F, coefficients stored
/// lowest degree first. The representation is always trimmed, so the zero
/// polynomial has an empty coefficient vector and degree -1.
template <class F>
class Poly {
 public:
  using coeff_type = F;

  Poly() = default;
  Poly(int c) : Poly(F(c)) {}
  Poly(F c) {
    if (!detail::zero(c)) c_.push_back(std::move(c));
  }
  explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(F c, std::size_t k) {
    if (detail::zero(c)) return {};
    std::vector<F> v(k + 1, F(0));
    v[k] = std::move(c);
    return Poly(std::move(v));
  }
  static Poly var() { return monomial(F(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<F>& coeffs() const { return c_; }

  const F& operator[](std::size_t i) const {
    static const F zero(0);
    return i < c_.size() ? c_[i] : zero;
  }
  const F& lc() const { return (*this)[c_.empty() ? 0 : c_.size() - 1]; }

  void set_coeff(std::size_t i, F v) {
    if (i >= c_.size()) c_.resize(i + 1, F(0));
    c_[i] = std::move(v);
    trim();
  }

  Poly monic() const {
    if (is_zero()) return {};
    F inv = F(1) / lc();
    return *this * inv;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> v(c_.size() - 1, F(0));
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * F(static_cast<long>(i));
    return Poly(std::move(v));
  }

  template <class Fn>
  Poly map(Fn&& fn) const {
    std::vector<F> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(fn(a));
    return Poly(std::move(v));
  }

  F eval(const F& at) const {
    F acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
    return acc;
  }

  /// Substitution p(q(var)).
  Poly compose(const Poly& q) const {
    Poly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + Poly(c_[i]);
    return acc;
  }

  /// p(var + a).
  Poly shift(const F& a) const { return compose(Poly(std::vector<F>{a, F(1)})); }

  /// Reverse coefficient order relative to degree n (var^n p(1/var)).
  Poly reversed(std::size_t n) const {
    std::vector<F> v(n + 1, F(0));
    for (std::size_t i = 0; i < c_.size() && i <= n; ++i) v[n - i] = c_[i];
    return Poly(std::move(v));
  }

  /// Truncation mod var^n.
  Poly truncated(std::size_t n) const {
    if (c_.size() <= n) return *this;
    return Poly(std::vector<F>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  /// Multiplicity of var as a factor (0 for the zero polynomial).
  std::size_t low_degree() const {
    std::size_t k = 0;
    while (k < c_.size() && detail::zero(c_[k])) ++k;
    return k < c_.size() ? k : 0;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> v(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  friend Poly operator*(Poly a, const F& s) {
    if (detail::zero(s)) return {};
    for (auto& c : a.c_) c *= s;
    a.trim();
    return a;
  }
  friend Poly operator*(const F& s, Poly a) { return std::move(a) * s; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Euclidean division over the coefficient field: a = q*b + r, deg r < deg b.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw division_by_zero("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<F> r = a.c_;
    const std::size_t db = b.c_.size() - 1;
    std::vector<F> q(r.size() - db, F(0));
    const F inv = F(1) / b.lc();
    for (std::size_t k = r.size(); k-- > db;) {
      if (detail::zero(r[k])) continue;
      F f = r[k] * inv;
      for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
      q[k - db] = std::move(f);
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  bool divides(const Poly& a) const { return (a % *this).is_zero(); }

 private:
  void trim() {
    while (!c_.empty() && detail::zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
};

template <class F>
bool is_zero(const Poly<F>& p) {
  return p.is_zero();
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

namespace detail {

using ZPoly = std::vector<Integer>;

inline void trim(ZPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Primitive integer polynomial with positive leading coefficient, equal to p
// up to a rational unit.
inline ZPoly primitive_integer_part(const Poly<Rat>& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  z.reserve(p.coeffs().size());
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Integer v = c.get_num() * (den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    z.push_back(std::move(v));
  }
  if (g != 1 && g != 0)
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  if (!z.empty() && sgn(z.back()) < 0)
    for (auto& v : z) v = -v;
  return z;
}

inline void make_primitive_z(ZPoly& z) {
  trim(z);
  Integer g = 0;
  for (const auto& v : z) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (g != 1 && g != 0)
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  if (!z.empty() && sgn(z.back()) < 0)
    for (auto& v : z) v = -v;
}

inline Poly<Rat> to_rat_poly(const ZPoly& z) {
  std::vector<Rat> v;
  v.reserve(z.size());
  for (const auto& c : z) v.emplace_back(c);
  return Poly<Rat>(std::move(v));
}

inline bool divides_z(const ZPoly& g, const ZPoly& a) {
  // Exact division in Z[x] by a primitive divisor.
  if (g.empty()) return a.empty();
  ZPoly r = a;
  const std::size_t dg = g.size() - 1;
  while (r.size() >= g.size()) {
    Integer q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), g.back().get_mpz_t());
    if (sgn(rem) != 0) return false;
    const std::size_t k = r.size() - 1 - dg;
    for (std::size_t j = 0; j <= dg; ++j) r[k + j] -= q * g[j];
    trim(r);
  }
  return r.empty();
}

inline Integer max_norm(const ZPoly& z) {
  Integer m = 0;
  for (const auto& v : z)
    if (abs(v) > m) m = abs(v);
  return m;
}

// Heuristic gcd: evaluate at a large integer, take the integer gcd and read
// the candidate back from its symmetric base-xi digits. Candidates are
// verified by exact division, so a returned value is always correct.
inline bool gcd_heuristic(const ZPoly& a, const ZPoly& b, ZPoly& out) {
  Integer xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Integer va = 0, vb = 0;
    for (std::size_t i = a.size(); i-- > 0;) va = va * xi + a[i];
    for (std::size_t i = b.size(); i-- > 0;) vb = vb * xi + b[i];
    Integer gamma;
    mpz_gcd(gamma.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    ZPoly g;
    Integer half = xi / 2;
    while (sgn(gamma) != 0) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), gamma.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      g.push_back(r);
      gamma = (gamma - r) / xi;
    }
    make_primitive_z(g);
    if (!g.empty() && divides_z(g, a) && divides_z(g, b)) {
      out = std::move(g);
      return true;
    }
    xi = xi * 73794 / 27011;
  }
  return false;
}

inline ZPoly gcd_prs(ZPoly a, ZPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
      Integer la = a.back();
      const std::size_t k = a.size() - 1 - db;
      for (auto& c : a) c *= b.back();
      for (std::size_t j = 0; j <= db; ++j) a[k + j] -= la * b[j];
      trim(a);
    }
    make_primitive_z(a);
    std::swap(a, b);
  }
  return a;
}

}  // namespace detail

/// Monic gcd in Q[v], computed over Z to avoid rational coefficient swell.
inline Poly<Rat> gcd(const Poly<Rat>& a, const Poly<Rat>& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return Poly<Rat>(1);
  detail::ZPoly za = detail::primitive_integer_part(a), zb = detail::primitive_integer_part(b);
  if (za == zb) return a.monic();
  detail::ZPoly g;
  if (!detail::gcd_heuristic(za, zb, g)) g = detail::gcd_prs(std::move(za), std::move(zb));
  return detail::to_rat_poly(g).monic();
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> xgcd(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r0 = a, r1 = b, s0(1), s1, t0, t1(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<F> s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = F(1) / r0.lc();
  return {r0 * inv, s0 * inv, t0 * inv};
}

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return ((a / gcd(a, b)) * b).monic();
}

template <class F>
Poly<F> pow(Poly<F> base, unsigned e) {
  Poly<F> r(1);
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

/// Resultant over a field, by the Euclidean remainder recurrence.
template <class F>
F resultant(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return F(0);
  if (b.degree() == 0) {
    F r(1);
    for (int i = 0; i < a.degree(); ++i) r *= b.lc();
    return r;
  }
  if (a.degree() == 0) {
    F r(1);
    for (int i = 0; i < b.degree(); ++i) r *= a.lc();
    return r;
  }
  Poly<F> rem = a % b;
  if (rem.is_zero()) return F(0);
  const int m = a.degree(), n = b.degree(), k = rem.degree();
  F scale(1);
  for (int i = 0; i < m - k; ++i) scale *= b.lc();
  if ((m * n) % 2 != 0) scale = -scale;
  return scale * resultant(b, rem);
}

/// Multiplicity of the squarefree factor q in p (p nonzero, deg q >= 1).
template <class F>
int multiplicity(const Poly<F>& q, Poly<F> p) {
  int m = 0;
  while (!p.is_zero()) {
    auto [quo, rem] = divmod(p, q);
    if (!rem.is_zero()) break;
    p = std::move(quo);
    ++m;
  }
  return m;
}

/// Yun's squarefree decomposition: returns monic (factor, multiplicity) pairs
/// with pairwise coprime squarefree factors.
template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree_decomposition(const Poly<F>& p) {
  std::vector<std::pair<Poly<F>, int>> out;
  if (p.degree() < 1) return out;
  Poly<F> f = p.monic();
  Poly<F> df = f.derivative();
  Poly<F> a = gcd(f, df);
  Poly<F> b = f / a;
  Poly<F> c = df / a;
  Poly<F> d = c - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    Poly<F> g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

template <class F>
Poly<F> squarefree_part(const Poly<F>& p) {
  if (p.degree() < 1) return Poly<F>(1);
  return (p / gcd(p, p.derivative())).monic();
}

/// Refines a list of polynomials into a coprime base: pairwise coprime monic
/// squarefree factors such that every input is, up to a unit, a product of
/// powers of base elements.
template <class F>
std::vector<Poly<F>> coprime_base(const std::vector<Poly<F>>& inputs) {
  std::vector<Poly<F>> base;
  for (const auto& in : inputs) {
    if (in.degree() < 1) continue;
    for (auto& [fac, mult] : squarefree_decomposition(in)) {
      (void)mult;
      std::vector<Poly<F>> pending{fac};
      while (!pending.empty()) {
        Poly<F> cur = pending.back();
        pending.pop_back();
        if (cur.degree() < 1) continue;
        bool merged = false;
        for (std::size_t i = 0; i < base.size(); ++i) {
          Poly<F> g = gcd(cur, base[i]);
          if (g.degree() < 1) continue;
          Poly<F> old = base[i];
          base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
          pending.push_back(g);
          pending.push_back((old / g).monic());
          pending.push_back((cur / g).monic());
          merged = true;
          break;
        }
        if (!merged) base.push_back(cur.monic());
      }
    }
  }
  return base;
}

}  // namespace ppv
