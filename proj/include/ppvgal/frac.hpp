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

#include <utility>
#include <vector>

#include "ppvgal/poly.hpp"

namespace ppv {

/// Element of the rational function field F(v) in reduced form: the
/// denominator is monic and coprime to the numerator, so structural equality
/// coincides with equality in the field.
template <class F>
class Frac {
 public:
  using coeff_type = F;
  using poly_type = Poly<F>;

  Frac() : den_(1) {}
  Frac(int c) : num_(F(c)), den_(1) {}
  Frac(long c) : num_(F(c)), den_(1) {}
  Frac(F c) : num_(std::move(c)), den_(1) {}
  Frac(Poly<F> p) : num_(std::move(p)), den_(1) {}

  static Frac make(Poly<F> num, Poly<F> den) {
    if (den.is_zero()) throw division_by_zero("rational function with zero denominator");
    Frac r;
    if (num.is_zero()) return r;
    if (den.degree() == 0) {
      F inv = F(1) / den.lc();
      r.num_ = std::move(num) * inv;
      return r;
    }
    Poly<F> g = gcd(num, den);
    if (g.degree() >= 1) {
      num = num / g;
      den = den / g;
    }
    F inv = F(1) / den.lc();
    r.num_ = std::move(num) * inv;
    r.den_ = std::move(den) * inv;
    return r;
  }

  static Frac var() { return Frac(Poly<F>::var()); }

  const Poly<F>& num() const { return num_; }
  const Poly<F>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }
  bool is_constant() const { return is_poly() && num_.degree() <= 0; }
  /// Value of a constant element (caller checks is_constant()).
  F constant() const { return num_[0]; }

  Frac inverse() const {
    if (is_zero()) throw division_by_zero("inverse of zero");
    Frac r;
    F inv = F(1) / num_.lc();
    r.num_ = den_ * inv;
    r.den_ = num_ * inv;
    return r;
  }

  /// Derivative with respect to the field variable.
  Frac derivative() const {
    if (is_poly()) return Frac(num_.derivative());
    // With g = gcd(den, den'), the result below is already reduced.
    Poly<F> dd = den_.derivative();
    Poly<F> g = gcd(den_, dd);
    Poly<F> r = g.degree() >= 1 ? den_ / g : den_;
    if (g.degree() >= 1) dd = dd / g;
    return raw(num_.derivative() * r - num_ * dd, den_ * r);
  }

  /// Extends a derivation of the coefficient field (acting trivially on the
  /// variable) to the whole field by the quotient rule.
  template <class Deriv>
  Frac derive_coefficients(Deriv&& d) const {
    Poly<F> nd = num_.map(d);
    if (is_poly()) return Frac(std::move(nd));
    Poly<F> dd = den_.map(d);
    if (dd.is_zero()) return make(std::move(nd), den_);
    Poly<F> g = gcd(den_, dd);
    Poly<F> r = g.degree() >= 1 ? den_ / g : den_;
    if (g.degree() >= 1) dd = dd / g;
    return make(nd * r - num_ * dd, den_ * r);
  }

  F eval(const F& at) const {
    F d = den_.eval(at);
    if (detail::zero(d)) throw division_by_zero("evaluation at a pole");
    return num_.eval(at) / d;
  }

  Frac operator-() const {
    Frac r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Frac operator+(const Frac& a, const Frac& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      if (a.is_poly()) return Frac(a.num_ + b.num_);
      return make(a.num_ + b.num_, a.den_);
    }
    if (a.is_poly()) return raw(a.num_ * b.den_ + b.num_, b.den_);
    if (b.is_poly()) return raw(a.num_ + b.num_ * a.den_, a.den_);
    Poly<F> g = gcd(a.den_, b.den_);
    if (g.degree() < 1) return raw(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly<F> ad = a.den_ / g, bd = b.den_ / g;
    Poly<F> n = a.num_ * bd + b.num_ * ad;
    if (n.is_zero()) return Frac();
    Poly<F> h = gcd(n, g);
    if (h.degree() >= 1) return raw(n / h, ad * bd * (g / h));
    return raw(std::move(n), ad * bd * g);
  }
  friend Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }
  friend Frac operator*(const Frac& a, const Frac& b) {
    if (a.is_zero() || b.is_zero()) return Frac();
    if (a.is_poly() && b.is_poly()) return Frac(a.num_ * b.num_);
    Poly<F> g1 = a.den_.degree() >= 1 && b.num_.degree() >= 1 ? gcd(b.num_, a.den_) : Poly<F>(1);
    Poly<F> g2 = b.den_.degree() >= 1 && a.num_.degree() >= 1 ? gcd(a.num_, b.den_) : Poly<F>(1);
    Poly<F> n1 = g2.degree() >= 1 ? a.num_ / g2 : a.num_;
    Poly<F> d2 = g2.degree() >= 1 ? b.den_ / g2 : b.den_;
    Poly<F> n2 = g1.degree() >= 1 ? b.num_ / g1 : b.num_;
    Poly<F> d1 = g1.degree() >= 1 ? a.den_ / g1 : a.den_;
    return raw(n1 * n2, d1 * d2);
  }
  friend Frac operator/(const Frac& a, const Frac& b) { return a * b.inverse(); }

  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }
  Frac& operator/=(const Frac& o) { return *this = *this / o; }

  friend bool operator==(const Frac& a, const Frac& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

 private:
  // Numerator and denominator already coprime; only the unit is fixed here.
  static Frac raw(Poly<F> num, Poly<F> den) {
    Frac r;
    if (num.is_zero()) return r;
    F inv = F(1) / den.lc();
    if (inv == F(1)) {
      r.num_ = std::move(num);
      r.den_ = std::move(den);
    } else {
      r.num_ = std::move(num) * inv;
      r.den_ = std::move(den) * inv;
    }
    return r;
  }

  Poly<F> num_;
  Poly<F> den_;
};

template <class F>
bool is_zero(const Frac<F>& f) {
  return f.is_zero();
}

template <class F>
Frac<F> pow(const Frac<F>& base, int e) {
  if (e < 0) return pow(base.inverse(), -e);
  Frac<F> r(1), b = base;
  unsigned u = static_cast<unsigned>(e);
  while (u) {
    if (u & 1u) r *= b;
    u >>= 1u;
    if (u) b *= b;
  }
  return r;
}

namespace detail {

// Polynomial in x whose coefficients lie in Q[t], stored lowest degree first.
using BiPoly = std::vector<Poly<Rat>>;

inline void trim(BiPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline BiPoly clear_denominators(const Poly<Frac<Rat>>& p) {
  Poly<Rat> m(1);
  for (const auto& c : p.coeffs())
    if (c.den().degree() >= 1) m = lcm(m, c.den());
  BiPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.num() * (m / c.den()));
  return out;
}

// Divides out the Q[t]-content and scales the leading rational to 1.
inline void make_primitive(BiPoly& p) {
  trim(p);
  if (p.empty()) return;
  Poly<Rat> g;
  for (const auto& c : p) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  if (g.degree() >= 1)
    for (auto& c : p) c = c / g;
  Rat s = Rat(1) / p.back().lc();
  if (s != 1)
    for (auto& c : p) c = c * s;
}

inline BiPoly pseudo_remainder(BiPoly a, const BiPoly& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    Poly<Rat> la = a.back();
    const std::size_t k = a.size() - 1 - db;
    for (auto& c : a) c = c * b.back();
    for (std::size_t j = 0; j <= db; ++j) a[k + j] -= la * b[j];
    trim(a);
  }
  return a;
}

inline Poly<Rat> specialize(const Poly<Rat>& c, const Rat& t0) { return Poly<Rat>(c.eval(t0)); }

}  // namespace detail

namespace detail {

inline std::size_t t_degree(const BiPoly& p) {
  std::size_t d = 0;
  for (const auto& c : p) d = std::max(d, static_cast<std::size_t>(std::max(c.degree(), 0)));
  return d;
}

/// Newton interpolation through (xs[i], ys[i]).
inline Poly<Rat> interpolate(const std::vector<Rat>& xs, std::vector<Rat> ys) {
  const std::size_t n = xs.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - k]);
  Poly<Rat> acc;
  for (std::size_t i = n; i-- > 0;) acc = acc * Poly<Rat>(std::vector<Rat>{-xs[i], Rat(1)}) + Poly<Rat>(ys[i]);
  return acc;
}

inline bool pseudo_divides(const BiPoly& g, const BiPoly& a) { return pseudo_remainder(a, g).empty(); }

/// Gcd of primitive pa, pb by evaluation at t = 1, 2, ... and interpolation.
/// Images of minimal x-degree are scaled to lc = gamma(t_i), gamma the gcd
/// of the leading coefficients, so deg_t(gamma) + min deg_t bounds the
/// interpolant. Returns nothing if verification keeps failing.
inline std::optional<BiPoly> gcd_interpolate(const BiPoly& pa, const BiPoly& pb) {
  const Poly<Rat> gamma = gcd(pa.back(), pb.back());
  const std::size_t need = static_cast<std::size_t>(gamma.degree()) + std::min(t_degree(pa), t_degree(pb)) + 1;
  std::vector<Rat> xs;
  std::vector<std::vector<Rat>> images;
  int best = -1, failures = 0;
  for (long t0 = 1; t0 < 4096 && failures < 3; ++t0) {
    Rat q(t0);
    if (pa.back().eval(q) == 0 || pb.back().eval(q) == 0) continue;
    std::vector<Rat> va, vb;
    for (const auto& c : pa) va.push_back(c.eval(q));
    for (const auto& c : pb) vb.push_back(c.eval(q));
    Poly<Rat> g = gcd(Poly<Rat>(va), Poly<Rat>(vb));
    if (best >= 0 && g.degree() > best) continue;
    if (g.degree() == 0) return BiPoly{Poly<Rat>(1)};
    if (g.degree() < best || best < 0) {
      best = g.degree();
      xs.clear();
      images.clear();
    }
    g = g.monic() * gamma.eval(q);
    xs.push_back(q);
    images.push_back(g.coeffs());
    if (xs.size() < need) continue;
    BiPoly h(static_cast<std::size_t>(best) + 1);
    for (std::size_t j = 0; j < h.size(); ++j) {
      std::vector<Rat> ys;
      for (const auto& im : images) ys.push_back(im[j]);
      h[j] = interpolate(xs, ys);
    }
    make_primitive(h);
    if (pseudo_divides(h, pa) && pseudo_divides(h, pb)) return h;
    ++failures;
  }
  return std::nullopt;
}

}  // namespace detail

/// Monic gcd in Q(t)[x]. A specialization t = t0 that keeps both leading
/// coefficients nonzero can only raise the gcd degree, so a trivial
/// specialized gcd certifies coprimality. Otherwise the gcd is interpolated
/// from specializations, with a primitive remainder sequence over Q[t] as
/// the fallback.
inline Poly<Frac<Rat>> gcd(const Poly<Frac<Rat>>& a, const Poly<Frac<Rat>>& b) {
  using XP = Poly<Frac<Rat>>;
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return XP(1);
  detail::BiPoly pa = detail::clear_denominators(a), pb = detail::clear_denominators(b);
  for (long t0 = 0, tries = 0; tries < 2 && t0 < 64; ++t0) {
    Rat q(t0);
    if (pa.back().eval(q) == 0 || pb.back().eval(q) == 0) continue;
    ++tries;
    std::vector<Rat> va, vb;
    for (const auto& c : pa) va.push_back(c.eval(q));
    for (const auto& c : pb) vb.push_back(c.eval(q));
    if (gcd(Poly<Rat>(va), Poly<Rat>(vb)).degree() == 0) return XP(1);
  }
  detail::make_primitive(pa);
  detail::make_primitive(pb);
  auto result = detail::gcd_interpolate(pa, pb);
  if (!result) {
    if (pa.size() < pb.size()) std::swap(pa, pb);
    while (!pb.empty()) {
      detail::BiPoly r = detail::pseudo_remainder(pa, pb);
      detail::make_primitive(r);
      pa = std::move(pb);
      pb = std::move(r);
    }
    result = std::move(pa);
  }
  std::vector<Frac<Rat>> coeffs;
  coeffs.reserve(result->size());
  for (auto& c : *result) coeffs.emplace_back(std::move(c));
  return XP(std::move(coeffs)).monic();
}

}  // namespace ppv
