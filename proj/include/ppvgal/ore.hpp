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
#include <utility>
#include <vector>

#include "ppvgal/field.hpp"

namespace ppv {

/// Linear differential operator sum_i a_i D^i over Q(t)(x), where D = d/dx
/// and D a = a D + a'. The zero operator has order -1, which compares below
/// every nonzero order.
class OrePoly {
 public:
  OrePoly() = default;
  OrePoly(int c) : OrePoly(RF(c)) {}
  OrePoly(RF a) {
    if (!a.is_zero()) c_.push_back(std::move(a));
  }
  explicit OrePoly(std::vector<RF> coeffs) : c_(std::move(coeffs)) { trim(); }

  static OrePoly D(int k = 1) {
    std::vector<RF> v(static_cast<std::size_t>(k) + 1, RF());
    v.back() = RF(1);
    return OrePoly(std::move(v));
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<RF>& coeffs() const { return c_; }
  const RF& coeff(std::size_t i) const {
    static const RF zero;
    return i < c_.size() ? c_[i] : zero;
  }
  const RF& lc() const { return coeff(c_.empty() ? 0 : c_.size() - 1); }

  /// Left multiplication by the inverse leading coefficient.
  OrePoly monic() const {
    if (is_zero()) return {};
    return lc().inverse() * *this;
  }

  OrePoly operator-() const {
    OrePoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  friend OrePoly operator+(const OrePoly& a, const OrePoly& b) {
    std::vector<RF> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return OrePoly(std::move(v));
  }
  friend OrePoly operator-(const OrePoly& a, const OrePoly& b) { return a + (-b); }
  /// Scalar acting on the left: coefficient-wise.
  friend OrePoly operator*(const RF& s, const OrePoly& a) {
    if (s.is_zero()) return {};
    std::vector<RF> v;
    v.reserve(a.c_.size());
    for (const auto& c : a.c_) v.push_back(s * c);
    return OrePoly(std::move(v));
  }
  /// Noncommutative product; composition of operators.
  friend OrePoly operator*(const OrePoly& a, const OrePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<RF> acc(a.c_.size() + b.c_.size() - 1);
    std::vector<RF> cur = b.c_;  // D^i * b
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (i > 0) {
        std::vector<RF> next(cur.size() + 1);
        for (std::size_t j = 0; j < cur.size(); ++j) {
          next[j] += cur[j].derivative();
          next[j + 1] += cur[j];
        }
        cur = std::move(next);
      }
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < cur.size(); ++j)
        if (!cur[j].is_zero()) acc[j] += a.c_[i] * cur[j];
    }
    return OrePoly(std::move(acc));
  }
  OrePoly& operator+=(const OrePoly& o) { return *this = *this + o; }
  OrePoly& operator-=(const OrePoly& o) { return *this = *this - o; }
  OrePoly& operator*=(const OrePoly& o) { return *this = *this * o; }

  friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const OrePoly& a, const OrePoly& b) { return !(a == b); }

  /// Applies the operator to a function: sum_i a_i d^i f / dx^i.
  RF apply(RF f) const {
    RF acc;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0) f = f.derivative();
      if (f.is_zero()) break;
      if (!c_[i].is_zero()) acc += c_[i] * f;
    }
    return acc;
  }

  /// Coefficient-wise derivation in t (acts on coefficients, commutes with D).
  OrePoly derive_t() const {
    std::vector<RF> v;
    for (const auto& c : c_) v.push_back(derive(c, DerivationTag::Dt));
    return OrePoly(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<RF> c_;
};

inline bool is_zero(const OrePoly& p) { return p.is_zero(); }

inline OrePoly ore_mul(const OrePoly& a, const OrePoly& b) { return a * b; }
inline RF apply(const OrePoly& op, const RF& f) { return op.apply(f); }

struct OreDivision {
  OrePoly quotient;
  OrePoly remainder;
};

/// a = q * b + r with order(r) < order(b).
inline OreDivision right_divide(OrePoly a, const OrePoly& b) {
  if (b.is_zero()) throw division_by_zero("right division by the zero operator");
  OrePoly q;
  const RF inv = b.lc().inverse();
  while (a.order() >= b.order()) {
    int k = a.order() - b.order();
    OrePoly term = (a.lc() * inv) * OrePoly::D(k);
    q += term;
    a -= term * b;
  }
  return {q, a};
}

/// a = b * q + r with order(r) < order(b).
inline OreDivision left_divide(OrePoly a, const OrePoly& b) {
  if (b.is_zero()) throw division_by_zero("left division by the zero operator");
  OrePoly q;
  const RF inv = b.lc().inverse();
  while (a.order() >= b.order()) {
    int k = a.order() - b.order();
    OrePoly term = OrePoly(inv * a.lc()) * OrePoly::D(k);
    q += term;
    a -= b * term;
  }
  return {q, a};
}

/// Monic greatest common right divisor.
inline OrePoly gcrd(OrePoly a, OrePoly b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcrd of two zero operators");
  while (!b.is_zero()) {
    OrePoly r = right_divide(a, b).remainder;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// Monic least common left multiple, from the extended right Euclidean
/// algorithm: the last cofactor pair annihilates (a, b).
inline OrePoly lclm(const OrePoly& a, const OrePoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("lclm of two zero operators");
  if (a.is_zero() || b.is_zero()) return {};
  OrePoly r0 = a, r1 = b, s0(1), s1;
  while (!r1.is_zero()) {
    auto [q, r] = right_divide(r0, r1);
    OrePoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return (s1 * a).monic();
}

}  // namespace ppv
