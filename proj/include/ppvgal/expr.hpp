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

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "ppvgal/ore.hpp"

namespace ppv {

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Recursive-descent parser for
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := ('+'|'-') unary | power
//   power := atom ('^' ['-'] integer)?
//   atom  := integer | 'x' | 't' | 'D' | '(' expr ')'
// Values are operators; plain field elements are operators of order <= 0.
class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : s_(src) {}

  OrePoly parse() {
    OrePoly v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  OrePoly expr() {
    OrePoly v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  OrePoly term() {
    OrePoly v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        OrePoly d = unary();
        if (d.order() > 0) fail("division by an operator");
        if (d.is_zero()) fail("division by zero");
        v = v * OrePoly(d.lc().inverse());
      } else {
        return v;
      }
    }
  }
  OrePoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  OrePoly power() {
    OrePoly base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long e = std::stol(std::string(s_.substr(start, pos_ - start)));
    if (neg) {
      if (base.order() > 0) fail("negative power of an operator");
      if (base.is_zero()) fail("negative power of zero");
      return OrePoly(pow(base.lc(), static_cast<int>(-e)));
    }
    if (base.order() <= 0) return OrePoly(pow(base.coeff(0), static_cast<int>(e)));
    OrePoly r(1);
    for (long i = 0; i < e; ++i) r = r * base;
    return r;
  }
  OrePoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      OrePoly v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer n(std::string(s_.substr(start, pos_ - start)));
      return OrePoly(RF(ParamRat(Rat(n))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view id = s_.substr(start, pos_ - start);
      if (id == "x") return OrePoly(rf_x());
      if (id == "t") return OrePoly(rf_t());
      if (id == "D") return OrePoly::D();
      pos_ = start;
      fail("unknown symbol '" + std::string(id) + "'");
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Bivariate monomial map keyed by (x-degree, t-degree).
using Monomials = std::map<std::pair<int, int>, Rat>;

inline std::string monomial_sum(const Monomials& m, const char* xv, const char* tv) {
  if (m.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    auto [i, j] = it->first;
    Rat c = it->second;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    std::string vars;
    auto add_var = [&](const char* v, int e) {
      if (e == 0) return;
      if (!vars.empty()) vars += "*";
      vars += v;
      if (e > 1) vars += "^" + std::to_string(e);
    };
    add_var(xv, i);
    add_var(tv, j);
    std::string body;
    if (vars.empty())
      body = c.get_str();
    else if (c == 1)
      body = vars;
    else
      body = c.get_str() + "*" + vars;
    if (first)
      out = neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

inline TPoly lcm_of_denominators(const XPoly& p, TPoly acc) {
  for (const auto& c : p.coeffs()) acc = lcm(acc, c.den());
  return acc;
}

inline Monomials to_monomials(const XPoly& p, const TPoly& m) {
  Monomials out;
  for (int i = 0; i <= p.degree(); ++i) {
    const ParamRat& c = p[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    TPoly cp = c.num() * (m / c.den());
    for (int j = 0; j <= cp.degree(); ++j)
      if (!is_zero(cp[static_cast<std::size_t>(j)])) out[{i, j}] = cp[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace detail

/// Parses a field element of Q(t)(x) from the textual grammar.
inline RF parse_rf(std::string_view s) {
  OrePoly v = detail::ExprParser(s).parse();
  if (v.order() > 0) throw parse_error("expected a rational function, found an operator: '" + std::string(s) + "'");
  return v.coeff(0);
}

/// Parses an operator written with D = d/dx, e.g. "D^2 - (x*t)^2".
inline OrePoly parse_operator(std::string_view s) { return detail::ExprParser(s).parse(); }

/// Canonical text form: numerator and denominator as expanded polynomials in
/// Q[x, t], denominator with leading x-coefficient monic in t. The output is a
/// fixed point of parse_rf followed by to_string.
inline std::string to_string(const RF& f, const char* xv = "x", const char* tv = "t") {
  if (f.is_zero()) return "0";
  TPoly m = detail::lcm_of_denominators(f.den(), detail::lcm_of_denominators(f.num(), TPoly(1)));
  auto num = detail::to_monomials(f.num(), m);
  auto den = detail::to_monomials(f.den(), m);
  std::string ns = detail::monomial_sum(num, xv, tv);
  if (den.size() == 1 && den.begin()->first == std::pair<int, int>{0, 0}) return ns;
  std::string ds = detail::monomial_sum(den, xv, tv);
  bool den_simple = den.size() == 1 && (den.begin()->first.first == 0 || den.begin()->first.second == 0);
  if (num.size() > 1) ns = "(" + ns + ")";
  if (!den_simple) ds = "(" + ds + ")";
  return ns + "/" + ds;
}

inline std::string to_string(const ParamRat& c, const char* tv = "t") { return to_string(RF(c), "x", tv); }

inline std::string to_string(const OrePoly& L) {
  if (L.is_zero()) return "0";
  std::string out;
  for (int i = L.order(); i >= 0; --i) {
    const RF& c = L.coeff(static_cast<std::size_t>(i));
    if (c.is_zero()) continue;
    std::string cs = to_string(c);
    std::string d = i == 0 ? "" : (i == 1 ? "D" : "D^" + std::to_string(i));
    std::string term;
    if (d.empty())
      term = "(" + cs + ")";
    else if (c == RF(1))
      term = d;
    else
      term = "(" + cs + ")*" + d;
    out += out.empty() ? term : " + " + term;
  }
  return out;
}

}  // namespace ppv
