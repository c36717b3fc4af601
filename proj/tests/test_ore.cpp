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

#include <gtest/gtest.h>

#include <random>

#include "ppvgal/expr.hpp"
#include "ppvgal/ore.hpp"
#include "test_support.hpp"

namespace ppv {
namespace {

const OrePoly D = OrePoly::D(1);

// Independent check of a product: both sides applied to a list of test
// functions must agree.
bool same_action(const OrePoly& lhs, const OrePoly& a, const OrePoly& b) {
  for (const char* f : {"1", "x", "x^2", "x^3", "t/(x+1)", "1/(x^2+t)"}) {
    RF v = parse_rf(f);
    if (apply(lhs, v) != apply(a, apply(b, v))) return false;
  }
  return true;
}

TEST(OreMul, CommutationRule) {
  OrePoly x(rf_x());
  EXPECT_EQ(ore_mul(D, x), x * D + OrePoly(1));
}

TEST(OreMul, FactoredRiccatiProduct) {
  OrePoly a = D + OrePoly(parse_rf("x*t")), b = D - OrePoly(parse_rf("x*t"));
  OrePoly expected = parse_operator("D^2 - x^2*t^2 - t");
  EXPECT_EQ(ore_mul(a, b), expected);
  EXPECT_TRUE(same_action(expected, a, b));
}

TEST(OreMul, UnitIsNeutral) {
  OrePoly L = parse_operator("x*D^2 + t*D - 1/x");
  EXPECT_EQ(ore_mul(L, OrePoly(1)), L);
  EXPECT_EQ(ore_mul(OrePoly(1), L), L);
}

TEST(Apply, Examples) {
  EXPECT_EQ(apply(parse_operator("D + x*t"), RF(1)), parse_rf("x*t"));
  EXPECT_EQ(apply(parse_operator("D^2 - (x*t)^2"), RF()), RF());
  EXPECT_EQ(apply(D, parse_rf("x^2")), parse_rf("2*x"));
}

TEST(Division, RightExamples) {
  auto [q, r] = right_divide(parse_operator("D^2 - x^2*t^2 - t"), parse_operator("D - x*t"));
  EXPECT_EQ(q, parse_operator("D + x*t"));
  EXPECT_TRUE(r.is_zero());
  auto [q2, r2] = right_divide(D, D);
  EXPECT_EQ(q2, OrePoly(1));
  EXPECT_TRUE(r2.is_zero());
  auto [q3, r3] = right_divide(OrePoly(rf_x()), D);
  EXPECT_TRUE(q3.is_zero());
  EXPECT_EQ(r3, OrePoly(rf_x()));
}

TEST(Division, LeftExamples) {
  auto [q, r] = left_divide(parse_operator("D^2 - x^2*t^2 - t"), parse_operator("D + x*t"));
  EXPECT_EQ(q, parse_operator("D - x*t"));
  EXPECT_TRUE(r.is_zero());
  auto [q2, r2] = left_divide(D, D);
  EXPECT_EQ(q2, OrePoly(1));
  EXPECT_TRUE(r2.is_zero());
  auto [q3, r3] = left_divide(OrePoly(rf_x()), D);
  EXPECT_TRUE(q3.is_zero());
  EXPECT_EQ(r3, OrePoly(rf_x()));
}

TEST(Division, ByZeroThrows) {
  EXPECT_THROW(right_divide(D, OrePoly()), division_by_zero);
  EXPECT_THROW(left_divide(D, OrePoly()), division_by_zero);
}

TEST(Euclid, GcrdAndLclmExamples) {
  OrePoly L = parse_operator("x*D^2 + t*D - 1");
  EXPECT_EQ(gcrd(L, L), L.monic());
  EXPECT_EQ(lclm(D, D), D);
  EXPECT_THROW(gcrd(OrePoly(), OrePoly()), std::invalid_argument);
  EXPECT_THROW(lclm(OrePoly(), OrePoly()), std::invalid_argument);
}

TEST(Euclid, SharedRightFactor) {
  std::mt19937 rng(5);
  OrePoly F = parse_operator("D - 1/x");
  int checked = 0;
  for (int i = 0; i < 20 && checked < 8; ++i) {
    OrePoly P = test::random_ore(rng, 1, 1), Q = test::random_ore(rng, 1, 1);
    if (gcrd(P, Q).order() != 0) continue;
    EXPECT_EQ(gcrd(P * F, Q * F), F);
    ++checked;
  }
  EXPECT_GE(checked, 8);
}

TEST(Euclid, LclmIsCommonLeftMultiple) {
  std::mt19937 rng(8);
  for (int i = 0; i < 10; ++i) {
    OrePoly A = test::random_ore(rng, 1, 1), B = test::random_ore(rng, 1, 1);
    OrePoly M = lclm(A, B);
    EXPECT_TRUE(right_divide(M, A).remainder.is_zero());
    EXPECT_TRUE(right_divide(M, B).remainder.is_zero());
    EXPECT_LE(M.order(), A.order() + B.order());
    OrePoly G = gcrd(A, B);
    EXPECT_TRUE(right_divide(A, G).remainder.is_zero());
    EXPECT_TRUE(right_divide(B, G).remainder.is_zero());
  }
}

TEST(OreProperties, AssociativityAndDistributivity) {
  std::mt19937 rng(99);
  for (int i = 0; i < 15; ++i) {
    OrePoly a = test::random_ore(rng, 1, 1), b = test::random_ore(rng, 1, 1), c = test::random_ore(rng, 1, 1);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(OreProperties, ProductActsAsComposition) {
  std::mt19937 rng(3);
  for (int i = 0; i < 15; ++i) {
    OrePoly a = test::random_ore(rng, 2, 1), b = test::random_ore(rng, 1, 1);
    EXPECT_TRUE(same_action(a * b, a, b));
  }
}

TEST(OreProperties, DivisionIdentities) {
  std::mt19937 rng(41);
  for (int i = 0; i < 20; ++i) {
    OrePoly a = test::random_ore(rng, 3, 1), b = test::random_ore(rng, 1, 1);
    auto rd = right_divide(a, b);
    EXPECT_EQ(rd.quotient * b + rd.remainder, a);
    EXPECT_LT(rd.remainder.order(), b.order());
    auto ld = left_divide(a, b);
    EXPECT_EQ(b * ld.quotient + ld.remainder, a);
    EXPECT_LT(ld.remainder.order(), b.order());
  }
}

TEST(OrePrinter, RoundTrip) {
  OrePoly L = parse_operator("D^2 - (x*t)^2");
  EXPECT_EQ(parse_operator(to_string(L)), L);
}

}  // namespace
}  // namespace ppv
