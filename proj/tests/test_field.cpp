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
#include "ppvgal/field.hpp"
#include "test_support.hpp"

namespace ppv {
namespace {

TEST(Normalize, CancelsCommonFactor) {
  XPoly x = XPoly::var();
  RF f = RF::make(x * x - XPoly(1), x - XPoly(1));
  EXPECT_EQ(f, parse_rf("x+1"));
  EXPECT_TRUE(f.is_poly());
}

TEST(Normalize, ParameterCancels) {
  XPoly x = XPoly::var();
  XPoly t(param_t());
  EXPECT_EQ(RF::make(t * x, t), rf_x());
}

TEST(Normalize, ZeroHasUnitDenominator) {
  RF f = RF::make(XPoly(), pow(XPoly::var(), 5));
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(f.den(), XPoly(1));
}

TEST(Normalize, ZeroDenominatorThrows) {
  EXPECT_THROW(RF::make(XPoly(1), XPoly()), division_by_zero);
  EXPECT_THROW(parse_rf("1/(x-x)"), parse_error);
}

TEST(Normalize, ScaledPairsAgree) {
  RF a = RF::make(parse_rf("x^2+t").num(), parse_rf("x-t").num());
  XPoly c = parse_rf("3*t*x^2 + x - 1/t").num();
  RF b = RF::make(parse_rf("x^2+t").num() * c, parse_rf("x-t").num() * c);
  EXPECT_EQ(a, b);
}

TEST(Derive, QuotientRuleInX) {
  RF f = parse_rf("t/x + 1/(x+1)");
  EXPECT_EQ(derive(f, DerivationTag::Dx), parse_rf("-t/x^2 - 1/(x+1)^2"));
}

TEST(Derive, ParameterDerivation) {
  EXPECT_EQ(derive(parse_rf("t/x + 1/(x+1)"), DerivationTag::Dt), parse_rf("1/x"));
  EXPECT_EQ(derive(parse_rf("-x*t"), DerivationTag::Dt), parse_rf("-x"));
}

TEST(Printer, CanonicalForms) {
  EXPECT_EQ(to_string(parse_rf("-x*t")), "-x*t");
  EXPECT_EQ(to_string(parse_rf("t/x + 1/(x+1)")), "(x*t + x + t)/(x^2 + x)");
  EXPECT_EQ(to_string(parse_rf("x/(2*t)")), "1/2*x/t");
  EXPECT_EQ(to_string(parse_rf("0")), "0");
  EXPECT_EQ(to_string(parse_rf("1/x^2")), "1/x^2");
}

TEST(Printer, RoundTrip) {
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    RF f = test::random_rf(rng, 3);
    EXPECT_EQ(parse_rf(to_string(f)), f) << to_string(f);
  }
}

TEST(Parser, RejectsMalformedInput) {
  EXPECT_THROW(parse_rf("x +"), parse_error);
  EXPECT_THROW(parse_rf("y"), parse_error);
  EXPECT_THROW(parse_rf("x^(1/2)"), parse_error);
  EXPECT_THROW(parse_rf("D"), parse_error);
  EXPECT_THROW(parse_rf("(x"), parse_error);
}

TEST(FieldProperties, Axioms) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 60; ++i) {
    RF a = test::random_rf(rng, 2), b = test::random_rf(rng, 2), c = test::random_rf(rng, 2);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), RF(1));
    }
  }
}

TEST(FieldProperties, LeibnizAndCommutation) {
  std::mt19937 rng(77);
  for (int i = 0; i < 60; ++i) {
    RF f = test::random_rf(rng, 2), g = test::random_rf(rng, 2);
    for (auto d : {DerivationTag::Dx, DerivationTag::Dt})
      EXPECT_EQ(derive(f * g, d), derive(f, d) * g + f * derive(g, d));
    EXPECT_EQ(derive(derive(f, DerivationTag::Dx), DerivationTag::Dt),
              derive(derive(f, DerivationTag::Dt), DerivationTag::Dx));
  }
}

TEST(PolyAlgorithms, SquarefreeAndResultant) {
  TPoly t = TPoly::var();
  TPoly p = pow(t - TPoly(1), 3) * (t + TPoly(2));
  auto sf = squarefree_decomposition(p);
  ASSERT_EQ(sf.size(), 2u);
  EXPECT_EQ(sf[0].first, t + TPoly(2));
  EXPECT_EQ(sf[1].second, 3);
  EXPECT_EQ(resultant(t - TPoly(3), t * t + TPoly(1)), Rat(10));
  auto base = coprime_base<Rat>({t * (t - TPoly(1)), (t - TPoly(1)) * (t + TPoly(1))});
  EXPECT_EQ(base.size(), 3u);
}

}  // namespace
}  // namespace ppv
