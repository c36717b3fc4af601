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

#include "ppvgal/diff_module.hpp"
#include "ppvgal/expr.hpp"
#include "test_support.hpp"

namespace ppv {
namespace {

using test::parse_matrix;

RF rf(const char* s) { return parse_rf(s); }

const char* kTriangular[] = {"1", "t/x + 1/(x+1)", "0", "1"};

DiffModule triangular() { return DiffModule(parse_matrix(2, {kTriangular[0], kTriangular[1], kTriangular[2], kTriangular[3]})); }

TEST(Prolong, FirstProlongationOfRankOne) {
  DiffModule M(parse_matrix(1, {"-x*t"}));
  EXPECT_EQ(prolong(M, DerivationTag::Dt).A, parse_matrix(2, {"-x*t", "-x", "0", "-x*t"}));
  DiffModule N(parse_matrix(1, {"t/x"}));
  EXPECT_EQ(prolong(N, DerivationTag::Dt).A, parse_matrix(2, {"t/x", "1/x", "0", "t/x"}));
}

TEST(Prolong, ParameterFreeAndErrors) {
  DiffModule M = triangular();
  M.A(0, 1) = rf("1/(x+1)");
  DiffModule P = prolong(M, DerivationTag::Dt);
  EXPECT_EQ(P.A, block_diag(M.A, M.A));
  EXPECT_THROW(prolong(M, DerivationTag::Dx), std::invalid_argument);
  EXPECT_THROW(total_prolong(M, -1), std::invalid_argument);
}

TEST(Prolong, TotalProlongation) {
  DiffModule M = triangular();
  EXPECT_EQ(total_prolong(M, 0), M);
  EXPECT_EQ(total_prolong(M, 1), prolong(M, DerivationTag::Dt));
  EXPECT_EQ(total_prolong(M, 2), prolong(prolong(M, DerivationTag::Dt), DerivationTag::Dt));
  EXPECT_EQ(total_prolong(M, 2).dim(), 8u);
}

TEST(Constructions, DualSumTensor) {
  DiffModule M(parse_matrix(2, {"0", "1", "(x*t)^2", "0"}));
  EXPECT_EQ(dual(M).A, parse_matrix(2, {"0", "-(x*t)^2", "-1", "0"}));
  EXPECT_EQ(dual(dual(M)), M);

  DiffModule I2(Matrix<RF>::identity(2));
  Matrix<RF> expect = Matrix<RF>::identity(6);
  expect(0, 1) = rf("t/x + 1/(x+1)");
  EXPECT_EQ(dsum(triangular(), total_prolong(I2, 1)).A, expect);

  DiffModule one(Matrix<RF>(1, 1));
  EXPECT_EQ(tensor(M, one).A, M.A);
  EXPECT_EQ(tensor(one, M).A, M.A);
  EXPECT_EQ(tensor(M, triangular()).dim(), 4u);
}

TEST(Gauge, Examples) {
  DiffModule A1(parse_matrix(2, {"-x*t", "-x", "0", "-x*t"}));
  Matrix<RF> C = parse_matrix(2, {"1", "1", "-2/x^2", "-2/(x^2+t)"});
  EXPECT_EQ(gauge(A1, C).A, parse_matrix(2, {"(2-x^2*t)/x", "0", "0", "x*(2-x^2*t-t^2)/(x^2+t)"}));
  EXPECT_EQ(gauge(A1, Matrix<RF>::identity(2)), A1);

  Matrix<RF> Ag = parse_matrix(2, {"1", "t/(x^2+1)", "0", "1"});
  RF g = rf("x^3/t + 1/(x-t)");
  Matrix<RF> Cg = parse_matrix(2, {"1", "0", "0", "1"});
  Cg(0, 1) = g;
  Matrix<RF> expect = Ag;
  expect(0, 1) = Ag(0, 1) - g.derivative();
  EXPECT_EQ(gauge_matrix(Ag, Cg), expect);

  EXPECT_THROW(gauge(A1, parse_matrix(2, {"1", "x", "1/x", "1"})), std::invalid_argument);
}

TEST(Gauge, CompositionAndProlongationCompatibility) {
  std::mt19937 rng(101);
  for (int k = 0; k < 8; ++k) {
    DiffModule M(test::random_rf_matrix(rng, 2, 1));
    Matrix<RF> C1 = test::random_rf_matrix(rng, 2, 1), C2 = test::random_rf_matrix(rng, 2, 1);
    C1(0, 0) += RF(1);
    C1(1, 1) += RF(1);
    C2(0, 0) += RF(1);
    C2(1, 1) += RF(1);
    if (determinant(C1).is_zero() || determinant(C2).is_zero()) continue;
    EXPECT_EQ(gauge(gauge(M, C1), C2), gauge(M, C1 * C2));
    EXPECT_EQ(prolong(gauge(M, C1), DerivationTag::Dt),
              gauge(prolong(M, DerivationTag::Dt), prolong_matrix(C1, DerivationTag::Dt)));
  }
}

TEST(Kovacic, ReductionSubstitution) {
  auto r1 = sl2_reduction_substitution(rf("2*x*t"), rf("t"));
  EXPECT_EQ(r1.r, rf("(x*t)^2"));
  EXPECT_EQ(r1.a, rf("x*t"));
  auto r2 = sl2_reduction_substitution(RF(), rf("x"));
  EXPECT_EQ(r2.r, rf("-x"));
  EXPECT_TRUE(r2.a.is_zero());
  auto r3 = sl2_reduction_substitution(rf("-2*t/x"), RF());
  EXPECT_EQ(r3.r, rf("t*(t+1)/x^2"));
  EXPECT_EQ(r3.a, rf("-t/x"));
}

TEST(Kovacic, Sieve) {
  auto k1 = kovacic_sl2_test(rf("(x*t)^2"));
  EXPECT_EQ(k1.verdict, KovacicVerdict::SL2);
  EXPECT_TRUE(k1.case1.decided);

  auto k2 = kovacic_sl2_test(RF());
  EXPECT_EQ(k2.verdict, KovacicVerdict::Case1Candidate);

  auto k3 = kovacic_sl2_test(rf("t*(t+1)/x^2"));
  EXPECT_EQ(k3.verdict, KovacicVerdict::Case1Candidate);
  ASSERT_TRUE(k3.case1.solution.has_value());
  RF u = *k3.case1.solution;
  EXPECT_EQ(u.derivative() + u * u, rf("t*(t+1)/x^2"));
}

TEST(Kovacic, RiccatiSearchFindsConstructedSolutions) {
  // r = u' + u^2 for known rational u, including higher order poles.
  for (const char* us : {"x", "1/x + t", "t/x^2 + 1/(x-1)", "x^2 - 1/x", "(2*x)/(x^2+t)", "3/(x-t) + x*t"}) {
    RF u = rf(us), r = u.derivative() + u * u;
    auto rs = riccati_rational(r);
    ASSERT_TRUE(rs.solution.has_value()) << us;
    EXPECT_EQ(rs.solution->derivative() + *rs.solution * *rs.solution, r) << us;
  }
}

TEST(Kovacic, AiryLikeHasNoRationalRiccati) {
  auto rs = riccati_rational(rf("x*t"));
  EXPECT_FALSE(rs.solution.has_value());
  EXPECT_TRUE(rs.decided);
}

TEST(FactorFlag, TriangularExample) {
  Flag f = factor_flag(triangular());
  EXPECT_EQ(f.block_dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(f.gauge, Matrix<RF>::identity(2));
}

TEST(FactorFlag, IrreducibleSecondOrder) {
  Flag f = factor_flag(DiffModule(parse_matrix(2, {"0", "1", "(x*t)^2", "0"})));
  EXPECT_EQ(f.block_dims(), (std::vector<std::size_t>{2}));
  EXPECT_TRUE(f.blocks[0].certified);
}

TEST(FactorFlag, DiagonalAndPermuted) {
  Flag f = factor_flag(DiffModule(parse_matrix(3, {"x", "0", "0", "0", "t", "0", "0", "0", "1/x"})));
  EXPECT_EQ(f.block_dims(), (std::vector<std::size_t>{1, 1, 1}));
  // Lower triangular input needs a permutation.
  DiffModule L(parse_matrix(2, {"1", "0", "x", "t"}));
  Flag g = factor_flag(L);
  EXPECT_EQ(g.block_dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(is_block_upper_triangular(g.reduced, g.block_dims()));
}

TEST(FactorFlag, SplitsReducibleCompanion) {
  // y'' - (2t/x) y' = 0 has the solution 1, so the system is reducible.
  DiffModule M(companion_matrix(rf("-2*t/x"), RF()));
  Flag f = factor_flag(M);
  EXPECT_EQ(f.block_dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(gauge(M, f.gauge).A, f.reduced);
  DiffModule E(parse_matrix(2, {"0", "1", "t*(t+1)/x^2", "0"}));
  EXPECT_EQ(factor_flag(E).block_dims(), (std::vector<std::size_t>{1, 1}));
}

TEST(FactorFlag, KovacicConsistency) {
  // Companion systems whose reduced equation is certified SL2 have no line.
  for (const char* bs : {"2*x*t", "0", "x", "t/x"}) {
    for (const char* cs : {"t", "x^2", "1"}) {
      RF b = rf(bs), c = rf(cs);
      auto red = sl2_reduction_substitution(b, c);
      auto kv = kovacic_sl2_test(red.r);
      Flag f = factor_flag(DiffModule(companion_matrix(b, c)));
      if (kv.verdict == KovacicVerdict::SL2) {
        EXPECT_EQ(f.block_dims().size(), 1u) << bs << " " << cs;
      }
      if (kv.case1.solution) {
        EXPECT_EQ(f.block_dims().size(), 2u) << bs << " " << cs;
      }
    }
  }
}

TEST(DiagPart, Examples) {
  DiffModule M = triangular();
  Flag f = factor_flag(M);
  DiagPart d = diag_part(M, f);
  EXPECT_EQ(d.module.A, Matrix<RF>::identity(2));
  Flag f2 = factor_flag(d.module);
  EXPECT_EQ(diag_part(d.module, f2).module, d.module);

  DiffModule T(parse_matrix(3, {"0", "1", "x", "t", "0", "1/x", "0", "0", "x"}));
  Flag ft{Matrix<RF>::identity(3), T.A, {FlagBlock{2, true, ""}, FlagBlock{1, true, ""}}};
  EXPECT_EQ(diag_part(T, ft).module.A, parse_matrix(3, {"0", "1", "0", "t", "0", "0", "0", "0", "x"}));
}

TEST(CompleteReducibility, Examples) {
  DiffModule M = triangular();
  auto r = is_completely_reducible(M, factor_flag(M));
  EXPECT_EQ(r.verdict, Verdict::No);
  EXPECT_EQ(r.failing_block, std::optional<std::size_t>(0));

  DiffModule A1(parse_matrix(2, {"-x*t", "-x", "0", "-x*t"}));
  auto s = is_completely_reducible(A1, factor_flag(A1));
  ASSERT_EQ(s.verdict, Verdict::Yes);
  EXPECT_EQ(*s.witness, parse_matrix(2, {"1", "-x^2/2", "0", "1"}));
  Matrix<RF> D = gauge(A1, *s.witness).A;
  EXPECT_TRUE(D(0, 1).is_zero() && D(1, 0).is_zero());

  DiffModule diag(parse_matrix(2, {"x", "0", "0", "t/x"}));
  EXPECT_EQ(is_completely_reducible(diag, factor_flag(diag)).verdict, Verdict::Yes);
}

TEST(CompleteReducibility, ProlongationDoesNotSplit) {
  DiffModule N(parse_matrix(1, {"t/x"}));
  DiffModule P = prolong(N, DerivationTag::Dt);
  EXPECT_EQ(is_completely_reducible(P, factor_flag(P)).verdict, Verdict::No);
}

TEST(ExactSequence, InclusionAndProjectionIntertwine) {
  std::mt19937 rng(7);
  for (int k = 0; k < 10; ++k) {
    Matrix<RF> A = test::random_rf_matrix(rng, 2, 2);
    Matrix<RF> P = prolong(DiffModule(A), DerivationTag::Dt).A;
    Matrix<RF> inc(4, 2), proj(2, 4);
    for (std::size_t i = 0; i < 2; ++i) {
      inc(i, i) = RF(1);
      proj(i, i + 2) = RF(1);
    }
    // T' = B T - T A for a morphism from (A) to (B).
    EXPECT_TRUE((P * inc - inc * A).is_zero());
    EXPECT_TRUE((A * proj - proj * P).is_zero());
  }
}

}  // namespace
}  // namespace ppv
