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

#include "ppvgal/galois.hpp"
#include "test_support.hpp"

namespace ppv {
namespace {

using test::parse_matrix;

RF rf(const char* s) { return parse_rf(s); }

TEST(Rank1Pv, Examples) {
  GroupDesc g = rank1_pv_group(rf("x*t"), 5);
  EXPECT_EQ(g.term, CatalogTerm::Gm);
  EXPECT_NE(g.provenance.front().find("certified up to order 5"), std::string::npos);
  GroupDesc m = rank1_pv_group(rf("1/(2*x)"), 5);
  EXPECT_EQ(m.term, CatalogTerm::Mu);
  EXPECT_EQ(m.parameter, 2);
  EXPECT_EQ(m.to_string(), "mu_2");
  EXPECT_EQ(rank1_pv_group(RF(), 3).term, CatalogTerm::Trivial);
  EXPECT_EQ(rank1_pv_group(rf("1/x + 1/(x-t)"), 3).term, CatalogTerm::Trivial);
}

TEST(Rank1Ppv, KnownConstraints) {
  GroupDesc a = rank1_ppv_group(RF(1), 4);
  EXPECT_EQ(a.to_string(), "Gm(constants)");
  EXPECT_EQ(a.ppv_operator.size(), 1u);

  GroupDesc b = rank1_ppv_group(rf("t/x"), 4);
  ASSERT_EQ(b.differential_constraints.size(), 1u);
  EXPECT_EQ(b.differential_constraints[0], "(dt^2 g)*g - (dt g)^2 = 0");
  EXPECT_EQ(b.ppv_operator, (std::vector<ParamRat>{ParamRat(), ParamRat(1)}));

  GroupDesc c = rank1_ppv_group(rf("-x*t"), 4);
  EXPECT_EQ(c.to_string(), "Gm(constants)");
}

TEST(Rank1Ppv, HigherOrderAndCap) {
  // d/dt (t^2/x) = 2t/x is not a derivative; dt^2 gives 2/x, still not; the
  // combination dt - (1/t) kills it.
  GroupDesc g = rank1_ppv_group(rf("t^2/x"), 4);
  ASSERT_EQ(g.ppv_operator.size(), 2u);
  EXPECT_EQ(g.ppv_operator[0], -ParamRat(1) / param_t());
  // log-type dependence: a = 1/(x - t) has da/dt = 1/(x-t)^2 = d/dx(-1/(x-t)).
  EXPECT_EQ(rank1_ppv_group(rf("1/(x-t)"), 2).term, CatalogTerm::Trivial);
  // With order 0 allowed only, t/x has no relation.
  GroupDesc capped = rank1_ppv_group(rf("t/x"), 0);
  EXPECT_TRUE(capped.differential_constraints.empty());
  EXPECT_NE(capped.provenance.back().find("no relation of order <= 0"), std::string::npos);
}

TEST(Integrability, SecondOrderExamples) {
  Matrix<RF> A = parse_matrix(2, {"0", "1", "(x*t)^2", "0"});
  IntegrabilityResult r = integrability_basis(A);
  ASSERT_EQ(r.E.basis.size(), 1u);
  const Matrix<RF>& B = r.E.witnesses[0];
  EXPECT_EQ(derive(B, DerivationTag::Dx) - derive(A, DerivationTag::Dt), A * B - B * A);
  EXPECT_FALSE(determinant(B).is_zero());
  // A hand-derived witness lies in the affine family.
  Matrix<RF> Bp = parse_matrix(2, {"0", "x/(2*t)", "t*x^3/2", "1/(2*t)"});
  EXPECT_TRUE(integrability_residual_zero(A, Bp, ParamRat(1)));
  EXPECT_EQ(is_integrable(A, {DerivationTag::Dt}), Verdict::Yes);

  Matrix<RF> E = parse_matrix(2, {"0", "1", "t*(t+1)/x^2", "0"});
  IntegrabilityResult re = integrability_basis(E);
  EXPECT_TRUE(re.E.basis.empty());
  EXPECT_FALSE(re.possibly_incomplete);
  EXPECT_EQ(is_integrable(E, {DerivationTag::Dt}), Verdict::No);
}

TEST(Integrability, ParameterFree) {
  Matrix<RF> A = parse_matrix(2, {"x", "1/x", "0", "1"});
  IntegrabilityResult r = integrability_basis(A);
  ASSERT_EQ(r.E.basis.size(), 1u);
  EXPECT_TRUE(integrability_residual_zero(A, r.E.witnesses[0], ParamRat(1)));
  EXPECT_EQ(is_integrable(A, {DerivationTag::Dt}), Verdict::Yes);
  EXPECT_THROW(is_integrable(A, {}), std::invalid_argument);
}

TEST(Integrability, GaugeInvariantDimensions) {
  Matrix<RF> A = parse_matrix(2, {"0", "1", "(x*t)^2", "0"});
  Matrix<RF> E = parse_matrix(2, {"0", "1", "t*(t+1)/x^2", "0"});
  for (const char* cs : {"x", "1/(x+t)", "t*x^2 - 1"}) {
    Matrix<RF> C = Matrix<RF>::identity(2);
    C(0, 1) = rf(cs);
    for (const auto& M : {A, E}) {
      IntegrabilityResult r0 = integrability_basis(M), r1 = integrability_basis(gauge_matrix(M, C));
      EXPECT_EQ(r0.W.size(), r1.W.size()) << cs;
      EXPECT_EQ(r0.E.basis.size(), r1.E.basis.size()) << cs;
    }
  }
}

TEST(Membership, Examples) {
  DiffModule M(parse_matrix(2, {"1", "t/x + 1/(x+1)", "0", "1"}));
  DiffModule N = total_prolong(DiffModule(Matrix<RF>::identity(2)), 1);
  MembershipResult r = tensor_membership(M, N, 2);
  EXPECT_EQ(r.verdict, Verdict::No);
  EXPECT_EQ(tensor_membership(M, M, 2).verdict, Verdict::Yes);

  DiffModule triv(Matrix<RF>(1, 1));
  DiffModule sl2(parse_matrix(2, {"0", "1", "(x*t)^2", "0"}));
  EXPECT_EQ(tensor_membership(sl2, triv, 2).verdict, Verdict::No);
  EXPECT_EQ(tensor_membership(triv, sl2, 2).verdict, Verdict::Yes);
}

TEST(Membership, Characters) {
  DiffModule a(parse_matrix(1, {"1/(2*x) + t"}));
  DiffModule b(parse_matrix(1, {"3*t - 1/(2*x)"}));
  EXPECT_EQ(tensor_membership(b, a, 3).verdict, Verdict::Yes);
  DiffModule c(parse_matrix(1, {"x"}));
  EXPECT_EQ(tensor_membership(c, a, 2).verdict, Verdict::Unknown);
}

TEST(Membership, MonotoneUnderDirectSum) {
  DiffModule a(parse_matrix(1, {"t"}));
  DiffModule b(parse_matrix(1, {"2*t + 1/x"}));
  DiffModule extra(parse_matrix(2, {"1", "1/x", "0", "1"}));
  ASSERT_EQ(tensor_membership(b, a, 3).verdict, Verdict::Yes);
  EXPECT_EQ(tensor_membership(b, dsum(a, extra), 3).verdict, Verdict::Yes);
  DiffModule sl2(parse_matrix(2, {"0", "1", "(x*t)^2", "0"}));
  ASSERT_EQ(tensor_membership(sl2, sl2, 1).verdict, Verdict::Yes);
  EXPECT_EQ(tensor_membership(sl2, dsum(sl2, a), 1).verdict, Verdict::Yes);
}

TEST(OrdTorus, Examples) {
  OrdResult c = ord_torus(DiffModule(parse_matrix(2, {"2", "0", "0", "-1/3"})), 3);
  EXPECT_EQ(c.status, OrdResult::Status::Found);
  EXPECT_EQ(c.t, 0);
  OrdResult e = ord_torus(DiffModule(Matrix<RF>::identity(2)), 3);
  EXPECT_EQ(e.status, OrdResult::Status::Found);
  EXPECT_EQ(e.t, 0);
  OrdResult p = ord_torus(DiffModule(parse_matrix(1, {"t/x"})), 3);
  EXPECT_NE(p.status, OrdResult::Status::Found);
  EXPECT_GE(p.t, 1);
}

}  // namespace
}  // namespace ppv
