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
#include <string>
#include <vector>

#include "ppvgal/diff_module.hpp"
#include "ppvgal/expr.hpp"

namespace ppv {

enum class CatalogTerm { Trivial, Mu, Gm, Ga, SL2, GL2, Torus, Product, QuotientByFinite };

/// A group from the closed catalog, possibly cut down by differential
/// equations in the parameter. `constants` means every coordinate has zero
/// t-derivative, written G(constants).
struct GroupDesc {
  CatalogTerm term = CatalogTerm::Trivial;
  int parameter = 0;  // k of mu_k, r of torus^r
  std::vector<GroupDesc> factors;
  std::vector<std::string> finite_kernel;
  std::vector<std::string> coordinates;
  std::vector<std::string> differential_constraints;
  std::vector<std::string> provenance;
  bool constants = false;
  /// Monic L0 in d/dt (lowest coefficient first) for rank-one groups.
  std::vector<ParamRat> ppv_operator;

  std::string algebraic_name() const {
    switch (term) {
      case CatalogTerm::Trivial: return "trivial";
      case CatalogTerm::Mu: return "mu_" + std::to_string(parameter);
      case CatalogTerm::Gm: return "Gm";
      case CatalogTerm::Ga: return "Ga";
      case CatalogTerm::SL2: return "SL2";
      case CatalogTerm::GL2: return "GL2";
      case CatalogTerm::Torus: return "torus^" + std::to_string(parameter);
      case CatalogTerm::Product:
      case CatalogTerm::QuotientByFinite: {
        std::string s;
        for (const auto& f : factors) s += (s.empty() ? "" : " x ") + f.to_string();
        if (term == CatalogTerm::Product) return s;
        std::string k;
        for (const auto& e : finite_kernel) k += (k.empty() ? "" : ",") + e;
        return "(" + s + ")/{" + k + "}";
      }
    }
    return "?";
  }

  std::string to_string() const {
    std::string base = algebraic_name();
    if (constants) return base + "(constants)";
    if (differential_constraints.empty()) return base;
    std::string s = "{g in " + base + " | ";
    for (std::size_t i = 0; i < differential_constraints.size(); ++i)
      s += (i ? ", " : "") + differential_constraints[i];
    return s + "}";
  }
};

/// Operator sum c_i dt^i printed highest order first.
inline std::string dt_operator_string(const std::vector<ParamRat>& c) {
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    std::string d = i == 0 ? "" : (i == 1 ? "dt" : "dt^" + std::to_string(i));
    std::string term = d.empty() ? (out.empty() ? to_string(c[i]) : "(" + to_string(c[i]) + ")")
                                 : (c[i] == ParamRat(1) ? d : "(" + to_string(c[i]) + ")*" + d);
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

/// PV group of dy/dx = a y: trivial, mu_n or Gm.
inline GroupDesc rank1_pv_group(const RF& a, int n_max) {
  if (n_max < 1) throw std::invalid_argument("rank1_pv_group: n_max must be positive");
  GroupDesc g;
  g.coordinates = {"g"};
  RF w;
  auto n = hyperexp_rank1(a, n_max, &w);
  if (n && *n == 1) {
    g.term = CatalogTerm::Trivial;
    g.provenance.push_back("rational solution y = " + to_string(w));
  } else if (n) {
    g.term = CatalogTerm::Mu;
    g.parameter = *n;
    g.provenance.push_back("y^" + std::to_string(*n) + " = " + to_string(w) + " is rational; no smaller power is");
  } else {
    g.term = CatalogTerm::Gm;
    g.provenance.push_back("Gm, certified up to order " + std::to_string(n_max) +
                           ": no rational solution of dy/dx = n a y for n <= " + std::to_string(n_max));
  }
  return g;
}

/// PPV group of dy/dx = a y via the minimal monic L0 in d/dt with
/// L0(d a/dt) in d/dx(Q(t)(x)).
inline GroupDesc rank1_ppv_group(const RF& a, int max_order, int n_max = 6) {
  if (max_order < 0) throw std::invalid_argument("rank1_ppv_group: negative order");
  GroupDesc g = rank1_pv_group(a, n_max);
  if (g.term != CatalogTerm::Gm) {
    g.provenance.push_back("finite PV group; the PPV group coincides with it");
    return g;
  }
  std::vector<RF> rhs;
  RF b = derive(a, DerivationTag::Dt);
  bool certified = true;
  for (int k = 0; k <= max_order; ++k) {
    rhs.push_back(b);
    b = derive(b, DerivationTag::Dt);
    SolutionBasis sb = rational_solutions(OrePoly::D(1), rhs);
    certified = certified && sb.certified_complete;
    const SolutionPair* hit = nullptr;
    for (const auto& e : sb.elements)
      if (!e.c[static_cast<std::size_t>(k)].is_zero()) {
        hit = &e;
        break;
      }
    if (!hit) continue;
    const ParamRat inv = ParamRat(1) / hit->c[static_cast<std::size_t>(k)];
    std::vector<ParamRat> L0;
    for (const auto& c : hit->c) L0.push_back(c * inv);
    // Certify the relation: dF/dx = L0(da/dt) with F = y / c_k.
    RF lhs = (RF(inv) * hit->y).derivative(), acc;
    for (std::size_t i = 0; i < L0.size(); ++i) acc += RF(L0[i]) * rhs[i];
    if (lhs != acc) throw std::logic_error("rank1_ppv_group: relation check failed");
    g.ppv_operator = L0;
    g.provenance.push_back("L0 = " + dt_operator_string(L0) + " with L0(da/dt) = d/dx(" + to_string(RF(inv) * hit->y) +
                           "); no relation of smaller order" + (certified ? "" : " (solver bounds not certified)"));
    bool pure_dt = true;
    for (int i = 0; i < k; ++i) pure_dt = pure_dt && L0[static_cast<std::size_t>(i)].is_zero();
    if (k == 0) {
      g.constants = true;
      g.differential_constraints.push_back("dt(g) = 0");
    } else if (k == 1 && pure_dt) {
      g.differential_constraints.push_back("(dt^2 g)*g - (dt g)^2 = 0");
    } else {
      g.differential_constraints.push_back("L0(dt(g)/g) = 0 with L0 = " + dt_operator_string(L0));
    }
    return g;
  }
  g.provenance.push_back("no relation of order <= " + std::to_string(max_order));
  return g;
}

/// Span of sum c_i d_i (one parameter: c in Q(t)) with invertible witnesses.
struct LieSubspace {
  std::vector<std::vector<ParamRat>> basis;
  std::vector<Matrix<RF>> witnesses;
  bool closed = true;
};

struct IntegrabilityResult {
  std::vector<std::pair<Matrix<RF>, ParamRat>> W;  // Q(t)-basis of W
  LieSubspace E;
  bool possibly_incomplete = false;
  std::string method;
};

inline bool integrability_residual_zero(const Matrix<RF>& A, const Matrix<RF>& Z, const ParamRat& c) {
  Matrix<RF> lhs = derive(Z, DerivationTag::Dx) + Z * A - A * Z;
  return lhs == RF(c) * derive(A, DerivationTag::Dt);
}

/// W = {(Z, c) : dZ/dx + [Z, A] = c dA/dt} and the subspace of c admitting
/// an invertible Z.
inline IntegrabilityResult integrability_basis(const Matrix<RF>& A) {
  if (!A.is_square()) throw std::invalid_argument("integrability_basis: A must be square");
  const std::size_t n = A.rows(), m = n * n;
  Matrix<RF> S(m, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        S(i * n + j, i * n + k) += A(k, j);
        S(i * n + j, k * n + j) -= A(i, k);
      }
  Matrix<RF> At = derive(A, DerivationTag::Dt);
  SystemSolutionBasis sb = param_system_solve(S, {At.data()});
  IntegrabilityResult res;
  res.possibly_incomplete = sb.possibly_incomplete;
  auto to_matrix = [n](const std::vector<RF>& z) { return Matrix<RF>(n, n, z); };
  for (const auto& e : sb.elements) {
    res.W.emplace_back(to_matrix(e.Z), e.c[0]);
    if (!integrability_residual_zero(A, res.W.back().first, e.c[0]))
      throw std::logic_error("integrability_basis: residual check failed");
  }

  // Affine family with c = 1: Zp + sum lambda_h H_h.
  std::optional<std::size_t> piv;
  for (std::size_t k = 0; k < res.W.size(); ++k)
    if (!res.W[k].second.is_zero()) {
      piv = k;
      break;
    }
  res.method = "no element with c != 0";
  if (!piv) return res;
  const ParamRat inv = ParamRat(1) / res.W[*piv].second;
  Matrix<RF> Zp = RF(inv) * res.W[*piv].first;
  std::vector<Matrix<RF>> H;
  for (std::size_t k = 0; k < res.W.size(); ++k) {
    if (k == *piv) continue;
    H.push_back(res.W[k].first - RF(res.W[k].second) * Zp);
  }
  // det(Zp + sum lambda H) has degree <= n in every lambda, so a grid with
  // n + 1 values per coordinate detects a nonzero polynomial.
  const std::size_t k = H.size();
  const bool exact = k <= 6;
  res.method = exact ? "exact-grid" : "probabilistic-grid";
  const std::size_t per = exact ? n + 1 : 2;
  std::vector<std::size_t> lam(k, 0);
  std::size_t budget = exact ? 0 : 4096;
  for (std::size_t count = 0;; ++count) {
    if (!exact && count >= budget) break;
    Matrix<RF> Z = Zp;
    for (std::size_t h = 0; h < k; ++h)
      if (lam[h]) Z = Z + RF(static_cast<long>(lam[h])) * H[h];
    if (!determinant(Z).is_zero()) {
      if (!integrability_residual_zero(A, Z, ParamRat(1))) throw std::logic_error("integrability_basis: witness check failed");
      res.E.basis.push_back({ParamRat(1)});
      res.E.witnesses.push_back(Z);
      return res;
    }
    std::size_t h = 0;
    while (h < k && ++lam[h] == per) lam[h++] = 0;
    if (h == k) break;
  }
  return res;
}

inline Verdict is_integrable(const Matrix<RF>& A, const std::vector<DerivationTag>& sigma) {
  if (sigma.empty()) throw std::invalid_argument("is_integrable: empty parameter set");
  for (auto d : sigma)
    if (d == DerivationTag::Dx) throw std::invalid_argument("is_integrable: x is not a parameter");
  IntegrabilityResult r = integrability_basis(A);
  if (!r.E.basis.empty()) return Verdict::Yes;
  if (r.possibly_incomplete || r.method == "probabilistic-grid") return Verdict::Unknown;
  return Verdict::No;
}

struct MembershipResult {
  Verdict verdict = Verdict::Unknown;
  std::string rule;
};

namespace detail {

/// Does M.A equal the matrix of a subquotient spanned by a contiguous range
/// of N's basis?
inline bool is_interval_subquotient(const Matrix<RF>& M, const Matrix<RF>& N) {
  const std::size_t n = N.rows(), d = M.rows();
  if (d > n) return false;
  for (std::size_t a = 0; a + d <= n; ++a) {
    const std::size_t b = a + d;
    // Both span(e_0..e_{a-1}) and span(e_0..e_{b-1}) must be invariant.
    bool ok = N.block(a, a, d, d) == M;
    for (std::size_t i = 0; ok && i < n; ++i)
      for (std::size_t j = 0; ok && j < n; ++j)
        if (((i >= a && j < a) || (i >= b && j < b)) && !N(i, j).is_zero()) ok = false;
    if (ok) return true;
  }
  return false;
}

/// Connected components of the symmetric zero pattern (direct summands).
inline std::vector<std::vector<std::size_t>> summands(const Matrix<RF>& A) {
  const std::size_t n = A.rows();
  std::vector<std::size_t> comp(n, n);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    std::vector<std::size_t> stack{s}, members;
    comp[s] = out.size();
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::size_t w = 0; w < n; ++w)
        if (comp[w] == n && (!A(v, w).is_zero() || !A(w, v).is_zero())) {
          comp[w] = out.size();
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

inline Matrix<RF> principal(const Matrix<RF>& A, const std::vector<std::size_t>& idx) {
  Matrix<RF> B(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) B(i, j) = A(idx[i], idx[j]);
  return B;
}

struct ModuleShape {
  Flag flag;
  Verdict completely_reducible = Verdict::Unknown;
  std::vector<RF> characters;  // diagonal entries when every block has rank one
  bool abelian_semisimple = false;
  bool has_certified_irreducible = false;  // a certified block of dim >= 2
};

inline ModuleShape shape(const DiffModule& M) {
  ModuleShape s;
  s.flag = factor_flag(M);
  s.completely_reducible = is_completely_reducible(M, s.flag).verdict;
  bool rank_one = true;
  for (const auto& b : s.flag.blocks) {
    if (b.dim != 1) rank_one = false;
    if (b.dim >= 2 && b.certified) s.has_certified_irreducible = true;
  }
  if (rank_one)
    for (std::size_t i = 0; i < M.dim(); ++i) s.characters.push_back(s.flag.reduced(i, i));
  s.abelian_semisimple = rank_one && s.completely_reducible == Verdict::Yes;
  return s;
}

/// Is b = sum n_i a_i + f'/f for integers |n_i| <= budget and rational f?
inline bool character_in_lattice(const RF& b, const std::vector<RF>& a, int budget) {
  const std::size_t r = a.size();
  for (int norm = 0; norm <= budget * static_cast<int>(std::max<std::size_t>(r, 1)); ++norm) {
    std::vector<int> n(r, -budget);
    while (true) {
      int l1 = 0;
      for (int v : n) l1 += std::abs(v);
      if (l1 == norm || (r == 0 && norm == 0)) {
        RF e = b;
        for (std::size_t i = 0; i < r; ++i)
          if (n[i]) e -= RF(n[i]) * a[i];
        if (!rational_solutions(OrePoly::D(1) - OrePoly(e), {}).only_zero()) return true;
      }
      std::size_t i = 0;
      while (i < r && ++n[i] > budget) n[i++] = -budget;
      if (i == r) break;
    }
  }
  return false;
}

inline MembershipResult membership_core(const DiffModule& M, const ModuleShape& ms, const DiffModule& N,
                                        const ModuleShape& ns, int budget) {
  if (M.A.is_zero()) return {Verdict::Yes, "trivial module"};
  if (M == N || is_interval_subquotient(M.A, N.A)) return {Verdict::Yes, "structural: subquotient of N"};
  if (ms.completely_reducible == Verdict::Yes) {
    // M is isomorphic to the direct sum of its flag blocks.
    bool all = true;
    std::size_t off = 0;
    for (const auto& b : ms.flag.blocks) {
      Matrix<RF> B = ms.flag.reduced.block(off, off, b.dim, b.dim);
      off += b.dim;
      if (!(B == N.A || is_interval_subquotient(B, N.A))) {
        all = false;
        break;
      }
    }
    if (all) return {Verdict::Yes, "structural: M splits into subquotients of N"};
  }
  if (ns.completely_reducible == Verdict::Yes && ms.completely_reducible == Verdict::No)
    return {Verdict::No, "complete reducibility: N is completely reducible, M is not"};
  if (ns.abelian_semisimple && ms.has_certified_irreducible)
    return {Verdict::No, "catalog: N has a diagonalizable group, M has an irreducible block of dimension >= 2"};
  if (ns.abelian_semisimple && ms.abelian_semisimple) {
    std::vector<RF> pool;
    for (const auto& a : ns.characters)
      if (std::find(pool.begin(), pool.end(), a) == pool.end()) pool.push_back(a);
    for (const auto& b : ms.characters)
      if (!character_in_lattice(b, pool, budget)) return {Verdict::Unknown, "character search exhausted the budget"};
    return {Verdict::Yes, "characters: every character of M is an integer combination of those of N"};
  }
  return {Verdict::Unknown, "outside catalog reach"};
}

}  // namespace detail

/// Is M in the tensor category generated by N?
inline MembershipResult tensor_membership(const DiffModule& M, const DiffModule& N, int budget) {
  if (budget < 0) throw std::invalid_argument("tensor_membership: negative budget");
  detail::ModuleShape ms = detail::shape(M), ns = detail::shape(N);
  MembershipResult r = detail::membership_core(M, ms, N, ns, budget);
  if (r.verdict != Verdict::Unknown) return r;
  // Membership in the category of a direct summand implies membership.
  auto parts = detail::summands(N.A);
  if (parts.size() > 1)
    for (const auto& p : parts) {
      DiffModule Np(detail::principal(N.A, p), N.param_tags);
      MembershipResult rp = detail::membership_core(M, ms, Np, detail::shape(Np), budget);
      if (rp.verdict == Verdict::Yes) return {Verdict::Yes, rp.rule + " (direct summand of N)"};
    }
  return r;
}

struct OrdResult {
  enum class Status { Found, ExceedsBound, Undetermined } status = Status::Undetermined;
  int t = 0;  // the order found, or where the loop stopped
  std::vector<std::string> log;
};

/// Smallest t <= t_max with P^{t+1}(N) in the tensor category of P^t(N).
inline OrdResult ord_torus(const DiffModule& N, int t_max, int budget = 3) {
  if (t_max < 0) throw std::invalid_argument("ord_torus: negative bound");
  OrdResult res;
  DiffModule Pt = N;
  for (int t = 0; t <= t_max; ++t) {
    DiffModule Pn = total_prolong(Pt, 1);
    MembershipResult m = tensor_membership(Pn, Pt, budget);
    res.log.push_back("t = " + std::to_string(t) + ": " + to_string(m.verdict) + " (" + m.rule + ")");
    if (m.verdict == Verdict::Yes) {
      res.status = OrdResult::Status::Found;
      res.t = t;
      return res;
    }
    if (m.verdict == Verdict::Unknown) {
      res.status = OrdResult::Status::Undetermined;
      res.t = t;
      return res;
    }
    Pt = Pn;
  }
  res.status = OrdResult::Status::ExceedsBound;
  res.t = t_max;
  return res;
}

}  // namespace ppv
