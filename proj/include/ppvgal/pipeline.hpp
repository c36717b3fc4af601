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
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ppvgal/diff_module.hpp"
#include "ppvgal/expr.hpp"
#include "ppvgal/galois.hpp"
#include "ppvgal/kovacic.hpp"

namespace ppv {

struct PipelineOptions {
  int max_order = 4;  // caps rank1_ppv_group and ord_torus
  int budget = 3;     // caps tensor_membership
};

/// A solution Z of dZ/dx + [Z, A] = dA/dt with det Z != 0.
struct IntegrabilityWitness {
  Matrix<RF> A;
  Matrix<RF> Z;
};

struct Report {
  Verdict reductive = Verdict::Unknown;
  std::optional<GroupDesc> group;  // G/Ru(G), or G itself when reductive
  int bound_s = -1;                // prolongation order used for membership
  std::optional<Flag> flag;
  std::optional<DiffModule> m_diag;
  std::optional<Matrix<RF>> splitting_gauge;  // gauges M onto M_diag
  std::optional<std::string> membership_rule;
  std::vector<IntegrabilityWitness> integrability;
  std::vector<std::string> incomplete;
  std::string blocking_step;  // set whenever a verdict is unknown
  std::vector<std::string> provenance;
};

namespace detail {

inline std::string dims_string(const std::vector<std::size_t>& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "]";
}

inline void record_flag(Report& rep, const DiffModule& M) {
  rep.flag = factor_flag(M);
  rep.m_diag = diag_part(M, *rep.flag).module;
  std::string m = "factor_flag: blocks " + dims_string(rep.flag->block_dims());
  for (std::size_t i = 0; i < rep.flag->blocks.size(); ++i) {
    const auto& b = rep.flag->blocks[i];
    if (b.dim > 1) m += "; block " + std::to_string(i) + " " + (b.certified ? "certified irreducible" : "not certified") +
                        " (" + b.method + ")";
    if (!b.certified) rep.incomplete.push_back("block " + std::to_string(i) + " irreducibility not certified");
  }
  rep.provenance.push_back(m);
}

// Diagonal blocks of the reduced matrix in flag order.
inline std::vector<Matrix<RF>> diagonal_blocks(const Flag& f) {
  std::vector<Matrix<RF>> out;
  std::size_t off = 0;
  for (const auto& b : f.blocks) {
    out.push_back(f.reduced.block(off, off, b.dim, b.dim));
    off += b.dim;
  }
  return out;
}

}  // namespace detail

/// Group of the diagonal system diag(a_1, ..., a_n): a torus whose rank is
/// that of the characters modulo logarithmic derivatives, cut down by the
/// per-coordinate parameter relations of rank1_ppv_group.
inline GroupDesc torus_group(const std::vector<RF>& chars, const PipelineOptions& opt) {
  std::vector<RF> basis;
  std::vector<GroupDesc> rank1;
  std::vector<std::string> notes;
  bool finite_part = false;
  for (const auto& a : chars) {
    if (std::find(basis.begin(), basis.end(), a) != basis.end()) continue;
    GroupDesc pv = rank1_pv_group(a, 6);
    if (pv.term != CatalogTerm::Gm) {
      if (pv.term == CatalogTerm::Mu) finite_part = true;
      notes.push_back("character " + to_string(a) + ": " + pv.to_string());
      continue;
    }
    // m a = sum n_i b_i + f'/f with 0 < m <= budget: a adds no rank.
    int mult = 0;
    for (int m = 1; m <= std::max(opt.budget, 1) && !mult; ++m)
      if (detail::character_in_lattice(RF(m) * a, basis, opt.budget)) mult = m;
    if (mult) {
      notes.push_back("character " + to_string(a) + ": " + (mult == 1 ? "" : std::to_string(mult) + " times it is ") +
                      "an integer combination of earlier ones modulo f'/f");
      if (mult > 1) finite_part = true;
      continue;
    }
    basis.push_back(a);
    rank1.push_back(rank1_ppv_group(a, opt.max_order));
  }
  GroupDesc g;
  if (basis.empty()) {
    g.term = finite_part ? CatalogTerm::Mu : CatalogTerm::Trivial;
    if (finite_part) {
      // Order of the finite cyclic group generated by the mu_n factors.
      long n = 1;
      for (const auto& a : chars) {
        GroupDesc pv = rank1_pv_group(a, 6);
        if (pv.term == CatalogTerm::Mu) n = std::lcm(n, static_cast<long>(pv.parameter));
      }
      g.parameter = static_cast<int>(n);
      g.provenance.push_back("finite: generated by roots of unity of orders dividing " + std::to_string(n) +
                             " (the lcm bounds the order)");
    }
  } else if (basis.size() == 1) {
    g = rank1.front();
  } else {
    g.term = CatalogTerm::Torus;
    g.parameter = static_cast<int>(basis.size());
    bool all_constant = true;
    for (std::size_t i = 0; i < rank1.size(); ++i) {
      g.coordinates.push_back("g" + std::to_string(i + 1));
      all_constant = all_constant && rank1[i].constants;
      for (const auto& c : rank1[i].differential_constraints) {
        std::string s = c;
        for (std::size_t p = s.find('g'); p != std::string::npos; p = s.find('g', p + 2))
          s.replace(p, 1, "g" + std::to_string(i + 1));
        g.differential_constraints.push_back(s);
      }
      for (const auto& p : rank1[i].provenance) g.provenance.push_back("g" + std::to_string(i + 1) + ": " + p);
    }
    g.constants = all_constant;
    if (!all_constant) g.provenance.push_back("per-coordinate relations only; relations mixing coordinates not searched");
  }
  if (finite_part && !basis.empty()) g.provenance.push_back("a finite factor may be present (some character has a finite PV group)");
  for (const auto& n : notes) g.provenance.push_back(n);
  g.provenance.push_back("lattice search with |n_i| <= " + std::to_string(opt.budget));
  return g;
}

namespace detail {

struct BlockGroup {
  std::optional<GroupDesc> group;
  std::optional<IntegrabilityWitness> witness;
  std::string blocking;
  std::vector<std::string> log;
};

// PPV group of an irreducible 2x2 block via the reduction to y'' = r y and
// the determinant equation.
inline BlockGroup sl2_block_group(Matrix<RF> B, const PipelineOptions& opt) {
  BlockGroup out;
  if (B(0, 1).is_zero()) {
    if (B(1, 0).is_zero()) {
      out.blocking = "2x2 block is triangular";
      return out;
    }
    std::swap(B(0, 0), B(1, 1));
    std::swap(B(0, 1), B(1, 0));
  }
  auto [b, c] = cyclic_coefficients(B);
  Sl2Reduction red = sl2_reduction_substitution(b, c);
  out.log.push_back("cyclic vector: y'' + (" + to_string(b) + ") y' + (" + to_string(c) + ") y = 0; r = " +
                    to_string(red.r) + ", a = " + to_string(red.a));
  KovacicResult kv = kovacic_sl2_test(red.r);
  out.log.push_back(std::string("kovacic sieve: ") + to_string(kv.verdict) +
                    (kv.case1.note.empty() ? "" : " (" + kv.case1.note + ")"));
  if (kv.verdict != KovacicVerdict::SL2) {
    out.blocking = std::string("kovacic: ") + to_string(kv.verdict) + " is outside the catalog";
    return out;
  }
  const Matrix<RF> S = companion_matrix(RF(), -red.r);  // [[0,1],[r,0]]
  IntegrabilityResult ir = integrability_basis(S);
  GroupDesc g1;
  g1.term = CatalogTerm::SL2;
  g1.coordinates = {"z"};
  if (!ir.E.basis.empty()) {
    g1.constants = true;
    g1.provenance.push_back("integrable: dZ/dx + [Z, A] = dA/dt has an invertible solution (" + ir.method + ")");
    out.witness = IntegrabilityWitness{S, ir.E.witnesses.front()};
  } else if (!ir.possibly_incomplete && ir.method != "probabilistic-grid") {
    g1.provenance.push_back("not integrable: no invertible solution (" + ir.method + "); Zariski dense, so all of SL2");
  } else {
    out.blocking = "integrability search incomplete";
    return out;
  }
  GroupDesc g2 = rank1_ppv_group(-red.a, opt.max_order);
  out.log.push_back("determinant factor dy/dx = " + to_string(-red.a) + " y: " + g2.to_string());

  GroupDesc g;
  if (g1.constants && g2.constants && g2.term == CatalogTerm::Gm) {
    g.term = CatalogTerm::GL2;
    g.constants = true;
  } else if (g2.term == CatalogTerm::Trivial || (g2.term == CatalogTerm::Mu && g2.parameter % 2 == 1)) {
    g = g2.term == CatalogTerm::Trivial ? g1 : GroupDesc{};
    if (g2.term == CatalogTerm::Mu) {
      g.term = CatalogTerm::Product;
      g.factors = {g1, g2};
    }
  } else {
    g.term = CatalogTerm::QuotientByFinite;
    g.factors = {g1, g2};
    g.finite_kernel = {"(-I,-1)"};
  }
  g.coordinates = {"Y = z * y"};
  g.provenance.push_back("assembly: solutions are z * y with z'' = r z and y' = -a y; SL2 has no abelian quotient, so the "
                         "group is the image of the full product");
  for (const auto& p : g1.provenance) g.provenance.push_back("SL2 part: " + p);
  for (const auto& p : g2.provenance) g.provenance.push_back("determinant part: " + p);
  out.group = g;
  return out;
}

inline void quotient_group(Report& rep, const PipelineOptions& opt) {
  const auto blocks = diagonal_blocks(*rep.flag);
  bool all_one = true, one_two = blocks.size() == 1 && blocks.front().rows() == 2;
  for (const auto& b : blocks) all_one = all_one && b.rows() == 1;
  if (all_one) {
    std::vector<RF> chars;
    for (const auto& b : blocks) chars.push_back(b(0, 0));
    rep.group = torus_group(chars, opt);
    rep.provenance.push_back("quotient: rank-one blocks, torus analysis");
    return;
  }
  if (one_two) {
    if (!rep.flag->blocks.front().certified) {
      rep.blocking_step = "quotient: irreducibility of the 2x2 block is not certified";
      return;
    }
    BlockGroup bg = sl2_block_group(blocks.front(), opt);
    for (const auto& l : bg.log) rep.provenance.push_back(l);
    if (bg.witness) rep.integrability.push_back(*bg.witness);
    if (!bg.group) {
      rep.blocking_step = "quotient: " + bg.blocking;
      return;
    }
    rep.group = bg.group;
    return;
  }
  rep.blocking_step = "quotient: blocks " + dims_string(rep.flag->block_dims()) +
                      " mix sizes or exceed 2; only single 2x2 blocks and rank-one blocks are in the catalog";
}

// Rank-one module carrying the torus characters of M_diag: the 1x1 blocks
// and the traces (determinants) of larger blocks.
inline DiffModule torus_module(const Flag& f, const std::vector<DerivationTag>& tags) {
  const auto blocks = diagonal_blocks(f);
  Matrix<RF> T(blocks.size(), blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    RF tr;
    for (std::size_t k = 0; k < blocks[i].rows(); ++k) tr += blocks[i](k, k);
    T(i, i) = tr;
  }
  return DiffModule(T, tags);
}

}  // namespace detail

/// Re-check every witness in the report by direct substitution.
inline bool verify_report(const DiffModule& M, const Report& rep) {
  if (rep.flag) {
    if (gauge_matrix(M.A, rep.flag->gauge) != rep.flag->reduced) return false;
    if (!is_block_upper_triangular(rep.flag->reduced, rep.flag->block_dims())) return false;
    if (rep.m_diag && rep.m_diag->A != block_diagonal_part(rep.flag->reduced, rep.flag->block_dims())) return false;
  }
  if (rep.splitting_gauge && (!rep.m_diag || gauge_matrix(M.A, *rep.splitting_gauge) != rep.m_diag->A)) return false;
  for (const auto& w : rep.integrability) {
    if (!integrability_residual_zero(w.A, w.Z, ParamRat(1))) return false;
    if (determinant(w.Z).is_zero()) return false;
  }
  return true;
}

namespace detail {
inline Report finish(const DiffModule& M, Report rep) {
  if (!verify_report(M, rep)) throw std::logic_error("report witness re-verification failed");
  rep.provenance.push_back("witnesses re-verified by substitution");
  return rep;
}
}  // namespace detail

/// M_diag and, within catalog reach, the group G/Ru(G).
inline Report reductive_quotient(const DiffModule& M, const PipelineOptions& opt = {}) {
  Report rep;
  detail::record_flag(rep, M);
  detail::quotient_group(rep, opt);
  return detail::finish(M, std::move(rep));
}

/// Is the PPV group of M reductive?
inline Report decide_reductive(const DiffModule& M, const PipelineOptions& opt = {}) {
  Report rep;
  detail::record_flag(rep, M);
  const Flag& f = *rep.flag;
  ReducibilityResult cr = is_completely_reducible(M, f);
  if (cr.verdict == Verdict::Yes) {
    // M is isomorphic to M_diag, so G = G_diag; membership at s = 0 confirms.
    rep.splitting_gauge = cr.witness;
    rep.provenance.push_back("complete reducibility: splitting gauge found, M is isomorphic to M_diag");
    MembershipResult mr = tensor_membership(M, *rep.m_diag, opt.budget);
    rep.bound_s = 0;
    rep.membership_rule = mr.rule;
    rep.provenance.push_back("tensor_membership(M, M_diag): " + std::string(to_string(mr.verdict)) + " (" + mr.rule + ")");
    if (mr.verdict != Verdict::Yes) throw std::logic_error("decide_reductive: split module not recognized as a member");
    rep.reductive = Verdict::Yes;
    detail::quotient_group(rep, opt);
    return detail::finish(M, std::move(rep));
  }
  if (cr.verdict == Verdict::Unknown) rep.incomplete.push_back("complete reducibility: " + cr.note);
  else
    rep.provenance.push_back("complete reducibility: no splitting (first failing block " +
                             std::to_string(cr.failing_block.value_or(0)) + ")");

  const DiffModule T = detail::torus_module(f, M.param_tags);
  OrdResult ord = ord_torus(T, opt.max_order, opt.budget);
  for (const auto& l : ord.log) rep.provenance.push_back("ord_torus " + l);
  if (ord.status != OrdResult::Status::Found) {
    rep.blocking_step = ord.status == OrdResult::Status::ExceedsBound
                            ? "ord_torus: no order <= " + std::to_string(opt.max_order)
                            : "ord_torus: membership undetermined at t = " + std::to_string(ord.t);
    return detail::finish(M, std::move(rep));
  }
  const int s = std::max(static_cast<int>(M.dim()) - 1, ord.t);
  rep.bound_s = s;
  rep.provenance.push_back("bound s = max(dim - 1, ord) = max(" + std::to_string(M.dim() - 1) + ", " +
                           std::to_string(ord.t) + ") = " + std::to_string(s) + " (dim bounds the Loewy length)");
  const DiffModule N = total_prolong(*rep.m_diag, s);
  MembershipResult mr = tensor_membership(M, N, opt.budget);
  rep.membership_rule = mr.rule;
  rep.provenance.push_back("tensor_membership(M, P^" + std::to_string(s) + "(M_diag)): " + to_string(mr.verdict) + " (" +
                           mr.rule + ")");
  rep.reductive = mr.verdict;
  if (mr.verdict == Verdict::Unknown) rep.blocking_step = "tensor_membership: " + mr.rule;
  return detail::finish(M, std::move(rep));
}

}  // namespace ppv
