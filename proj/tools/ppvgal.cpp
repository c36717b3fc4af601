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

// Command-line front end. Every subcommand prints one JSON report on
// standard output. Exit status: 0 success, 2 verdict unknown, 1 error.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "ppvgal/ppvgal.hpp"

namespace {

using nlohmann::json;
using namespace ppv;

constexpr int kOk = 0, kError = 1, kUnknown = 2;

struct Options {
  std::string in;
  std::uint32_t seed = 2026;
  int max_order = 4;
  int budget = 3;
  std::string wrt = "t";
  int order = 1;
  std::string tpl = "a";
  int n = 1;
  int samples = 8;
};

int emit(json j, int code) {
  std::cout << format_json(j);
  return code;
}

DiffModule load(const Options& o) {
  if (o.in.empty()) throw validation_error("--in is required");
  return read_system(o.in).module();
}

PipelineOptions pipeline_options(const Options& o) {
  if (o.max_order < 0) throw validation_error("--max-order must be non-negative");
  if (o.budget < 0) throw validation_error("--budget must be non-negative");
  return {o.max_order, o.budget};
}

int cmd_prolong(const Options& o) {
  if (o.wrt != "t") throw validation_error("--wrt must name a parameter ('t')");
  if (o.order < 0) throw validation_error("--order must be non-negative");
  DiffModule M = total_prolong(load(o), o.order);
  return emit({{"command", "prolong"}, {"wrt", o.wrt}, {"order", o.order}, {"matrix", matrix_json(M.A)}}, kOk);
}

int cmd_factor(const Options& o, bool diag) {
  DiffModule M = load(o);
  Flag f = factor_flag(M);
  json j{{"command", diag ? "diag" : "factor"}, {"flag", flag_json(f)}};
  if (diag) j["m_diag"] = matrix_json(diag_part(M, f).module.A);
  j["certified"] = f.all_certified();
  return emit(j, kOk);
}

int cmd_integrable(const Options& o) {
  DiffModule M = load(o);
  IntegrabilityResult r = integrability_basis(M.A);
  Verdict v = is_integrable(M.A, {DerivationTag::Dt});
  json W = json::array(), E = json::array();
  for (const auto& [Z, c] : r.W) W.push_back({{"Z", matrix_json(Z)}, {"c", to_string(c)}});
  for (std::size_t i = 0; i < r.E.basis.size(); ++i)
    E.push_back({{"c", to_string(r.E.basis[i].front())}, {"witness", matrix_json(r.E.witnesses[i])}});
  json j{{"command", "integrable"}, {"verdict", to_string(v)}, {"method", r.method},
         {"possibly_incomplete", r.possibly_incomplete}, {"W", W}, {"E", E}};
  return emit(j, v == Verdict::Unknown ? kUnknown : kOk);
}

int cmd_reductive(const Options& o) {
  Report r = decide_reductive(load(o), pipeline_options(o));
  json j = report_json(r, true);
  j["command"] = "reductive";
  return emit(j, r.reductive == Verdict::Unknown ? kUnknown : kOk);
}

int cmd_quotient(const Options& o) {
  Report r = reductive_quotient(load(o), pipeline_options(o));
  json j = report_json(r, false);
  j["command"] = "quotient";
  return emit(j, r.group ? kOk : kUnknown);
}

// The PPV group itself: rank one directly, otherwise through the quotient
// when the group is reductive.
int cmd_group(const Options& o) {
  DiffModule M = load(o);
  PipelineOptions po = pipeline_options(o);
  if (M.dim() == 1) {
    GroupDesc g = rank1_ppv_group(M.A(0, 0), po.max_order);
    return emit({{"command", "group"}, {"group", group_json(g)}}, kOk);
  }
  Report r = decide_reductive(M, po);
  json j = report_json(r, true);
  j["command"] = "group";
  if (r.reductive != Verdict::Yes) {
    j["group"] = "unknown";
    j["blocking_step"] = r.reductive == Verdict::No ? "group is not reductive; only G/Ru(G) is computed (see quotient)"
                                                    : r.blocking_step;
    return emit(j, kUnknown);
  }
  return emit(j, r.group ? kOk : kUnknown);
}

int cmd_socle(const Options& o) {
  if (o.samples < 1) throw validation_error("--samples must be positive");
  if (o.n < 0) throw validation_error("--n must be non-negative");
  RepTemplate t = parse_template(o.tpl);
  auto imgs = rep_images(t, sample_sl2_jets(static_cast<std::size_t>(o.samples), o.seed), o.n);
  auto sc = socle_filtration(imgs);
  json dims = json::array();
  for (const auto& s : sc.chain) dims.push_back(s.size());
  return emit({{"command", "socle"},
               {"template", o.tpl},
               {"n", o.n},
               {"seed", o.seed},
               {"samples", o.samples},
               {"dimension", imgs.front().rows()},
               {"algebra_dimension", generate_algebra(imgs).dim()},
               {"length", sc.length},
               {"chain_dims", dims},
               {"semisimple", sc.length <= 1},
               {"provenance", json::array({"module over the algebra generated by the sampled images"})}},
              kOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameterized Picard-Vessiot groups of dY/dx = A Y over Q(t)(x)"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("--in", o.in, "input system (JSON)");
    s->add_option("--max-order", o.max_order, "order cap for parameter relations and ord searches");
    s->add_option("--budget", o.budget, "coefficient cap for membership searches");
    s->add_option("--seed", o.seed, "sampling seed");
  };
  auto* prolong = app.add_subcommand("prolong", "total prolongation P^s");
  common(prolong);
  prolong->add_option("--wrt", o.wrt, "parameter to prolong in");
  prolong->add_option("--order", o.order, "prolongation order s");
  auto* diag = app.add_subcommand("diag", "flag and block-diagonal part M_diag");
  auto* factor = app.add_subcommand("factor", "flag with block dimensions");
  auto* integrable = app.add_subcommand("integrable", "integrability with respect to t");
  auto* group = app.add_subcommand("group", "PPV group description");
  auto* reductive = app.add_subcommand("reductive", "decide reductivity");
  auto* quotient = app.add_subcommand("quotient", "G/Ru(G) and M_diag");
  for (auto* s : {diag, factor, integrable, group, reductive, quotient}) common(s);
  auto* socle = app.add_subcommand("socle", "socle filtration of a sampled SL2 representation");
  common(socle);
  socle->add_option("--template", o.tpl, "a, b or pn");
  socle->add_option("--n", o.n, "prolongation depth for pn");
  socle->add_option("--samples", o.samples, "number of jet samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  }
  try {
    if (*prolong) return cmd_prolong(o);
    if (*diag) return cmd_factor(o, true);
    if (*factor) return cmd_factor(o, false);
    if (*integrable) return cmd_integrable(o);
    if (*group) return cmd_group(o);
    if (*reductive) return cmd_reductive(o);
    if (*quotient) return cmd_quotient(o);
    if (*socle) return cmd_socle(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
