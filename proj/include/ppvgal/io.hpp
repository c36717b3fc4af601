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

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ppvgal/expr.hpp"
#include "ppvgal/pipeline.hpp"
#include "ppvgal/rep_analysis.hpp"

namespace ppv {

class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// dY/dx = A Y over Q(t)(x), or y^(n) + c_{n-1} y^(n-1) + ... + c_0 y = 0.
/// `scalar` lists the coefficients leading first and starts with "1".
struct SystemInput {
  std::string main_var = "x";
  std::vector<std::string> params{"t"};
  std::vector<std::vector<std::string>> matrix;
  std::optional<std::vector<std::string>> scalar;

  DiffModule module() const;
};

/// Companion matrix of y^(n) + c_{n-1} y^(n-1) + ... + c_0 y = 0 acting on
/// (y, y', ..., y^(n-1)); coefficients are given leading first.
inline Matrix<RF> companion_from_scalar(const std::vector<RF>& coeffs) {
  if (coeffs.size() < 2) throw validation_error("scalar equation needs order >= 1");
  if (coeffs.front() != RF(1)) throw validation_error("scalar equation must have leading coefficient 1");
  const std::size_t n = coeffs.size() - 1;
  Matrix<RF> A(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) A(i, i + 1) = RF(1);
  for (std::size_t j = 0; j < n; ++j) A(n - 1, j) = -coeffs[n - j];
  return A;
}

inline DiffModule SystemInput::module() const {
  if (main_var != "x") throw validation_error("main variable must be 'x'");
  for (const auto& p : params)
    if (p != "t") throw validation_error("unsupported parameter '" + p + "' (only 't')");
  auto parse = [&](const std::string& s) {
    RF f = parse_rf(s);
    if (params.empty() && !derive(f, DerivationTag::Dt).is_zero())
      throw validation_error("expression '" + s + "' depends on t, which is not declared");
    return f;
  };
  std::optional<Matrix<RF>> A;
  if (!matrix.empty()) {
    const std::size_t n = matrix.size();
    Matrix<RF> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix[i].size() != n) throw validation_error("matrix must be square");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = parse(matrix[i][j]);
    }
    A = m;
  }
  if (scalar) {
    std::vector<RF> c;
    for (const auto& s : *scalar) c.push_back(parse(s));
    Matrix<RF> comp = companion_from_scalar(c);
    if (A && *A != comp) throw validation_error("matrix and scalar forms disagree");
    A = comp;
  }
  if (!A) throw validation_error("input has neither 'matrix' nor 'scalar'");
  std::vector<DerivationTag> tags;
  if (!params.empty()) tags.push_back(DerivationTag::Dt);
  return DiffModule(*A, tags);
}

inline SystemInput parse_system(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("invalid JSON: ") + e.what());
  }
  SystemInput in;
  try {
    if (!j.is_object()) throw validation_error("top level must be an object");
    if (j.contains("vars")) {
      const auto& v = j.at("vars");
      if (v.contains("main")) in.main_var = v.at("main").get<std::string>();
      if (v.contains("params")) in.params = v.at("params").get<std::vector<std::string>>();
    }
    if (j.contains("matrix")) in.matrix = j.at("matrix").get<std::vector<std::vector<std::string>>>();
    if (j.contains("scalar")) in.scalar = j.at("scalar").get<std::vector<std::string>>();
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "vars" && it.key() != "matrix" && it.key() != "scalar")
        throw validation_error("unknown field '" + it.key() + "'");
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("malformed input: ") + e.what());
  }
  in.module();  // validates
  return in;
}

inline SystemInput read_system(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_system(ss.str());
}

namespace detail {

// Arrays of scalars that fit comfortably on one line.
inline bool is_flat_array(const nlohmann::json& j) {
  if (!j.is_array()) return false;
  std::size_t width = 0;
  for (const auto& e : j) {
    if (e.is_array() || e.is_object()) return false;
    width += e.dump().size() + 2;
  }
  return width <= 100;
}

// Two-space indentation with short arrays of scalars kept on one line, so
// matrix rows read as rows.
inline void emit(const nlohmann::json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' '), in(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      os << in << nlohmann::json(it.key()).dump() << ": ";
      emit(it.value(), os, indent + 2);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (is_flat_array(j)) {
    os << "[";
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
    os << "]";
  } else if (j.is_array()) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << in;
      emit(j[i], os, indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace detail

inline std::string format_json(const nlohmann::json& j) {
  std::ostringstream os;
  detail::emit(j, os, 0);
  os << "\n";
  return os.str();
}

inline nlohmann::json matrix_json(const Matrix<RF>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

/// Canonical form: expressions re-printed, keys sorted, rows on one line.
inline std::string serialize(const SystemInput& in) {
  nlohmann::json j;
  j["vars"] = {{"main", in.main_var}, {"params", in.params}};
  const DiffModule M = in.module();
  if (in.scalar) {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& e : *in.scalar) s.push_back(to_string(parse_rf(e)));
    j["scalar"] = s;
  }
  if (!in.matrix.empty() || !in.scalar) j["matrix"] = matrix_json(M.A);
  return format_json(j);
}

inline nlohmann::json group_json(const GroupDesc& g) {
  nlohmann::json j;
  j["name"] = g.to_string();
  j["algebraic"] = g.algebraic_name();
  j["constants"] = g.constants;
  j["differential_constraints"] = g.differential_constraints;
  if (!g.ppv_operator.empty()) j["L0"] = dt_operator_string(g.ppv_operator);
  if (!g.factors.empty()) {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& x : g.factors) f.push_back(group_json(x));
    j["factors"] = f;
  }
  if (!g.finite_kernel.empty()) j["finite_kernel"] = g.finite_kernel;
  j["provenance"] = g.provenance;
  return j;
}

inline nlohmann::json flag_json(const Flag& f) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : f.blocks) blocks.push_back({{"dim", b.dim}, {"certified", b.certified}, {"method", b.method}});
  return {{"dims", f.block_dims()}, {"gauge", matrix_json(f.gauge)}, {"reduced", matrix_json(f.reduced)}, {"blocks", blocks}};
}

inline const char* reductive_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "reductive";
    case Verdict::No: return "not reductive";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

inline nlohmann::json report_json(const Report& r, bool with_verdict) {
  nlohmann::json j;
  if (with_verdict) j["reductive"] = reductive_string(r.reductive);
  j["group"] = r.group ? group_json(*r.group) : nlohmann::json("unknown");
  if (r.bound_s >= 0) j["bound_s"] = r.bound_s;
  if (r.flag) j["flag"] = flag_json(*r.flag);
  if (r.m_diag) j["m_diag"] = matrix_json(r.m_diag->A);
  if (r.splitting_gauge) j["splitting_gauge"] = matrix_json(*r.splitting_gauge);
  if (r.membership_rule) j["membership_rule"] = *r.membership_rule;
  if (!r.integrability.empty()) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : r.integrability) w.push_back({{"A", matrix_json(x.A)}, {"Z", matrix_json(x.Z)}});
    j["integrability_witnesses"] = w;
  }
  j["incomplete"] = r.incomplete;
  if (!r.blocking_step.empty()) j["blocking_step"] = r.blocking_step;
  j["provenance"] = r.provenance;
  return j;
}

}  // namespace ppv
