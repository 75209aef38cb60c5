// Copyright 2026 The twirlkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twirlkit/serialization.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "twirlkit/tolerances.hpp"

namespace twirlkit {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("complex values must be [re, im] pairs");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw std::invalid_argument("matrix rows must be non-empty");
  ComplexMatrix m(static_cast<Eigen::Index>(rows),
                  static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw std::invalid_argument("matrix rows must have uniform length");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          complex_from_json(j[i][k]);
  }
  return m;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
  return j;
}

const json& require_key(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("missing key: ") + key);
  return j.at(key);
}

std::string dump(const json& j, int indent) {
  return indent > 0 ? j.dump(indent) + "\n" : j.dump();
}

std::string variant_name(ConstructionVariant v) {
  switch (v) {
    case ConstructionVariant::ThreeOp: return "three_op";
    case ConstructionVariant::TwoOpOddD: return "two_op";
    case ConstructionVariant::Custom: return "custom";
  }
  return "three_op";
}

ConstructionVariant variant_from_name(const std::string& name) {
  if (name == "three_op") return ConstructionVariant::ThreeOp;
  if (name == "two_op") return ConstructionVariant::TwoOpOddD;
  if (name == "custom") return ConstructionVariant::Custom;
  throw std::invalid_argument("unknown variant: " + name);
}

}  // namespace

std::string ensemble_to_json(const UnitaryEnsemble& e, int indent) {
  json j;
  j["dim"] = e.dim();
  json items = json::array();
  for (const EnsembleItem& item : e.items()) {
    json entry;
    entry["p"] = item.p;
    entry["u"] = matrix_to_json(item.u);
    items.push_back(std::move(entry));
  }
  j["items"] = std::move(items);
  return dump(j, indent);
}

UnitaryEnsemble ensemble_from_json(const std::string& text) {
  const json j = parse(text);
  const json& items_json = require_key(j, "items");
  if (!items_json.is_array() || items_json.empty())
    throw std::invalid_argument("\"items\" must be a non-empty array");
  std::vector<EnsembleItem> items;
  items.reserve(items_json.size());
  for (const json& entry : items_json) {
    EnsembleItem item;
    const json& p = require_key(entry, "p");
    if (!p.is_number()) throw std::invalid_argument("\"p\" must be a number");
    item.p = p.get<double>();
    item.u = matrix_from_json(require_key(entry, "u"));
    items.push_back(std::move(item));
  }
  if (j.contains("dim")) {
    const Eigen::Index declared = j.at("dim").get<Eigen::Index>();
    if (declared != items.front().u.rows())
      throw std::invalid_argument("declared dim does not match matrices");
  }
  return UnitaryEnsemble(std::move(items));
}

std::string construction_to_json(const ConstructionSpec& spec, int indent) {
  json j;
  j["d"] = spec.d;
  j["variant"] = variant_name(spec.variant);
  j["A"] = {{"phi", spec.a.phi},
            {"alpha", complex_to_json(spec.a.alpha)},
            {"beta", complex_to_json(spec.a.beta)}};
  j["v_subspace"] = {spec.v_subspace.first, spec.v_subspace.second};
  if (!spec.probs.empty()) j["probs"] = spec.probs;
  if (!spec.words.empty()) j["words"] = spec.words;
  if (!spec.custom_ops.empty()) {
    json ops = json::array();
    for (const ComplexMatrix& op : spec.custom_ops)
      ops.push_back(matrix_to_json(op));
    j["custom_ops"] = std::move(ops);
  }
  return dump(j, indent);
}

ConstructionSpec construction_from_json(const std::string& text) {
  const json j = parse(text);
  ConstructionSpec spec;
  spec.d = require_key(j, "d").get<int>();
  spec.variant = variant_from_name(require_key(j, "variant").get<std::string>());
  if (j.contains("A")) {
    const json& a = j.at("A");
    spec.a.phi = require_key(a, "phi").get<double>();
    spec.a.alpha = complex_from_json(require_key(a, "alpha"));
    spec.a.beta = complex_from_json(require_key(a, "beta"));
  }
  if (j.contains("v_subspace")) {
    const json& vs = j.at("v_subspace");
    if (!vs.is_array() || vs.size() != 2)
      throw std::invalid_argument("\"v_subspace\" must be [i, j]");
    spec.v_subspace = {vs[0].get<int>(), vs[1].get<int>()};
  }
  if (j.contains("probs"))
    spec.probs = j.at("probs").get<std::vector<double>>();
  if (j.contains("words"))
    spec.words = j.at("words").get<std::vector<std::string>>();
  if (j.contains("custom_ops")) {
    for (const json& op : j.at("custom_ops"))
      spec.custom_ops.push_back(matrix_from_json(op));
  }
  return spec;
}

bool looks_like_construction(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  return j.is_object() && j.contains("variant");
}

std::string report_to_json(const AttractorReport& report,
                           std::optional<bool> conjectural, int indent) {
  json j;
  json spectrum = json::array();
  for (const Complex& lambda : report.asymptotic_spectrum)
    spectrum.push_back(complex_to_json(lambda));
  j["asymptotic_spectrum"] = std::move(spectrum);
  json blocks = json::array();
  for (const AttractorBlock& block : report.attractor_bases)
    blocks.push_back({{"lambda", complex_to_json(block.lambda)},
                      {"dimension", block.basis.size()}});
  j["attractor_blocks"] = std::move(blocks);
  j["fixed_point_dim"] = report.fixed_point_dim;
  j["stationary"] = report.stationary;
  j["converges_to_twirl"] = report.converges_to_twirl;
  if (conjectural.has_value()) j["conjectural"] = *conjectural;
  return dump(j, indent);
}

std::string rule_name(TwirlRule rule) {
  switch (rule) {
    case TwirlRule::TwoOpTraceless: return "two_op_traceless_pivot";
    case TwirlRule::TwoOpTraceNonzero: return "two_op_trace_nonzero_pivot";
    case TwirlRule::MultiOpTraceNonzero: return "multi_op_trace_nonzero";
    case TwirlRule::MultiOpAllTraceless: return "multi_op_all_traceless";
    case TwirlRule::None: return "none";
  }
  return "none";
}

std::string verdict_to_json(const TwirlVerdict& verdict, int indent) {
  json j;
  j["converges"] = verdict.converges;
  j["rule_fired"] = rule_name(verdict.rule_fired);
  json witness = json::object();
  for (const auto& [key, value] : verdict.witness) witness[key] = value;
  j["witness"] = std::move(witness);
  return dump(j, indent);
}

std::string optimization_to_json(const OptimizationResult& result,
                                 bool include_history, int indent) {
  json j;
  j["best_params"] = result.best_params;
  j["best_objective"] = result.best_objective;
  j["n_restarts"] = result.n_restarts;
  j["n_evaluations"] = result.history.size();
  if (include_history) {
    json history = json::array();
    for (const auto& [params, objective] : result.history)
      history.push_back({{"params", params}, {"objective", objective}});
    j["history"] = std::move(history);
  }
  return dump(j, indent);
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
  std::ostringstream out;
  out << "n,distance\n";
  out.precision(17);
  for (std::size_t i = 0; i < trace.n_values.size(); ++i)
    out << trace.n_values[i] << ',' << trace.distances[i] << '\n';
  return out.str();
}

std::string trace_to_json(const ConvergenceTrace& trace, int indent) {
  json j;
  j["n_values"] = trace.n_values;
  j["distances"] = trace.distances;
  j["fitted_rate"] = trace.fitted_rate;
  j["fit_r2"] = trace.fit_r2;
  j["subdominant_modulus"] = trace.subdominant_modulus;
  return dump(j, indent);
}

void apply_tolerance_overrides_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object())
    throw std::invalid_argument("tolerance overrides must be an object");
  Tolerances& tol = tolerances();
  for (const auto& [key, value] : j.items()) {
    if (key == "unitarity") tol.unitarity = value.get<double>();
    else if (key == "eigen_residual") tol.eigen_residual = value.get<double>();
    else if (key == "rank_drop") tol.rank_drop = value.get<double>();
    else if (key == "unit_circle") tol.unit_circle = value.get<double>();
    else if (key == "eigen_dedup") tol.eigen_dedup = value.get<double>();
    else if (key == "subspace") tol.subspace = value.get<double>();
    else if (key == "nullspace_rel") tol.nullspace_rel = value.get<double>();
    else if (key == "angular") tol.angular = value.get<double>();
    else if (key == "hermiticity") tol.hermiticity = value.get<double>();
    else if (key == "trace") tol.trace = value.get<double>();
    else if (key == "psd_floor") tol.psd_floor = value.get<double>();
    else if (key == "max_kron_dim") tol.max_kron_dim = value.get<std::int64_t>();
    else throw std::invalid_argument("unknown tolerance key: " + key);
  }
}

}  // namespace twirlkit
