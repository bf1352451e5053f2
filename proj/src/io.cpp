// Copyright 2026 The entgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entgame/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace entgame {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::vector<double>> parse_matrix(const json& node,
                                              const std::string& path) {
  if (!node.is_array() || node.empty()) {
    throw ParseError(path, "expected a non-empty array of rows");
  }
  const size_t dim = node.size();
  std::vector<std::vector<double>> rows(dim);
  for (size_t x = 0; x < dim; ++x) {
    const auto& row = node[x];
    const std::string row_path = path + "[" + std::to_string(x) + "]";
    if (!row.is_array() || row.size() != dim) {
      throw ParseError(row_path, "expected a row of " + std::to_string(dim) +
                                     " numbers");
    }
    rows[x].resize(dim);
    for (size_t y = 0; y < dim; ++y) {
      const auto& cell = row[y];
      if (!cell.is_number()) {
        throw ParseError(row_path + "[" + std::to_string(y) + "]",
                         "expected a number");
      }
      rows[x][y] = cell.get<double>();
    }
  }
  return rows;
}

bool diagonal_is_blank(const std::vector<std::vector<double>>& rows) {
  bool any_off = false;
  for (size_t x = 0; x < rows.size(); ++x) {
    if (rows[x][x] != 0.0) return false;
    for (size_t y = 0; y < rows.size(); ++y) {
      if (y != x && rows[x][y] != 0.0) any_off = true;
    }
  }
  return any_off;
}

}  // namespace

InstanceDocument parse_instance(const json& doc, double tol) {
  if (!doc.is_object()) throw ParseError("$", "instance must be an object");

  if (!doc.contains("pi") || !doc["pi"].is_array() || doc["pi"].empty()) {
    throw ParseError("pi", "expected a non-empty array of positive reals");
  }
  std::vector<double> pi_values;
  for (size_t i = 0; i < doc["pi"].size(); ++i) {
    const auto& cell = doc["pi"][i];
    if (!cell.is_number()) {
      throw ParseError("pi[" + std::to_string(i) + "]", "expected a number");
    }
    const double p = cell.get<double>();
    if (!(p > 0.0)) {
      throw ParseError("pi[" + std::to_string(i) + "]",
                       "must be strictly positive");
    }
    pi_values.push_back(p);
  }
  double pi_sum = 0.0;
  for (double p : pi_values) pi_sum += p;
  if (std::abs(pi_sum - 1.0) > tol) {
    throw ParseError("pi", "entries sum to " + std::to_string(pi_sum) +
                               ", expected 1");
  }
  Distribution pi(pi_values, tol);

  if (!doc.contains("generators") || !doc["generators"].is_array() ||
      doc["generators"].empty()) {
    throw ParseError("generators", "expected a non-empty array of matrices");
  }
  std::vector<Generator> members;
  for (size_t i = 0; i < doc["generators"].size(); ++i) {
    const std::string path = "generators[" + std::to_string(i) + "]";
    auto rows = parse_matrix(doc["generators"][i], path);
    if (rows.size() != pi_values.size()) {
      throw ParseError(path, "dimension differs from pi");
    }
    try {
      // A blank diagonal means "recompute"; anything else must validate.
      members.push_back(diagonal_is_blank(rows)
                            ? generator_from_off_diagonal(rows, tol)
                            : validate_generator(rows, tol));
    } catch (const Error& e) {
      throw Error(path + ": " + e.what());
    }
  }
  GeneratorFamily family(std::move(members));

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() ||
        doc["labels"].size() != doc["generators"].size()) {
      throw ParseError("labels", "expected one label per generator");
    }
    for (size_t i = 0; i < doc["labels"].size(); ++i) {
      if (!doc["labels"][i].is_string()) {
        throw ParseError("labels[" + std::to_string(i) + "]",
                         "expected a string");
      }
      labels.push_back(doc["labels"][i].get<std::string>());
    }
  }

  std::optional<DivergenceSpec> spec;
  if (doc.contains("divergence")) {
    if (!doc["divergence"].is_string()) {
      throw ParseError("divergence", "expected a divergence name");
    }
    try {
      spec = DivergenceSpec::parse(doc["divergence"].get<std::string>());
    } catch (const Error& e) {
      throw ParseError("divergence", e.what());
    }
  }

  ordered_json options = ordered_json::object();
  if (doc.contains("options")) {
    if (!doc["options"].is_object()) {
      throw ParseError("options", "expected an object");
    }
    options = doc["options"];
  }

  return InstanceDocument{std::move(pi), std::move(family), std::move(labels),
                          std::move(spec), std::move(options)};
}

InstanceDocument load_instance(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open instance file");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ParseError(path, e.what());
  }
  return parse_instance(doc, tol);
}

ordered_json ReportDocument::to_json() const {
  ordered_json out;
  out["command"] = command;
  out["flags"] = flags;
  out["inputs_digest"] = inputs_digest;
  out["results"] = results;
  out["trace"] = trace;
  out["warnings"] = warnings;
  return out;
}

std::string ReportDocument::dump(bool pretty) const {
  return pretty ? to_json().dump(2) : to_json().dump();
}

ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json matrix_to_json(const Generator& g) {
  ordered_json out = ordered_json::array();
  for (const auto& row : g.rows()) {
    out.push_back(row);
  }
  return out;
}

ordered_json centroid_result_to_json(const CentroidResult& result) {
  ordered_json out;
  out["centroid"] = matrix_to_json(result.centroid);
  ordered_json divs = ordered_json::array();
  for (double d : result.per_member_divergence) divs.push_back(number_or_null(d));
  out["per_member_divergence"] = divs;
  if (result.flat_interval) {
    out["flat_interval"] = {
        {"lower", matrix_to_json(result.flat_interval->first)},
        {"upper", matrix_to_json(result.flat_interval->second)}};
  }
  return out;
}

ordered_json report_to_json(const EquilibriumReport& report) {
  ordered_json out;
  out["weights_avg"] = report.weights_avg.values();
  out["centroid"] = matrix_to_json(report.centroid);
  out["value"] = number_or_null(report.value);
  out["chebyshev_radius"] = number_or_null(report.chebyshev_radius);
  out["gap"] = number_or_null(report.gap);
  out["best_dual"] = number_or_null(report.best_dual);
  out["best_gap"] = number_or_null(report.best_gap);
  ordered_json divs = ordered_json::array();
  for (double d : report.per_member_divergence) divs.push_back(number_or_null(d));
  out["per_member_divergence"] = divs;
  ordered_json slack = ordered_json::array();
  for (double s : report.slackness) slack.push_back(number_or_null(s));
  out["slackness"] = slack;
  out["iterations"] = report.iterations;
  out["stepsize"] = number_or_null(report.stepsize);
  out["B_estimate"] = number_or_null(report.B_estimate);
  out["B_doublings"] = report.b_doublings;
  if (report.flat_interval) {
    out["flat_interval"] = {
        {"lower", matrix_to_json(report.flat_interval->first)},
        {"upper", matrix_to_json(report.flat_interval->second)}};
  }
  return out;
}

std::string inputs_digest(const json& instance) {
  const std::string canonical = instance.dump();
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << "fnv1a:" << std::hex << hash;
  return out.str();
}

}  // namespace entgame
