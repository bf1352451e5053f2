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

#ifndef ENTGAME_IO_HPP_
#define ENTGAME_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entgame/centroid.hpp"
#include "entgame/divergence.hpp"
#include "entgame/generator.hpp"
#include "entgame/solver.hpp"

namespace entgame {

// A parsed instance file: pi, the generator family, optional labels, an
// optional divergence kind and a free-form options object providing
// defaults for the solver and oracle commands.
//
// Generators are given as square matrices. A matrix whose diagonal is
// identically zero (with some positive off-diagonal) is treated as
// off-diagonal only and its diagonal is recomputed; otherwise the full
// matrix must pass row-sum validation at the given tolerance.
struct InstanceDocument {
  Distribution pi;
  GeneratorFamily family;
  std::vector<std::string> labels;  // empty or one per generator
  std::optional<DivergenceSpec> divergence;
  nlohmann::ordered_json options;
};

InstanceDocument parse_instance(const nlohmann::json& doc,
                                double tol = kDefaultValidationTol);
InstanceDocument load_instance(const std::string& path,
                               double tol = kDefaultValidationTol);

// Machine-readable command output. Contains no timestamps, so identical
// invocations serialize to identical bytes.
struct ReportDocument {
  std::string command;
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();
  std::string inputs_digest;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  // Array of [iteration, dual, primal, gap] rows.
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  std::vector<std::string> warnings;

  nlohmann::ordered_json to_json() const;
  std::string dump(bool pretty = false) const;
};

// JSON helpers shared by the CLI and the tests. Non-finite values are
// serialized as null (JSON has no infinity).
nlohmann::ordered_json number_or_null(double v);
nlohmann::ordered_json matrix_to_json(const Generator& g);
nlohmann::ordered_json centroid_result_to_json(const CentroidResult& result);
nlohmann::ordered_json report_to_json(const EquilibriumReport& report);

// FNV-1a over the canonical (compact) serialization of the instance.
std::string inputs_digest(const nlohmann::json& instance);

}  // namespace entgame

#endif  // ENTGAME_IO_HPP_
