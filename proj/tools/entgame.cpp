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

// Batch front door: loads an instance document, dispatches to the library
// and emits a machine-readable report. Exit codes: 0 success, 2 parse
// error, 3 domain error, 4 non-convergence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entgame/io.hpp"
#include "entgame/oracle.hpp"

namespace {

using entgame::DivergenceSpec;
using entgame::Distribution;
using entgame::Generator;
using entgame::GeneratorFamily;
using entgame::InstanceDocument;
using entgame::ReportDocument;
using entgame::WeightVector;
using nlohmann::json;
using nlohmann::ordered_json;

struct CommonArgs {
  std::string instance_path;
  std::string output_path;
  bool pretty = false;
  double tol = entgame::kDefaultValidationTol;
};

void add_common(CLI::App* cmd, CommonArgs* args, bool instance_required = true) {
  auto* opt = cmd->add_option("-i,--instance", args->instance_path,
                              "Instance file (JSON)");
  if (instance_required) opt->required();
  cmd->add_option("-o,--output", args->output_path,
                  "Write the report here instead of stdout");
  cmd->add_flag("--pretty", args->pretty, "Indent the report");
  cmd->add_option("--tol", args->tol,
                  "Validation tolerance for pi and the generators")
      ->envname("ENTGAME_TOL");
}

struct LoadedInstance {
  json raw;
  InstanceDocument doc;
};

LoadedInstance load(const CommonArgs& args) {
  std::ifstream in(args.instance_path);
  if (!in) {
    throw entgame::ParseError(args.instance_path, "cannot open instance file");
  }
  json raw;
  try {
    in >> raw;
  } catch (const json::parse_error& e) {
    throw entgame::ParseError(args.instance_path, e.what());
  }
  InstanceDocument doc = entgame::parse_instance(raw, args.tol);
  return LoadedInstance{std::move(raw), std::move(doc)};
}

void check_member_index(int index, int n) {
  if (index >= n) {
    throw entgame::Error("member index " + std::to_string(index) +
                         " out of range for a family of " +
                         std::to_string(n));
  }
}

DivergenceSpec pick_spec(const std::string& flag_value,
                         const InstanceDocument& doc) {
  if (!flag_value.empty()) return DivergenceSpec::parse(flag_value);
  if (doc.divergence) return *doc.divergence;
  throw entgame::Error(
      "no divergence selected: pass --divergence or set it in the instance");
}

double parse_power(const std::string& text) {
  if (text == "inf" || text == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  std::istringstream in(text);
  double p = 0.0;
  if (!(in >> p) || !in.eof()) {
    throw entgame::Error("cannot parse power '" + text + "'");
  }
  return p;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream cell(item);
    double v = 0.0;
    if (!(cell >> v) || !cell.eof()) {
      throw entgame::Error("cannot parse list item '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw entgame::Error("empty list");
  return out;
}

// uniform | e:i (1-based) | comma-separated weights
WeightVector parse_weights(const std::string& text, int n) {
  if (text.empty() || text == "uniform") return WeightVector::uniform(n);
  if (text.rfind("e:", 0) == 0) {
    const int index = std::stoi(text.substr(2));
    if (index < 1 || index > n) {
      throw entgame::Error("unit weight index out of range (1-based)");
    }
    return WeightVector::unit(n, index - 1);
  }
  return WeightVector(parse_number_list(text));
}

std::vector<std::int64_t> parse_iteration_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (double v : parse_number_list(text)) {
    if (!(v >= 1.0)) throw entgame::Error("iteration counts must be >= 1");
    out.push_back(static_cast<std::int64_t>(std::llround(v)));
  }
  return out;
}

json random_instance(int states, int members, std::uint64_t seed) {
  if (states < 2) throw entgame::Error("--random-states must be at least 2");
  if (members < 1) throw entgame::Error("--random-members must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mass(0.5, 1.5);
  std::uniform_real_distribution<double> rate(0.2, 2.0);
  std::vector<double> pi(static_cast<size_t>(states));
  double sum = 0.0;
  for (auto& p : pi) {
    p = mass(rng);
    sum += p;
  }
  for (auto& p : pi) p /= sum;
  json doc;
  doc["pi"] = pi;
  doc["divergence"] = "alpha:2";
  doc["generators"] = json::array();
  for (int i = 0; i < members; ++i) {
    std::vector<std::vector<double>> rows(
        static_cast<size_t>(states),
        std::vector<double>(static_cast<size_t>(states), 0.0));
    for (int x = 0; x < states; ++x) {
      double off = 0.0;
      for (int y = 0; y < states; ++y) {
        if (y == x) continue;
        rows[static_cast<size_t>(x)][static_cast<size_t>(y)] = rate(rng);
        off += rows[static_cast<size_t>(x)][static_cast<size_t>(y)];
      }
      rows[static_cast<size_t>(x)][static_cast<size_t>(x)] = -off;
    }
    doc["generators"].push_back(rows);
  }
  return doc;
}

// Instance "options" provide defaults; explicit flags win.
template <typename T>
void option_default(const CLI::App* cmd, const std::string& flag,
                    const ordered_json& options, const std::string& key,
                    T* value) {
  if (cmd->count(flag) > 0 || !options.contains(key)) return;
  try {
    *value = options.at(key).get<T>();
  } catch (const json::exception& e) {
    throw entgame::ParseError("options." + key, e.what());
  }
}

void emit(const ReportDocument& report, const CommonArgs& args) {
  const std::string text = report.dump(args.pretty) + "\n";
  if (args.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.output_path);
    if (!out) throw entgame::Error("cannot open output file");
    out << text;
  }
}

ordered_json trace_rows(const std::vector<entgame::TraceRow>& trace) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : trace) {
    rows.push_back({row.iteration, entgame::number_or_null(row.dual_value),
                    entgame::number_or_null(row.primal_value),
                    entgame::number_or_null(row.gap)});
  }
  return rows;
}

int run_cli(int argc, char** argv) {
  CLI::App app{
      "Markov chain entropy games: f-divergences between generators, "
      "weighted information centroids, Chebyshev centers and approximate "
      "mixed equilibria"};
  app.require_subcommand(1);

  // --- validate ---------------------------------------------------------
  auto* validate = app.add_subcommand(
      "validate", "Check that the instance parses into a valid family");
  CommonArgs validate_args;
  add_common(validate, &validate_args);

  // --- dual -------------------------------------------------------------
  auto* dual = app.add_subcommand("dual", "pi-dual of each generator");
  CommonArgs dual_args;
  int dual_index = -1;
  add_common(dual, &dual_args);
  dual->add_option("--index", dual_index, "Only this member (0-based)");

  // --- reversiblize -----------------------------------------------------
  auto* reversiblize = app.add_subcommand(
      "reversiblize", "Power-mean reversiblization of each generator");
  CommonArgs reversiblize_args;
  std::string power_text;
  int reversiblize_index = -1;
  add_common(reversiblize, &reversiblize_args);
  reversiblize
      ->add_option("--p", power_text, "Power-mean order (real, inf or -inf)")
      ->required();
  reversiblize->add_option("--index", reversiblize_index,
                           "Only this member (0-based)");

  // --- divergence -------------------------------------------------------
  auto* divergence_cmd =
      app.add_subcommand("divergence", "D_f between two family members");
  CommonArgs divergence_args;
  std::string divergence_kind;
  int m_index = 0;
  int l_index = 1;
  add_common(divergence_cmd, &divergence_args);
  divergence_cmd->add_option("--divergence", divergence_kind,
                             "alpha:<a>, kl, rkl, hellinger2, tv, tv-half, "
                             "chi2");
  divergence_cmd->add_option("--m-index", m_index, "First argument (0-based)");
  divergence_cmd->add_option("--l-index", l_index,
                             "Second argument (0-based)");

  // --- project ----------------------------------------------------------
  auto* project = app.add_subcommand(
      "project", "f-projection of each generator onto the reversible set");
  CommonArgs project_args;
  std::string project_kind;
  int project_index = -1;
  add_common(project, &project_args);
  project->add_option("--divergence", project_kind, "Divergence kind");
  project->add_option("--index", project_index, "Only this member (0-based)");

  // --- centroid ---------------------------------------------------------
  auto* centroid_cmd =
      app.add_subcommand("centroid", "Weighted information centroid");
  CommonArgs centroid_args;
  std::string centroid_kind;
  std::string centroid_weights;
  std::string centroid_method = "auto";
  add_common(centroid_cmd, &centroid_args);
  centroid_cmd->add_option("--divergence", centroid_kind, "Divergence kind");
  centroid_cmd->add_option("--weights", centroid_weights,
                           "uniform, e:<i> or a comma list");
  centroid_cmd
      ->add_option("--method", centroid_method, "auto, closed or generic")
      ->check(CLI::IsMember({"auto", "closed", "generic"}));

  // --- solve ------------------------------------------------------------
  auto* solve = app.add_subcommand(
      "solve", "Projected subgradient run for the mixed equilibrium");
  CommonArgs solve_args;
  std::string solve_kind;
  std::int64_t iters = 10000;
  std::string eta_text = "auto";
  std::string w0_text = "uniform";
  double epsilon = -1.0;
  std::int64_t trace_every = 1;
  int ref_index = 0;  // 1-based; 0 = last member
  double safety = 4.0;
  std::uint64_t seed = 1;
  int random_states = 0;
  int random_members = 0;
  add_common(solve, &solve_args, /*instance_required=*/false);
  solve->add_option("--divergence", solve_kind, "Divergence kind");
  solve->add_option("--iters", iters, "Iteration count t");
  solve->add_option("--eta", eta_text, "Constant stepsize, or 'auto'");
  solve->add_option("--w0", w0_text, "uniform, e:<i> or a comma list");
  solve->add_option("--epsilon", epsilon,
                    "Early stop once the recorded gap is below this");
  solve->add_option("--trace-every", trace_every, "Record every k-th row");
  solve->add_option("--ref-index", ref_index,
                    "Subgradient reference member (1-based; 0 = last)");
  solve->add_option("--safety", safety, "Safety factor for the B estimate");
  solve->add_option("--seed", seed, "Seed for --random-states test mode");
  solve->add_option("--random-states", random_states,
                    "Generate a random instance with this many states");
  solve->add_option("--random-members", random_members,
                    "Member count for the random instance");

  // --- pure-nash --------------------------------------------------------
  auto* pure = app.add_subcommand(
      "pure-nash", "Existence check for a pure-strategy equilibrium");
  CommonArgs pure_args;
  std::string pure_kind;
  double pure_tol = 1e-6;
  std::int64_t pure_iters = 10000;
  std::string pure_w0 = "uniform";
  add_common(pure, &pure_args);
  pure->add_option("--divergence", pure_kind, "Divergence kind");
  pure->add_option("--value-tol", pure_tol, "Value-gap tolerance");
  pure->add_option("--iters", pure_iters, "Iterations for the mixed solve");
  pure->add_option("--w0", pure_w0, "Start of the mixed solve");

  // --- oracle -----------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "Brute-force verifiers");
  oracle->require_subcommand(1);
  CommonArgs oracle_args;
  std::string oracle_kind;
  double resolution = 1e-3;
  std::string oracle_weights;
  auto* oracle_dual = oracle->add_subcommand(
      "dual", "Grid search of the dual over the simplex");
  auto* oracle_edge = oracle->add_subcommand(
      "edge", "Dense per-pair scan of the centroid objective");
  auto* oracle_pure = oracle->add_subcommand(
      "pure", "Per-member self-distances through the closed projection");
  for (CLI::App* sub : {oracle_dual, oracle_edge, oracle_pure}) {
    add_common(sub, &oracle_args);
    sub->add_option("--divergence", oracle_kind, "Divergence kind");
  }
  oracle_dual->add_option("--resolution", resolution, "Grid step");
  oracle_edge->add_option("--resolution", resolution, "Grid step");
  oracle_edge->add_option("--weights", oracle_weights,
                          "uniform, e:<i> or a comma list");

  // --- probe-rate -------------------------------------------------------
  auto* probe = app.add_subcommand(
      "probe-rate", "Centroid convergence distances for a list of horizons");
  CommonArgs probe_args;
  std::string probe_kind;
  std::string t_list_text = "100,1000,10000";
  std::int64_t t_ref = 0;
  add_common(probe, &probe_args);
  probe->add_option("--divergence", probe_kind, "Divergence kind");
  probe->add_option("--t-list", t_list_text, "Comma list of horizons");
  probe->add_option("--t-ref", t_ref,
                    "Reference horizon (raised to 100 * max(t-list))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ReportDocument report;
  CommonArgs* common = nullptr;
  int exit_code = 0;

  if (validate->parsed()) {
    common = &validate_args;
    auto loaded = load(validate_args);
    report.command = "validate";
    report.flags = {{"tol", validate_args.tol}};
    report.inputs_digest = entgame::inputs_digest(loaded.raw);
    ordered_json reversible = ordered_json::array();
    for (int i = 0; i < loaded.doc.family.size(); ++i) {
      reversible.push_back(
          entgame::is_reversible(loaded.doc.family[i], loaded.doc.pi));
    }
    report.results = {{"dim", loaded.doc.pi.dim()},
                      {"n", loaded.doc.family.size()},
                      {"valid", true},
                      {"reversible", reversible}};
  } else if (dual->parsed()) {
    common = &dual_args;
    auto loaded = load(dual_args);
    check_member_index(dual_index, loaded.doc.family.size());
    report.command = "dual";
    report.flags = {{"index", dual_index}};
    report.inputs_digest = entgame::inputs_digest(loaded.raw);
    ordered_json duals = ordered_json::array();
    for (int i = 0; i < loaded.doc.family.size(); ++i) {
      if (dual_index >= 0 && i != dual_index) continue;
      duals.push_back(entgame::matrix_to_json(
          entgame::pi_dual(loaded.doc.family[i], loaded.doc.pi)));
    }
    report.results = {{"duals", duals}};
  } else if (reversiblize->parsed()) {
    common = &reversiblize_args;
    auto loaded = load(reversiblize_args);
    const double p = parse_power(power_text);
    check_member_index(reversiblize_index, loaded.doc.family.size());
    report.command = "reversiblize";
    report.flags = {{"p", power_text}, {"index", reversiblize_index}};
    report.inputs_digest = entgame::inputs_digest(loaded.raw);
    ordered_json out = ordered_json::array();
    for (int i = 0; i < loaded.doc.family.size(); ++i) {
      if (reversiblize_index >= 0 && i != reversiblize_index) continue;
      out.push_back(entgame::matrix_to_json(entgame::power_mean_reversiblization(
          loaded.doc.family[i], loaded.doc.pi, p)));
    }
    report.results = {{"reversiblizations", out}};
  } else if (divergence_cmd->parsed()) {
    common = &divergence_args;
    auto loaded = load(divergence_args);
    const auto spec = pick_spec(divergence_kind, loaded.doc);
    if (m_index < 0 || m_index >= loaded.doc.family.size() || l_index < 0 ||
        l_index >= loaded.doc.family.size()) {
      throw entgame::Error("generator index out of range");
    }
    const double value =
        entgame::divergence(spec, loaded.doc.family[m_index],
                            loaded.doc.family[l_index], loaded.doc.pi);
    report.command = "divergence";
    report.flags = {{"divergence", spec.name()},
                    {"m_index", m_index},
                    {"l_index", l_index}};
    report.inputs_digest = entgame::inputs_digest(loaded.raw);
    report.results = {{"value", entgame::number_or_null(value)},
                      {"finite", std::isfinite(value)}};
  } else if (project->parsed()) {
    common = &project_args;
    auto loaded = load(project_args);
    const auto spec = pick_spec(project_kind, loaded.doc);
    check_member_index(project_index, loaded.doc.family.size());
    report.command = "project";
    report.flags = {{"divergence", spec.name()}, {"index", project_index}};
    report.inputs_digest = entgame::inputs_digest(loaded.raw);
    ordered_json projections = ordered_json::array();
    for (int i = 0; i < loaded.doc.family.size(); ++i) {
      if (project_index >= 0 && i != project_index) continue;
      projections.push_back(entgame::centroid_result_to_json(
          entgame::f_projection_result(spec, loaded.doc.family[i],
                                       loaded.doc.pi)));
    }
    report.results = {{"projections", projections}};
  } else if (centroid_cmd->parsed()) {
    common = &centroid_args;
    auto loaded = load(centroid_args);
    const auto spec = pick_spec(centroid_kind, loaded.doc);
    const auto w = parse_weights(centroid_weights, loaded.doc.family.size());
    entgame::CentroidResult result =
        centroid_method == "closed"
            ? entgame::weighted_centroid_closed(spec, loaded.doc.family,
                                                loaded.doc.pi, w)
            : centroid_method == "generic"
                  ? entgame::weighted_centroid_generic(spec, loaded.doc.family,
                                                       loaded.doc.pi, w)
                  : entgame::weighted_centroid(spec, loaded.doc.family,
                                               loaded.doc.pi, w);
    report.command = "centroid";
    report.flags = {{"divergence", spec.name()},
                    {"weights", w.values()},
                    {"method", centroid_method}};
    report.inputs_digest = entgame::inputs_digest(loaded.raw);
    report.results = entgame::centroid_result_to_json(result);
  } else if (solve->parsed()) {
    common = &solve_args;
    json raw;
    std::optional<InstanceDocument> doc;
    if (random_states > 0 || random_members > 0) {
      if (!solve_args.instance_path.empty()) {
        throw entgame::Error("pass either an instance or --random-states");
      }
      raw = random_instance(random_states, random_members, seed);
      doc = entgame::parse_instance(raw, solve_args.tol);
    } else {
      if (solve_args.instance_path.empty()) {
        throw entgame::Error("an instance file is required (or use "
                             "--random-states in test mode)");
      }
      auto loaded = load(solve_args);
      raw = std::move(loaded.raw);
      doc = std::move(loaded.doc);
    }
    const auto spec = pick_spec(solve_kind, *doc);
    option_default(solve, "--iters", doc->options, "iters", &iters);
    if (solve->count("--eta") == 0 && doc->options.contains("eta")) {
      const auto& cell = doc->options.at("eta");
      eta_text = cell.is_string() ? cell.get<std::string>() : cell.dump();
    }
    option_default(solve, "--w0", doc->options, "w0", &w0_text);
    option_default(solve, "--epsilon", doc->options, "epsilon", &epsilon);
    option_default(solve, "--trace-every", doc->options, "trace_every",
                   &trace_every);
    entgame::SolveOptions options;
    if (eta_text != "auto") {
      std::istringstream in(eta_text);
      double eta = 0.0;
      if (!(in >> eta) || !in.eof()) {
        throw entgame::Error("cannot parse --eta '" + eta_text + "'");
      }
      options.eta = eta;
    }
    options.w0 = parse_weights(w0_text, doc->family.size());
    if (epsilon >= 0.0) options.epsilon = epsilon;
    options.trace_every = trace_every;
    options.ref_index = ref_index == 0 ? -1 : ref_index - 1;
    options.safety = safety;
    const auto result =
        entgame::solve_game(spec, doc->family, doc->pi, iters, options);
    report.command = "solve";
    report.flags = {{"divergence", spec.name()}, {"iters", iters},
                    {"eta", eta_text},           {"w0", w0_text},
                    {"trace_every", trace_every}, {"safety", safety}};
    report.inputs_digest = entgame::inputs_digest(raw);
    report.results = entgame::report_to_json(result);
    if (random_states > 0) report.results["instance"] = raw;
    report.trace = trace_rows(result.trace);
    if (options.epsilon && result.gap > *options.epsilon) {
      report.warnings.push_back("requested duality gap not reached");
      exit_code = 4;
    }
  } else if (pure->parsed()) {
    common = &pure_args;
    auto loaded = load(pure_args);
    const auto spec = pick_spec(pure_kind, loaded.doc);
    entgame::SolveOptions options;
    options.w0 = parse_weights(pure_w0, loaded.doc.family.size());
    const auto result = entgame::pure_nash_check(spec, loaded.doc.family,
                                                 loaded.doc.pi, pure_tol,
                                                 pure_iters, options);
    report.command = "pure-nash";
    report.flags = {{"divergence", spec.name()},
                    {"value_tol", pure_tol},
                    {"iters", pure_iters},
                    {"w0", pure_w0}};
    report.inputs_digest = entgame::inputs_digest(loaded.raw);
    ordered_json self = ordered_json::array();
    for (double d : result.self_distances) self.push_back(d);
    report.results = {{"exists", result.exists},
                      {"v_upper", result.v_upper},
                      {"v_lower", result.v_lower},
                      {"self_distances", self},
                      {"maximizers", result.maximizers}};
    if (result.saddle) {
      report.results["saddle"] = {
          {"member", result.saddle->second},
          {"center", entgame::matrix_to_json(result.saddle->first)}};
    }
  } else if (oracle->parsed()) {
    common = &oracle_args;
    auto loaded = load(oracle_args);
    const auto spec = pick_spec(oracle_kind, loaded.doc);
    report.inputs_digest = entgame::inputs_digest(loaded.raw);
    for (CLI::App* sub : {oracle_dual, oracle_edge}) {
      if (sub->parsed()) {
        option_default(sub, "--resolution", loaded.doc.options, "resolution",
                       &resolution);
      }
    }
    if (oracle_dual->parsed()) {
      const auto [weights, value] = entgame::oracle_dual_max(
          spec, loaded.doc.family, loaded.doc.pi, {resolution, std::nullopt});
      report.command = "oracle dual";
      report.flags = {{"divergence", spec.name()}, {"resolution", resolution}};
      report.results = {{"weights", weights.values()}, {"value", value}};
    } else if (oracle_edge->parsed()) {
      const auto w = parse_weights(oracle_weights, loaded.doc.family.size());
      const auto scanned = entgame::oracle_edge_scan(
          spec, loaded.doc.family, loaded.doc.pi, w, {resolution, std::nullopt});
      const auto plateaus = entgame::oracle_edge_scan_plateaus(
          spec, loaded.doc.family, loaded.doc.pi, w, {resolution, std::nullopt});
      report.command = "oracle edge";
      report.flags = {{"divergence", spec.name()},
                      {"resolution", resolution},
                      {"weights", w.values()}};
      ordered_json rows = ordered_json::array();
      for (const auto& p : plateaus) {
        rows.push_back({{"x", p.x}, {"y", p.y}, {"lo", p.lo}, {"hi", p.hi}});
      }
      report.results = {{"centroid", entgame::matrix_to_json(scanned)},
                        {"plateaus", rows}};
    } else {
      const auto [v_lower, per_index] =
          entgame::oracle_pure_values(spec, loaded.doc.family, loaded.doc.pi);
      report.command = "oracle pure";
      report.flags = {{"divergence", spec.name()}};
      report.results = {{"v_lower", v_lower}, {"per_index", per_index}};
    }
  } else if (probe->parsed()) {
    common = &probe_args;
    auto loaded = load(probe_args);
    const auto spec = pick_spec(probe_kind, loaded.doc);
    const auto t_list = parse_iteration_list(t_list_text);
    const auto rates = entgame::tv_centroid_convergence_probe(
        spec, loaded.doc.family, loaded.doc.pi, t_list, t_ref);
    report.command = "probe-rate";
    report.flags = {{"divergence", spec.name()},
                    {"t_list", t_list},
                    {"t_ref", t_ref}};
    report.inputs_digest = entgame::inputs_digest(loaded.raw);
    ordered_json rows = ordered_json::array();
    for (const auto& [t, d] : rates) rows.push_back({t, d});
    report.results = {{"rates", rows}};
    // Gap table of the longest horizon, for external plotting.
    const std::int64_t max_t = *std::max_element(t_list.begin(), t_list.end());
    entgame::SolveOptions options;
    options.trace_every = std::max<std::int64_t>(1, max_t / 100);
    const auto run = entgame::solve_game(spec, loaded.doc.family,
                                         loaded.doc.pi, max_t, options);
    report.trace = trace_rows(run.trace);
  }

  emit(report, *common);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const entgame::ParseError& e) {
    std::cerr << json{{"error", {{"type", "parse"}, {"message", e.what()}}}}
              << "\n";
    return 2;
  } catch (const entgame::ConvergenceError& e) {
    std::cerr << json{{"error",
                       {{"type", "convergence"}, {"message", e.what()}}}}
              << "\n";
    return 4;
  } catch (const entgame::Error& e) {
    std::cerr << json{{"error", {{"type", "domain"}, {"message", e.what()}}}}
              << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"type", "internal"}, {"message", e.what()}}}}
              << "\n";
    return 3;
  }
}
