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

#include "entgame/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(const std::vector<double>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

double max_of(const std::vector<double>& values) {
  return *std::max_element(values.begin(), values.end());
}

}  // namespace

WeightVector simplex_project(const std::vector<double>& v) {
  if (v.empty()) throw EmptyInputError();
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (int j = 1; j <= n; ++j) {
    cumulative += u[static_cast<size_t>(j - 1)];
    if (u[static_cast<size_t>(j - 1)] + (1.0 - cumulative) / j > 0.0) {
      theta = (cumulative - 1.0) / j;
    }
  }
  std::vector<double> w(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = std::max(v[i] - theta, 0.0);
  }
  return WeightVector(std::move(w), 1e-9);
}

DualEvaluator::DualEvaluator(DivergenceSpec spec, GeneratorFamily family,
                             Distribution pi, GenericCentroidOptions options)
    : spec_(std::move(spec)),
      family_(std::move(family)),
      pi_(std::move(pi)),
      options_(options) {
  if (family_.dim() != pi_.dim()) throw DimensionMismatchError();
  if (spec_.has_closed_form()) {
    projections_ = detail::closed_projections(spec_, family_, pi_);
  }
}

DualObjectiveState DualEvaluator::evaluate(const WeightVector& w) const {
  CentroidResult centroid =
      spec_.has_closed_form()
          ? detail::closed_from_projections(spec_, projections_, family_, pi_,
                                            w)
          : weighted_centroid_generic(spec_, family_, pi_, w, options_);
  double dual = 0.0;
  double primal = -kInf;
  for (int i = 0; i < family_.size(); ++i) {
    const double d = centroid.per_member_divergence[static_cast<size_t>(i)];
    if (w[i] > 0.0) dual += w[i] * d;
    primal = std::max(primal, d);
  }
  const double gap = std::isinf(primal) ? kInf : primal - dual;
  return DualObjectiveState{w, std::move(centroid), dual, primal, gap};
}

DualObjectiveState dual_objective(const DivergenceSpec& spec,
                                  const GeneratorFamily& family,
                                  const Distribution& pi,
                                  const WeightVector& w) {
  return DualEvaluator(spec, family, pi).evaluate(w);
}

std::vector<double> subgradient(const DivergenceSpec& spec,
                                const GeneratorFamily& family,
                                const Distribution& pi, const WeightVector& v,
                                int ref_index) {
  const int n = family.size();
  const int ref = ref_index < 0 ? n - 1 : ref_index;
  if (ref < 0 || ref >= n) throw Error("reference index out of range");
  const auto state = dual_objective(spec, family, pi, v);
  const auto& d = state.centroid.per_member_divergence;
  if (!all_finite(d)) throw InfiniteDivergenceError();
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<size_t>(i)] = d[static_cast<size_t>(ref)] -
                                d[static_cast<size_t>(i)];
  }
  return g;
}

double estimate_B(const DivergenceSpec& spec, const GeneratorFamily& family,
                  const Distribution& pi, const WeightVector& w0,
                  double safety) {
  const auto state = dual_objective(spec, family, pi, w0);
  const auto& d = state.centroid.per_member_divergence;
  if (!all_finite(d)) throw InfiniteDivergenceError();
  const double worst = max_of(d);
  return safety * family.size() * worst * worst;
}

namespace {

EquilibriumReport assemble_report(const WeightVector& weights_avg,
                                  DualObjectiveState state,
                                  std::int64_t iterations,
                                  std::vector<TraceRow> trace, double eta,
                                  double b, int doublings) {
  const int n = static_cast<int>(state.centroid.per_member_divergence.size());
  std::vector<double> slackness(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    slackness[static_cast<size_t>(i)] =
        state.centroid.per_member_divergence[static_cast<size_t>(i)] -
        state.primal_value;
  }
  double best_dual = state.dual_value;
  double best_gap = state.gap;
  for (const auto& row : trace) {
    best_dual = std::max({best_dual, row.dual_value, row.avg_dual_value});
    best_gap = std::min({best_gap, row.gap, row.avg_gap});
  }
  return EquilibriumReport{weights_avg,
                           std::move(state.centroid.centroid),
                           state.dual_value,
                           state.primal_value,
                           state.gap,
                           best_dual,
                           best_gap,
                           std::move(state.centroid.per_member_divergence),
                           std::move(slackness),
                           iterations,
                           std::move(trace),
                           eta,
                           b,
                           doublings,
                           std::move(state.centroid.flat_interval)};
}

}  // namespace

EquilibriumReport solve_game(const DivergenceSpec& spec,
                             const GeneratorFamily& family,
                             const Distribution& pi, std::int64_t t,
                             const SolveOptions& options) {
  if (t < 1) throw Error("iteration count must be at least 1");
  const int n = family.size();
  WeightVector w = options.w0.value_or(WeightVector::uniform(n));
  if (w.size() != n) {
    throw DimensionMismatchError("w0 length differs from family size");
  }
  const int ref = options.ref_index < 0 ? n - 1 : options.ref_index;
  if (ref < 0 || ref >= n) throw Error("reference index out of range");

  const DualEvaluator eval(spec, family, pi, options.centroid_options);
  DualObjectiveState state = eval.evaluate(w);
  if (!all_finite(state.centroid.per_member_divergence)) {
    throw InfiniteDivergenceError();
  }
  const double worst = max_of(state.centroid.per_member_divergence);
  double b = options.safety * n * worst * worst;

  std::vector<TraceRow> trace;
  trace.push_back({0, state.dual_value, state.primal_value, state.gap,
                   state.dual_value, state.primal_value, state.gap});

  // Single strategy, or all divergences zero: nothing to iterate on.
  if (n == 1 || b == 0.0) {
    return assemble_report(w, std::move(state), 0, std::move(trace),
                           options.eta.value_or(0.0), b, 0);
  }

  const bool auto_eta = !options.eta.has_value();
  double eta = auto_eta ? std::sqrt(n / (static_cast<double>(t) * b))
                        : *options.eta;
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error("stepsize must be a positive real");
  }

  std::vector<double> weight_sum(static_cast<size_t>(n), 0.0);
  std::vector<double> g(static_cast<size_t>(n));
  std::vector<double> shifted(static_cast<size_t>(n));
  int doublings = 0;
  std::int64_t done = 0;
  WeightVector weights_avg = w;
  std::optional<DualObjectiveState> avg_state;

  for (std::int64_t i = 1; i <= t; ++i) {
    const auto& d = state.centroid.per_member_divergence;
    double g_norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
      g[static_cast<size_t>(j)] =
          d[static_cast<size_t>(ref)] - d[static_cast<size_t>(j)];
      g_norm2 += g[static_cast<size_t>(j)] * g[static_cast<size_t>(j)];
    }
    while (g_norm2 > b) {
      b *= 2.0;
      ++doublings;
      if (auto_eta) eta = std::sqrt(n / (static_cast<double>(t) * b));
    }
    for (int j = 0; j < n; ++j) {
      shifted[static_cast<size_t>(j)] =
          w[j] - eta * g[static_cast<size_t>(j)];
    }
    w = simplex_project(shifted);
    for (int j = 0; j < n; ++j) weight_sum[static_cast<size_t>(j)] += w[j];
    done = i;

    state = eval.evaluate(w);
    if (!all_finite(state.centroid.per_member_divergence)) {
      throw NonFiniteIterateError();
    }
    const bool record =
        i == t || (options.trace_every > 0 && i % options.trace_every == 0);
    if (record) {
      std::vector<double> avg(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) {
        avg[static_cast<size_t>(j)] =
            weight_sum[static_cast<size_t>(j)] / static_cast<double>(i);
      }
      weights_avg = WeightVector(std::move(avg), 1e-9);
      avg_state = eval.evaluate(weights_avg);
      if (!all_finite(avg_state->centroid.per_member_divergence)) {
        throw NonFiniteIterateError();
      }
      trace.push_back({i, state.dual_value, state.primal_value, state.gap,
                       avg_state->dual_value, avg_state->primal_value,
                       avg_state->gap});
      if (options.epsilon && state.gap <= *options.epsilon) break;
    }
  }

  return assemble_report(weights_avg, std::move(*avg_state), done,
                         std::move(trace), eta, b, doublings);
}

bool regret_check(const EquilibriumReport& report, double b, double eta, int n,
                  std::int64_t t, double h_star) {
  const double h_avg = -report.value;
  const double bound =
      n / (2.0 * eta * static_cast<double>(t)) + eta * b / 2.0;
  return h_avg - h_star <= bound + 1e-9;
}

PureNashResult pure_nash_check(const DivergenceSpec& spec,
                               const GeneratorFamily& family,
                               const Distribution& pi, double tol,
                               std::int64_t iterations,
                               const SolveOptions& options) {
  if (!spec.strictly_convex()) {
    throw UnsupportedSpecError(
        "the pure-equilibrium characterization requires a strictly convex f");
  }
  const int n = family.size();
  std::vector<double> self_distances(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    self_distances[static_cast<size_t>(i)] =
        divergence(spec, f_projection(spec, family[i], pi), family[i], pi);
  }
  const double v_lower = max_of(self_distances);
  int argmax = 0;
  for (int i = 0; i < n; ++i) {
    if (self_distances[static_cast<size_t>(i)] >
        self_distances[static_cast<size_t>(argmax)]) {
      argmax = i;
    }
  }
  std::vector<int> maximizers;
  for (int i = 0; i < n; ++i) {
    if (self_distances[static_cast<size_t>(i)] >= v_lower - tol) {
      maximizers.push_back(i);
    }
  }

  double v_upper = v_lower;
  if (n > 1) {
    const auto report = solve_game(spec, family, pi, iterations, options);
    v_upper = report.chebyshev_radius;
  }
  const bool exists = v_upper - v_lower <= tol;
  std::optional<std::pair<Generator, int>> saddle;
  if (exists) {
    saddle = std::make_pair(f_projection(spec, family[argmax], pi), argmax);
  }
  return PureNashResult{exists,  std::move(saddle), std::move(maximizers),
                        v_upper, v_lower,           std::move(self_distances)};
}

double chebyshev_radius(const EquilibriumReport& report, double max_gap) {
  if (!(report.gap <= max_gap)) {
    throw NotConvergedError(report.gap, max_gap);
  }
  return report.chebyshev_radius;
}

std::vector<std::pair<std::int64_t, double>> tv_centroid_convergence_probe(
    const DivergenceSpec& spec, const GeneratorFamily& family,
    const Distribution& pi, const std::vector<std::int64_t>& t_list,
    std::int64_t t_ref, const SolveOptions& options) {
  if (!spec.strictly_convex()) {
    throw UnsupportedSpecError("the centroid convergence rate requires a "
                               "strictly convex f");
  }
  if (t_list.empty()) throw EmptyInputError();
  const int dim = family.dim();
  for (int i = 0; i < family.size(); ++i) {
    for (int x = 0; x < dim; ++x) {
      double off = 0.0;
      for (int y = 0; y < dim; ++y) {
        if (y == x) continue;
        if (family[i](x, y) > 1.0 + 1e-9) throw ClassViolationError(i);
        off += family[i](x, y);
      }
      if (std::abs(off - 1.0) > 1e-9) throw ClassViolationError(i);
    }
  }

  const std::int64_t max_t =
      *std::max_element(t_list.begin(), t_list.end());
  const std::int64_t reference_t = std::max<std::int64_t>(t_ref, 100 * max_t);
  SolveOptions ref_options = options;
  ref_options.trace_every = std::max<std::int64_t>(1, reference_t / 100);
  const auto reference = solve_game(spec, family, pi, reference_t, ref_options);

  const auto tv = DivergenceSpec::total_variation(0.5);
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(t_list.size());
  for (std::int64_t t : t_list) {
    SolveOptions run_options = options;
    run_options.trace_every = std::max<std::int64_t>(1, t / 100);
    const auto run = solve_game(spec, family, pi, t, run_options);
    out.emplace_back(t, divergence(tv, run.centroid, reference.centroid, pi));
  }
  return out;
}

}  // namespace entgame
