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

#ifndef ENTGAME_SOLVER_HPP_
#define ENTGAME_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "entgame/centroid.hpp"

namespace entgame {

// Euclidean projection onto the probability simplex, by the sort-and-
// threshold rule.
WeightVector simplex_project(const std::vector<double>& v);

// The dual objective at a fixed weight vector: the weighted centroid, the
// weighted average of its per-member divergences (dual), their maximum
// (primal) and the duality gap primal - dual >= 0. Members with zero weight
// do not contribute to the dual even when their divergence is infinite.
struct DualObjectiveState {
  WeightVector weights;
  CentroidResult centroid;
  double dual_value;
  double primal_value;
  double gap;
};

// Repeated dual evaluations over one (spec, family, pi) triple; caches the
// per-member projections so the closed-form centroid is cheap per call.
class DualEvaluator {
 public:
  DualEvaluator(DivergenceSpec spec, GeneratorFamily family, Distribution pi,
                GenericCentroidOptions options = {});

  DualObjectiveState evaluate(const WeightVector& w) const;

  const GeneratorFamily& family() const { return family_; }
  const Distribution& pi() const { return pi_; }
  const DivergenceSpec& spec() const { return spec_; }

 private:
  DivergenceSpec spec_;
  GeneratorFamily family_;
  Distribution pi_;
  GenericCentroidOptions options_;
  std::vector<Generator> projections_;  // empty for the generic path
};

DualObjectiveState dual_objective(const DivergenceSpec& spec,
                                  const GeneratorFamily& family,
                                  const Distribution& pi,
                                  const WeightVector& w);

// Subgradient of h(w) = -sum_i w_i D_f(centroid(w) || L_i) at v:
//   g_i = D_f(centroid(v) || L_ref) - D_f(centroid(v) || L_i).
// Any reference index works; the default is the last member.
std::vector<double> subgradient(const DivergenceSpec& spec,
                                const GeneratorFamily& family,
                                const Distribution& pi, const WeightVector& v,
                                int ref_index = -1);

// Empirical stand-in for the theoretical bound on ||g||^2:
//   B = safety * n * (max_i D_f(centroid(w0) || L_i))^2.
// The solve loop doubles it (and rederives the auto stepsize) whenever an
// observed ||g||^2 exceeds it.
double estimate_B(const DivergenceSpec& spec, const GeneratorFamily& family,
                  const Distribution& pi, const WeightVector& w0,
                  double safety = 4.0);

struct SolveOptions {
  std::optional<double> eta;       // constant stepsize; sqrt(n/(tB)) if absent
  std::optional<WeightVector> w0;  // uniform if absent
  std::optional<double> epsilon;   // early stop once the recorded gap <= this
  std::int64_t trace_every = 1;    // 0 records only the first and last rows
  int ref_index = -1;              // subgradient reference member; -1 = last
  double safety = 4.0;
  GenericCentroidOptions centroid_options = {};
};

// One recorded row: the dual state at the iterate w^(i) and at the running
// average of the iterates up to i. Row 0 is the starting point, where the
// two coincide.
struct TraceRow {
  std::int64_t iteration;
  double dual_value;
  double primal_value;
  double gap;
  double avg_dual_value;
  double avg_primal_value;
  double avg_gap;
};

struct EquilibriumReport {
  WeightVector weights_avg;           // average iterate
  Generator centroid;                 // weighted centroid at weights_avg
  double value;                       // dual value at weights_avg
  double chebyshev_radius;            // primal value at weights_avg
  double gap;                         // chebyshev_radius - value
  double best_dual;                   // largest recorded dual value
  double best_gap;                    // smallest recorded duality gap
  std::vector<double> per_member_divergence;
  std::vector<double> slackness;      // divergence minus radius, per member
  std::int64_t iterations;
  std::vector<TraceRow> trace;
  double stepsize;
  double B_estimate;
  int b_doublings;
  std::optional<std::pair<Generator, Generator>> flat_interval;
};

// Projected subgradient iteration on the dual: t steps of
//   v = w - eta * g(w);  w = simplex_project(v),
// reported at the averaged iterate. Throws NonFiniteIterateError if a
// divergence turns infinite mid-run.
EquilibriumReport solve_game(const DivergenceSpec& spec,
                             const GeneratorFamily& family,
                             const Distribution& pi, std::int64_t t,
                             const SolveOptions& options = {});

// Checks h(average iterate) - h_star <= n/(2 eta t) + eta B / 2 (+1e-9),
// where h_star is a certified lower bound on the minimum of h.
bool regret_check(const EquilibriumReport& report, double b, double eta, int n,
                  std::int64_t t, double h_star);

struct PureNashResult {
  bool exists;
  std::optional<std::pair<Generator, int>> saddle;  // (center, member index)
  std::vector<int> maximizers;  // argmax set of the per-member self-distances
  double v_upper;               // minimax estimate (primal at the solved run)
  double v_lower;               // maximin value max_i D_f(M^f(L_i)||L_i)
  std::vector<double> self_distances;
};

// A pure-strategy equilibrium exists iff the minimax and maximin values
// agree; both sides are computed numerically, so the comparison uses tol.
// Requires a strictly convex f.
PureNashResult pure_nash_check(const DivergenceSpec& spec,
                               const GeneratorFamily& family,
                               const Distribution& pi, double tol = 1e-6,
                               std::int64_t iterations = 10000,
                               const SolveOptions& options = {});

// The primal value of a converged run; throws NotConvergedError when the
// report's duality gap exceeds max_gap.
double chebyshev_radius(const EquilibriumReport& report,
                        double max_gap = 1e-6);

// For families of the form P_i - I with zero-diagonal transition matrices
// P_i: runs solve_game for each t and returns the total variation distance
// between the centroid at the averaged iterate and the centroid of a long
// reference run (t_ref is raised to 100 * max(t_list) if smaller). Used for
// convergence-rate fitting.
std::vector<std::pair<std::int64_t, double>> tv_centroid_convergence_probe(
    const DivergenceSpec& spec, const GeneratorFamily& family,
    const Distribution& pi, const std::vector<std::int64_t>& t_list,
    std::int64_t t_ref = 0, const SolveOptions& options = {});

}  // namespace entgame

#endif  // ENTGAME_SOLVER_HPP_
