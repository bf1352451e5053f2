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

#include "entgame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entgame {

namespace {

constexpr int kOracleMemberCap = 3;

long long grid_steps(const GridSpec& grid) {
  if (!(grid.resolution > 0.0)) {
    throw Error("grid resolution must be strictly positive");
  }
  return std::max(1LL, std::llround(1.0 / grid.resolution));
}

}  // namespace

std::pair<WeightVector, double> oracle_dual_max(const DivergenceSpec& spec,
                                                const GeneratorFamily& family,
                                                const Distribution& pi,
                                                const GridSpec& grid) {
  const int n = family.size();
  if (n > kOracleMemberCap) throw TooManyMembersError(n, kOracleMemberCap);
  const DualEvaluator eval(spec, family, pi);
  const long long k = grid_steps(grid);

  std::optional<WeightVector> best;
  double best_value = -std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<double> w) {
    WeightVector weights(std::move(w), 1e-9);
    const double value = eval.evaluate(weights).dual_value;
    if (value > best_value) {
      best_value = value;
      best = std::move(weights);
    }
  };

  if (n == 1) {
    consider({1.0});
  } else if (n == 2) {
    for (long long i = 0; i <= k; ++i) {
      const double w0 = static_cast<double>(i) / static_cast<double>(k);
      consider({w0, 1.0 - w0});
    }
  } else {
    for (long long i = 0; i <= k; ++i) {
      for (long long j = 0; j + i <= k; ++j) {
        const double w0 = static_cast<double>(i) / static_cast<double>(k);
        const double w1 = static_cast<double>(j) / static_cast<double>(k);
        consider({w0, w1, std::max(0.0, 1.0 - w0 - w1)});
      }
    }
  }
  return {std::move(*best), best_value};
}

namespace {

struct EdgeScan {
  double argmin;
  double plateau_lo;
  double plateau_hi;
};

EdgeScan scan_edge(const DivergenceSpec& spec,
                   const std::vector<detail::EdgeTerm>& terms,
                   const GridSpec& grid) {
  double lo = 0.0;
  double hi = 0.0;
  if (grid.bounds) {
    lo = grid.bounds->first;
    hi = grid.bounds->second;
  } else {
    for (const auto& term : terms) {
      hi = std::max(hi, std::max(term.beta, term.beta_rev));
    }
  }
  const double step = grid.resolution;
  const long long count =
      static_cast<long long>(std::floor((hi - lo) / step)) + 1;

  double best_value = std::numeric_limits<double>::infinity();
  double best_a = lo;
  // Value-based scan: first strict improvement wins.
  std::vector<double> values(static_cast<size_t>(count) + 1);
  for (long long i = 0; i <= count; ++i) {
    const double a = std::min(lo + static_cast<double>(i) * step, hi);
    const double value = detail::edge_objective_value(spec, terms, a);
    values[static_cast<size_t>(i)] = value;
    if (value < best_value) {
      best_value = value;
      best_a = a;
    }
  }
  // The objective is convex, so the near-minimal points form a plateau.
  const double slack = 1e-12 * (1.0 + std::abs(best_value));
  double plateau_lo = best_a;
  double plateau_hi = best_a;
  for (long long i = 0; i <= count; ++i) {
    if (values[static_cast<size_t>(i)] <= best_value + slack) {
      const double a = std::min(lo + static_cast<double>(i) * step, hi);
      plateau_lo = std::min(plateau_lo, a);
      plateau_hi = std::max(plateau_hi, a);
    }
  }
  return {best_a, plateau_lo, plateau_hi};
}

std::vector<detail::EdgeTerm> edge_terms(const GeneratorFamily& family,
                                         const Distribution& pi,
                                         const WeightVector& w, int x, int y) {
  std::vector<detail::EdgeTerm> terms;
  for (int i = 0; i < family.size(); ++i) {
    if (w[i] > 0.0) {
      terms.push_back({w[i], pi(x) * family[i](x, y), pi(y) * family[i](y, x)});
    }
  }
  return terms;
}

}  // namespace

Generator oracle_edge_scan(const DivergenceSpec& spec,
                           const GeneratorFamily& family,
                           const Distribution& pi, const WeightVector& w,
                           const GridSpec& grid) {
  if (family.dim() != pi.dim()) throw DimensionMismatchError();
  detail::require_nondegenerate(family, w);
  const int dim = family.dim();
  GeneratorBuilder builder(dim);
  for (int x = 0; x < dim; ++x) {
    for (int y = x + 1; y < dim; ++y) {
      const auto scan = scan_edge(spec, edge_terms(family, pi, w, x, y), grid);
      builder.set(x, y, scan.argmin / pi(x));
      builder.set(y, x, scan.argmin / pi(y));
    }
  }
  return std::move(builder).build();
}

std::vector<EdgePlateau> oracle_edge_scan_plateaus(
    const DivergenceSpec& spec, const GeneratorFamily& family,
    const Distribution& pi, const WeightVector& w, const GridSpec& grid) {
  if (family.dim() != pi.dim()) throw DimensionMismatchError();
  detail::require_nondegenerate(family, w);
  const int dim = family.dim();
  std::vector<EdgePlateau> out;
  for (int x = 0; x < dim; ++x) {
    for (int y = x + 1; y < dim; ++y) {
      const auto scan = scan_edge(spec, edge_terms(family, pi, w, x, y), grid);
      out.push_back({x, y, scan.plateau_lo, scan.plateau_hi});
    }
  }
  return out;
}

std::pair<double, std::vector<double>> oracle_pure_values(
    const DivergenceSpec& spec, const GeneratorFamily& family,
    const Distribution& pi) {
  if (!spec.strictly_convex()) {
    throw UnsupportedSpecError(
        "pure values are defined through the unique f-projection");
  }
  std::vector<double> per_index(static_cast<size_t>(family.size()));
  for (int i = 0; i < family.size(); ++i) {
    per_index[static_cast<size_t>(i)] =
        divergence(spec, f_projection(spec, family[i], pi), family[i], pi);
  }
  const double v = *std::max_element(per_index.begin(), per_index.end());
  return {v, std::move(per_index)};
}

}  // namespace entgame
