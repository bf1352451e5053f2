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

#ifndef ENTGAME_ORACLE_HPP_
#define ENTGAME_ORACLE_HPP_

#include <utility>
#include <vector>

#include "entgame/solver.hpp"

namespace entgame {

// Brute-force verifiers. These deliberately avoid the production solve
// paths: the dual oracle enumerates the simplex, the edge oracle scans the
// per-pair objective by value rather than by derivative.

struct GridSpec {
  double resolution = 1e-3;
  // Optional scan bracket for the edge oracle, in units of pi(x)M(x,y).
  std::optional<std::pair<double, double>> bounds;
};

// Exhaustive barycentric grid over the simplex; returns the best weight
// vector and dual value found (first hit wins ties). Capped at n <= 3.
std::pair<WeightVector, double> oracle_dual_max(const DivergenceSpec& spec,
                                                const GeneratorFamily& family,
                                                const Distribution& pi,
                                                const GridSpec& grid);

// Dense one-dimensional scan of the per-pair objective; returns the grid
// argmin assembled into a generator (leftmost point of the plateau on ties).
Generator oracle_edge_scan(const DivergenceSpec& spec,
                           const GeneratorFamily& family,
                           const Distribution& pi, const WeightVector& w,
                           const GridSpec& grid);

// Same scan, reporting the argmin plateau per unordered pair (x < y, in row
// order) in units of a = pi(x)M(x,y).
struct EdgePlateau {
  int x;
  int y;
  double lo;
  double hi;
};
std::vector<EdgePlateau> oracle_edge_scan_plateaus(
    const DivergenceSpec& spec, const GeneratorFamily& family,
    const Distribution& pi, const WeightVector& w, const GridSpec& grid);

// Per-member self-distances D_f(M^f(L_i) || L_i) through the closed-form
// projection, and their maximum (the maximin value over the family).
// Requires a strictly convex f.
std::pair<double, std::vector<double>> oracle_pure_values(
    const DivergenceSpec& spec, const GeneratorFamily& family,
    const Distribution& pi);

}  // namespace entgame

#endif  // ENTGAME_ORACLE_HPP_
