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

#ifndef ENTGAME_CENTROID_HPP_
#define ENTGAME_CENTROID_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "entgame/divergence.hpp"
#include "entgame/generator.hpp"

namespace entgame {

// Point of the probability simplex; doubles as the finite-support prior /
// mixed strategy of the probabilist.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w,
                        double tol = kDefaultValidationTol);
  static WeightVector uniform(int n);
  static WeightVector unit(int n, int i);

  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_[static_cast<size_t>(i)]; }
  const std::vector<double>& values() const { return w_; }

 private:
  std::vector<double> w_;
};

// A weighted information centroid together with its per-member divergences.
// flat_interval is populated when f is not strictly convex and some edge
// minimizer is a whole interval (total variation): its endpoints are the
// entrywise lower/upper argmin generators and the reported centroid is the
// midpoint.
struct CentroidResult {
  Generator centroid;
  std::vector<double> per_member_divergence;
  std::optional<std::pair<Generator, Generator>> flat_interval;
};

struct GenericCentroidOptions {
  double tolerance = 1e-12;  // relative, on the per-edge scalar minimizer
  int max_iterations = 200;
};

// The f-projection of L onto the pi-reversible generators: the P_{1-alpha}
// reversiblization for the alpha family (P_0 for KL, P_1 for reverse KL,
// P_{1/2} for squared Hellinger) and the entrywise min P_{-inf} as the
// canonical representative for total variation.
Generator f_projection(const DivergenceSpec& spec, const Generator& l,
                       const Distribution& pi);

// Same, as a CentroidResult; for total variation the flat interval
// [P_{-inf}, P_{+inf}] is reported and the centroid is its midpoint.
CentroidResult f_projection_result(const DivergenceSpec& spec,
                                   const Generator& l, const Distribution& pi);

// Closed-form weighted centroid: entrywise weighted power mean of order
// 1 - alpha of the per-member projections (geometric mean with 0^w := 0 for
// KL, arithmetic mean for reverse KL). Requires a closed-form kind; weights
// must put positive mass on at least one nonzero member.
CentroidResult weighted_centroid_closed(const DivergenceSpec& spec,
                                        const GeneratorFamily& family,
                                        const Distribution& pi,
                                        const WeightVector& w);

// Generic weighted centroid: per unordered state pair, minimizes
//   Phi(a) = sum_i w_i [beta_i f(a/beta_i) + beta'_i f(a/beta'_i)],
// with beta_i = pi(x)L_i(x,y) and beta'_i = pi(y)L_i(y,x), by sign bisection
// on the right derivative of Phi; the centroid entries are a*/pi(x) and
// a*/pi(y). Works for every supported f including total variation.
CentroidResult weighted_centroid_generic(
    const DivergenceSpec& spec, const GeneratorFamily& family,
    const Distribution& pi, const WeightVector& w,
    const GenericCentroidOptions& options = {});

// Dispatch: closed form when available, generic otherwise.
CentroidResult weighted_centroid(const DivergenceSpec& spec,
                                 const GeneratorFamily& family,
                                 const Distribution& pi, const WeightVector& w);

// |D_f(M||L) - D_f(M^f||L) - D_f(M||M^f)| for the alpha family, where
// M^f = f_projection(L). Zero in exact arithmetic for reversible M.
double pythagorean_residual(const DivergenceSpec& spec, const Generator& m,
                            const Generator& l, const Distribution& pi);

namespace detail {

// Per unordered pair and member: weight and the two pi-weighted rates.
struct EdgeTerm {
  double w;
  double beta;
  double beta_rev;
};

struct EdgeMinimum {
  double a;      // canonical minimizer (midpoint when flat)
  double lo;     // argmin interval endpoints
  double hi;
  bool flat;
};

// Minimizer of Phi over a >= 0 for one unordered pair. Terms must all carry
// positive weight.
EdgeMinimum minimize_edge_objective(const DivergenceSpec& spec,
                                    const std::vector<EdgeTerm>& terms,
                                    const GenericCentroidOptions& options);

// Right derivative of Phi at a (may be -infinity at a = 0).
double edge_objective_right_derivative(const DivergenceSpec& spec,
                                       const std::vector<EdgeTerm>& terms,
                                       double a);

// Value of Phi at a (may be +infinity).
double edge_objective_value(const DivergenceSpec& spec,
                            const std::vector<EdgeTerm>& terms, double a);

// Projections M^f(L_i, pi) for a closed-form spec, in family order.
std::vector<Generator> closed_projections(const DivergenceSpec& spec,
                                          const GeneratorFamily& family,
                                          const Distribution& pi);

// Closed-form centroid from precomputed projections.
CentroidResult closed_from_projections(const DivergenceSpec& spec,
                                       const std::vector<Generator>& proj,
                                       const GeneratorFamily& family,
                                       const Distribution& pi,
                                       const WeightVector& w);

// Throws DegenerateFamilyError unless some nonzero member has positive
// weight.
void require_nondegenerate(const GeneratorFamily& family,
                           const WeightVector& w);

}  // namespace detail

}  // namespace entgame

#endif  // ENTGAME_CENTROID_HPP_
