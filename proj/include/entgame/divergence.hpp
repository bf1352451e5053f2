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

#ifndef ENTGAME_DIVERGENCE_HPP_
#define ENTGAME_DIVERGENCE_HPP_

#include <string>

#include "entgame/generator.hpp"

namespace entgame {

enum class DivergenceKind {
  kAlpha,            // f(t) = (t^a - a*t - (1-a)) / (a(a-1)), a not in {0,1}
  kKl,               // f(t) = t ln t - t + 1
  kReverseKl,        // f(t) = t - ln t - 1   (conjugate of kKl)
  kSquaredHellinger, // f(t) = (sqrt(t) - 1)^2
  kTotalVariation,   // f(t) = scale * |t - 1|, scale in {1, 1/2}
};

// A convex f with f(1) = 0 together with the derived quantities the library
// needs: values of f, its right derivative, the value at 0 and the slope at
// infinity (extended reals are carried as IEEE infinities).
//
// Divergence values D_f are nonnegative and may be +infinity when absolute
// continuity of off-diagonal supports fails.
class DivergenceSpec {
 public:
  static DivergenceSpec alpha(double a);
  static DivergenceSpec kl() { return DivergenceSpec(DivergenceKind::kKl); }
  static DivergenceSpec reverse_kl() {
    return DivergenceSpec(DivergenceKind::kReverseKl);
  }
  static DivergenceSpec squared_hellinger() {
    return DivergenceSpec(DivergenceKind::kSquaredHellinger);
  }
  static DivergenceSpec total_variation(double scale = 0.5);
  static DivergenceSpec chi_squared() { return alpha(2.0); }

  // CLI names: alpha:<value>, kl, rkl, hellinger2, tv, tv-half, chi2.
  static DivergenceSpec parse(const std::string& name);
  std::string name() const;

  DivergenceKind kind() const { return kind_; }
  double alpha_value() const { return alpha_; }
  double tv_scale() const { return tv_scale_; }
  bool strictly_convex() const {
    return kind_ != DivergenceKind::kTotalVariation;
  }

  // f(t) for t >= 0; throws NegativeArgumentError for t < 0. May be +inf.
  double eval_f(double t) const;
  // Right derivative of f, defined on [0, inf); may be -infinity at 0.
  double f_right_derivative(double t) const;
  double f_at_zero() const;
  // lim_{t->inf} f(t)/t; the weight of mass placed where the second argument
  // vanishes. May be +infinity.
  double slope_at_infinity() const;

  // f*(t) = t f(1/t). Swaps the divergence's arguments.
  DivergenceSpec conjugate() const;

  // True for the kinds whose projections and centroids have a closed form
  // (the alpha family and its limits).
  bool has_closed_form() const {
    return kind_ != DivergenceKind::kTotalVariation;
  }
  // Power-mean order of the f-projection: 1 - alpha for the alpha family
  // (0 for KL, 1 for reverse KL, 1/2 for squared Hellinger) and -infinity
  // for total variation, whose canonical projection is the entrywise min.
  double projection_order() const;

 private:
  explicit DivergenceSpec(DivergenceKind kind, double alpha = 0.0,
                          double tv_scale = 0.0)
      : kind_(kind), alpha_(alpha), tv_scale_(tv_scale) {}

  DivergenceKind kind_;
  double alpha_;
  double tv_scale_;
};

// D_f(M || L) = sum_x pi(x) sum_{y != x} L(x,y) f(M(x,y)/L(x,y)).
// Terms with L(x,y) = 0 contribute 0 when M(x,y) = 0 and
// M(x,y) * slope_at_infinity otherwise, so the result may be +infinity.
double divergence(const DivergenceSpec& spec, const Generator& m,
                  const Generator& l, const Distribution& pi);

// |D_f(M||L) - D_{f*}(L||M)|; the two must agree. Throws
// InfiniteDivergenceError unless both sides are finite.
double conjugate_duality_check(const DivergenceSpec& spec, const Generator& m,
                               const Generator& l, const Distribution& pi);

}  // namespace entgame

#endif  // ENTGAME_DIVERGENCE_HPP_
