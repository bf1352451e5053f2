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

#include "entgame/centroid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entgame {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

WeightVector::WeightVector(std::vector<double> w, double tol)
    : w_(std::move(w)) {
  if (w_.empty()) throw EmptyInputError();
  double sum = 0.0;
  for (size_t i = 0; i < w_.size(); ++i) {
    if (!(w_[i] >= 0.0) || !std::isfinite(w_[i])) {
      throw Error("weight " + std::to_string(i) + " must be nonnegative");
    }
    sum += w_[i];
  }
  if (std::abs(sum - 1.0) > tol) {
    throw Error("weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

WeightVector WeightVector::uniform(int n) {
  if (n < 1) throw EmptyInputError();
  return WeightVector(std::vector<double>(static_cast<size_t>(n), 1.0 / n),
                      1e-9);
}

WeightVector WeightVector::unit(int n, int i) {
  if (n < 1) throw EmptyInputError();
  if (i < 0 || i >= n) throw Error("unit index out of range");
  std::vector<double> w(static_cast<size_t>(n), 0.0);
  w[static_cast<size_t>(i)] = 1.0;
  return WeightVector(std::move(w));
}

namespace detail {

void require_nondegenerate(const GeneratorFamily& family,
                           const WeightVector& w) {
  if (w.size() != family.size()) {
    throw DimensionMismatchError("weight count differs from family size");
  }
  double mass = 0.0;
  for (int i = 0; i < family.size(); ++i) {
    if (!family[i].is_zero()) mass += w[i];
  }
  if (mass == 0.0) {
    throw DegenerateFamilyError("no nonzero member carries positive weight");
  }
}

std::vector<Generator> closed_projections(const DivergenceSpec& spec,
                                          const GeneratorFamily& family,
                                          const Distribution& pi) {
  const double p = spec.projection_order();
  std::vector<Generator> proj;
  proj.reserve(static_cast<size_t>(family.size()));
  for (int i = 0; i < family.size(); ++i) {
    proj.push_back(power_mean_reversiblization(family[i], pi, p));
  }
  return proj;
}

namespace {

// Weighted power mean of order q over (weight, value) pairs with positive
// weights summing to one. q = 0 is the weighted geometric mean with
// 0^w := 0; for q < 0 a zero value forces a zero mean (limit of the
// formula).
double weighted_power_mean(const std::vector<std::pair<double, double>>& wm,
                           double q) {
  if (q == 0.0) {
    double s = 0.0;
    for (const auto& [w, m] : wm) {
      if (m == 0.0) return 0.0;
      s += w * std::log(m);
    }
    return std::exp(s);
  }
  if (q < 0.0) {
    double ref = kInf;
    for (const auto& [w, m] : wm) {
      if (m == 0.0) return 0.0;
      ref = std::min(ref, m);
    }
    double s = 0.0;
    for (const auto& [w, m] : wm) s += w * std::pow(m / ref, q);
    return ref * std::pow(s, 1.0 / q);
  }
  double ref = 0.0;
  for (const auto& [w, m] : wm) ref = std::max(ref, m);
  if (ref == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& [w, m] : wm) {
    if (m > 0.0) s += w * std::pow(m / ref, q);
  }
  return ref * std::pow(s, 1.0 / q);
}

}  // namespace

CentroidResult closed_from_projections(const DivergenceSpec& spec,
                                       const std::vector<Generator>& proj,
                                       const GeneratorFamily& family,
                                       const Distribution& pi,
                                       const WeightVector& w) {
  require_nondegenerate(family, w);
  const int dim = family.dim();
  const double q = spec.projection_order();
  GeneratorBuilder builder(dim);
  std::vector<std::pair<double, double>> wm;
  wm.reserve(static_cast<size_t>(family.size()));
  for (int x = 0; x < dim; ++x) {
    for (int y = x + 1; y < dim; ++y) {
      wm.clear();
      for (int i = 0; i < family.size(); ++i) {
        if (w[i] > 0.0) wm.emplace_back(w[i], proj[static_cast<size_t>(i)](x, y));
      }
      const double entry = weighted_power_mean(wm, q);
      builder.set(x, y, entry);
      builder.set(y, x, entry * pi(x) / pi(y));
    }
  }
  Generator centroid = std::move(builder).build();
  std::vector<double> div;
  div.reserve(static_cast<size_t>(family.size()));
  for (int i = 0; i < family.size(); ++i) {
    div.push_back(divergence(spec, centroid, family[i], pi));
  }
  return CentroidResult{std::move(centroid), std::move(div), std::nullopt};
}

double edge_objective_right_derivative(const DivergenceSpec& spec,
                                       const std::vector<EdgeTerm>& terms,
                                       double a) {
  const double slope = spec.slope_at_infinity();
  double s = 0.0;
  for (const auto& term : terms) {
    for (double part : {term.beta, term.beta_rev}) {
      if (part > 0.0) {
        const double d = spec.f_right_derivative(a / part);
        if (std::isinf(d)) return -kInf;  // only possible at a = 0
        s += term.w * d;
      } else {
        s += term.w * slope;  // zero rate: the term is a * slope
      }
    }
  }
  return s;
}

double edge_objective_value(const DivergenceSpec& spec,
                            const std::vector<EdgeTerm>& terms, double a) {
  const double slope = spec.slope_at_infinity();
  double s = 0.0;
  for (const auto& term : terms) {
    for (double part : {term.beta, term.beta_rev}) {
      if (part > 0.0) {
        s += term.w * part * spec.eval_f(a / part);
      } else if (a > 0.0) {
        s += term.w * a * slope;
      }
    }
    if (std::isinf(s)) return kInf;
  }
  return s;
}

EdgeMinimum minimize_edge_objective(const DivergenceSpec& spec,
                                    const std::vector<EdgeTerm>& terms,
                                    const GenericCentroidOptions& options) {
  bool any_positive = false;
  bool any_zero_part = false;
  double scale = 0.0;
  for (const auto& term : terms) {
    if (term.beta > 0.0 || term.beta_rev > 0.0) any_positive = true;
    if (term.beta == 0.0 || term.beta_rev == 0.0) any_zero_part = true;
    scale = std::max(scale, std::max(term.beta, term.beta_rev));
  }
  if (!any_positive) return {0.0, 0.0, 0.0, false};
  // A zero rate with infinite slope makes Phi infinite for every a > 0.
  if (any_zero_part && std::isinf(spec.slope_at_infinity())) {
    return {0.0, 0.0, 0.0, false};
  }

  auto dphi = [&](double a) {
    return edge_objective_right_derivative(spec, terms, a);
  };

  const double d0 = dphi(0.0);
  if (d0 > 0.0) return {0.0, 0.0, 0.0, false};

  double hi = scale + 1.0;
  int doublings = 0;
  while (!(dphi(hi) > 0.0)) {
    hi *= 2.0;
    if (++doublings > options.max_iterations) {
      throw ToleranceNotReachedError(options.max_iterations);
    }
  }

  // Phi' is nondecreasing; bisect for the boundary of a monotone predicate.
  auto bisect = [&](auto&& pred, double lo_in, double hi_in) {
    double lo = lo_in;
    double hi_b = hi_in;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
      if (hi_b - lo <= options.tolerance * (1.0 + hi_b)) break;
      const double mid = 0.5 * (lo + hi_b);
      if (pred(mid)) {
        hi_b = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi_b);
  };

  const double a_left =
      d0 >= 0.0 ? 0.0 : bisect([&](double a) { return dphi(a) >= 0.0; }, 0.0, hi);
  const double a_right = bisect([&](double a) { return dphi(a) > 0.0; }, 0.0, hi);

  const double flat_width = a_right - a_left;
  const bool flat = flat_width > 1e3 * options.tolerance * (1.0 + a_right);
  const double a_star = 0.5 * (a_left + a_right);
  if (!flat) return {a_star, a_star, a_star, false};
  return {a_star, a_left, a_right, true};
}

}  // namespace detail

Generator f_projection(const DivergenceSpec& spec, const Generator& l,
                       const Distribution& pi) {
  return power_mean_reversiblization(l, pi, spec.projection_order());
}

CentroidResult f_projection_result(const DivergenceSpec& spec,
                                   const Generator& l, const Distribution& pi) {
  if (spec.has_closed_form()) {
    Generator centroid = f_projection(spec, l, pi);
    std::vector<double> div{divergence(spec, centroid, l, pi)};
    return CentroidResult{std::move(centroid), std::move(div), std::nullopt};
  }
  return weighted_centroid_generic(
      spec, GeneratorFamily({l}), pi, WeightVector::unit(1, 0));
}

CentroidResult weighted_centroid_closed(const DivergenceSpec& spec,
                                        const GeneratorFamily& family,
                                        const Distribution& pi,
                                        const WeightVector& w) {
  if (!spec.has_closed_form()) {
    throw UnsupportedSpecError(
        "no closed-form centroid for " + spec.name() +
        "; use weighted_centroid_generic");
  }
  if (family.dim() != pi.dim()) throw DimensionMismatchError();
  auto proj = detail::closed_projections(spec, family, pi);
  return detail::closed_from_projections(spec, proj, family, pi, w);
}

CentroidResult weighted_centroid_generic(const DivergenceSpec& spec,
                                         const GeneratorFamily& family,
                                         const Distribution& pi,
                                         const WeightVector& w,
                                         const GenericCentroidOptions& options) {
  if (family.dim() != pi.dim()) throw DimensionMismatchError();
  detail::require_nondegenerate(family, w);
  const int dim = family.dim();
  GeneratorBuilder mid(dim);
  GeneratorBuilder lower(dim);
  GeneratorBuilder upper(dim);
  bool any_flat = false;
  std::vector<detail::EdgeTerm> terms;
  terms.reserve(static_cast<size_t>(family.size()));
  for (int x = 0; x < dim; ++x) {
    for (int y = x + 1; y < dim; ++y) {
      terms.clear();
      for (int i = 0; i < family.size(); ++i) {
        if (w[i] > 0.0) {
          terms.push_back({w[i], pi(x) * family[i](x, y),
                           pi(y) * family[i](y, x)});
        }
      }
      const auto edge = detail::minimize_edge_objective(spec, terms, options);
      any_flat = any_flat || edge.flat;
      mid.set(x, y, edge.a / pi(x));
      mid.set(y, x, edge.a / pi(y));
      lower.set(x, y, edge.lo / pi(x));
      lower.set(y, x, edge.lo / pi(y));
      upper.set(x, y, edge.hi / pi(x));
      upper.set(y, x, edge.hi / pi(y));
    }
  }
  Generator centroid = std::move(mid).build();
  std::vector<double> div;
  div.reserve(static_cast<size_t>(family.size()));
  for (int i = 0; i < family.size(); ++i) {
    div.push_back(divergence(spec, centroid, family[i], pi));
  }
  std::optional<std::pair<Generator, Generator>> flat;
  if (any_flat) {
    flat = std::make_pair(std::move(lower).build(), std::move(upper).build());
  }
  return CentroidResult{std::move(centroid), std::move(div), std::move(flat)};
}

CentroidResult weighted_centroid(const DivergenceSpec& spec,
                                 const GeneratorFamily& family,
                                 const Distribution& pi,
                                 const WeightVector& w) {
  if (spec.has_closed_form()) {
    return weighted_centroid_closed(spec, family, pi, w);
  }
  return weighted_centroid_generic(spec, family, pi, w);
}

double pythagorean_residual(const DivergenceSpec& spec, const Generator& m,
                            const Generator& l, const Distribution& pi) {
  if (spec.kind() != DivergenceKind::kAlpha) {
    throw UnsupportedSpecError("the Pythagorean identity is checked for the "
                               "alpha family only");
  }
  if (!is_reversible(m, pi, 1e-9)) {
    throw Error("the first argument must be pi-reversible");
  }
  const Generator projection = f_projection(spec, l, pi);
  const double whole = divergence(spec, m, l, pi);
  const double leg_a = divergence(spec, projection, l, pi);
  const double leg_b = divergence(spec, m, projection, pi);
  if (std::isinf(whole) || std::isinf(leg_a) || std::isinf(leg_b)) {
    throw InfiniteDivergenceError();
  }
  return std::abs(whole - leg_a - leg_b);
}

}  // namespace entgame
