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

#include "entgame/divergence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace entgame {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DivergenceSpec DivergenceSpec::alpha(double a) {
  if (a == 0.0 || a == 1.0 || !std::isfinite(a)) {
    throw UnsupportedSpecError("alpha must be a finite real outside {0, 1}");
  }
  return DivergenceSpec(DivergenceKind::kAlpha, a);
}

DivergenceSpec DivergenceSpec::total_variation(double scale) {
  if (scale != 1.0 && scale != 0.5) {
    throw UnsupportedSpecError("total variation scale must be 1 or 1/2");
  }
  return DivergenceSpec(DivergenceKind::kTotalVariation, 0.0, scale);
}

DivergenceSpec DivergenceSpec::parse(const std::string& name) {
  if (name == "kl") return kl();
  if (name == "rkl") return reverse_kl();
  if (name == "hellinger2") return squared_hellinger();
  if (name == "tv") return total_variation(1.0);
  if (name == "tv-half") return total_variation(0.5);
  if (name == "chi2") return chi_squared();
  if (name.rfind("alpha:", 0) == 0) {
    std::istringstream in(name.substr(6));
    double a = 0.0;
    if (!(in >> a) || !in.eof()) {
      throw UnsupportedSpecError("cannot parse '" + name + "'");
    }
    return alpha(a);
  }
  throw UnsupportedSpecError("unknown divergence '" + name + "'");
}

std::string DivergenceSpec::name() const {
  switch (kind_) {
    case DivergenceKind::kAlpha: {
      std::ostringstream out;
      out << "alpha:" << alpha_;
      return out.str();
    }
    case DivergenceKind::kKl:
      return "kl";
    case DivergenceKind::kReverseKl:
      return "rkl";
    case DivergenceKind::kSquaredHellinger:
      return "hellinger2";
    case DivergenceKind::kTotalVariation:
      return tv_scale_ == 1.0 ? "tv" : "tv-half";
  }
  return "?";
}

double DivergenceSpec::eval_f(double t) const {
  if (t < 0.0) throw NegativeArgumentError();
  if (t == 0.0) return f_at_zero();
  double v = 0.0;
  switch (kind_) {
    case DivergenceKind::kAlpha:
      v = (std::pow(t, alpha_) - alpha_ * t - (1.0 - alpha_)) /
          (alpha_ * (alpha_ - 1.0));
      break;
    case DivergenceKind::kKl:
      v = t * std::log(t) - t + 1.0;
      break;
    case DivergenceKind::kReverseKl:
      v = t - std::log(t) - 1.0;
      break;
    case DivergenceKind::kSquaredHellinger: {
      const double s = std::sqrt(t) - 1.0;
      v = s * s;
      break;
    }
    case DivergenceKind::kTotalVariation:
      v = tv_scale_ * std::abs(t - 1.0);
      break;
  }
  // f has its minimum value 0 at t = 1; guard against rounding below it.
  return v < 0.0 ? 0.0 : v;
}

double DivergenceSpec::f_right_derivative(double t) const {
  if (t < 0.0) throw NegativeArgumentError();
  switch (kind_) {
    case DivergenceKind::kAlpha:
      if (t == 0.0) return alpha_ > 1.0 ? -1.0 / (alpha_ - 1.0) : -kInf;
      return (std::pow(t, alpha_ - 1.0) - 1.0) / (alpha_ - 1.0);
    case DivergenceKind::kKl:
      return t == 0.0 ? -kInf : std::log(t);
    case DivergenceKind::kReverseKl:
      return t == 0.0 ? -kInf : 1.0 - 1.0 / t;
    case DivergenceKind::kSquaredHellinger:
      return t == 0.0 ? -kInf : 1.0 - 1.0 / std::sqrt(t);
    case DivergenceKind::kTotalVariation:
      return t < 1.0 ? -tv_scale_ : tv_scale_;
  }
  return 0.0;
}

double DivergenceSpec::f_at_zero() const {
  switch (kind_) {
    case DivergenceKind::kAlpha:
      return alpha_ > 0.0 ? 1.0 / alpha_ : kInf;
    case DivergenceKind::kKl:
      return 1.0;
    case DivergenceKind::kReverseKl:
      return kInf;
    case DivergenceKind::kSquaredHellinger:
      return 1.0;
    case DivergenceKind::kTotalVariation:
      return tv_scale_;
  }
  return 0.0;
}

double DivergenceSpec::slope_at_infinity() const {
  switch (kind_) {
    case DivergenceKind::kAlpha:
      return alpha_ > 1.0 ? kInf : 1.0 / (1.0 - alpha_);
    case DivergenceKind::kKl:
      return kInf;
    case DivergenceKind::kReverseKl:
      return 1.0;
    case DivergenceKind::kSquaredHellinger:
      return 1.0;
    case DivergenceKind::kTotalVariation:
      return tv_scale_;
  }
  return 0.0;
}

DivergenceSpec DivergenceSpec::conjugate() const {
  switch (kind_) {
    case DivergenceKind::kAlpha:
      return alpha(1.0 - alpha_);
    case DivergenceKind::kKl:
      return reverse_kl();
    case DivergenceKind::kReverseKl:
      return kl();
    case DivergenceKind::kSquaredHellinger:
    case DivergenceKind::kTotalVariation:
      return *this;  // self-conjugate
  }
  return *this;
}

double DivergenceSpec::projection_order() const {
  switch (kind_) {
    case DivergenceKind::kAlpha:
      return 1.0 - alpha_;
    case DivergenceKind::kKl:
      return 0.0;
    case DivergenceKind::kReverseKl:
      return 1.0;
    case DivergenceKind::kSquaredHellinger:
      return 0.5;
    case DivergenceKind::kTotalVariation:
      return -kInf;
  }
  return 0.0;
}

double divergence(const DivergenceSpec& spec, const Generator& m,
                  const Generator& l, const Distribution& pi) {
  if (m.dim() != l.dim() || m.dim() != pi.dim()) {
    throw DimensionMismatchError();
  }
  const int dim = m.dim();
  double total = 0.0;
  for (int x = 0; x < dim; ++x) {
    for (int y = 0; y < dim; ++y) {
      if (x == y) continue;
      const double lr = l(x, y);
      const double mr = m(x, y);
      if (lr > 0.0) {
        total += pi(x) * lr * spec.eval_f(mr / lr);
      } else if (mr > 0.0) {
        total += pi(x) * mr * spec.slope_at_infinity();
      }
      if (std::isinf(total)) return kInf;
    }
  }
  return total;
}

double conjugate_duality_check(const DivergenceSpec& spec, const Generator& m,
                               const Generator& l, const Distribution& pi) {
  const double forward = divergence(spec, m, l, pi);
  const double backward = divergence(spec.conjugate(), l, m, pi);
  if (std::isinf(forward) || std::isinf(backward)) {
    throw InfiniteDivergenceError();
  }
  return std::abs(forward - backward);
}

}  // namespace entgame
