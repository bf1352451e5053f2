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

#include "entgame/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace entgame {

namespace {

constexpr int kPermutationDimCap = 6;

// Recomputes each diagonal entry as the negative off-diagonal row sum.
void renormalize_diagonal(int dim, std::vector<double>& rates) {
  for (int x = 0; x < dim; ++x) {
    double off = 0.0;
    for (int y = 0; y < dim; ++y) {
      if (y != x) off += rates[static_cast<size_t>(x) * dim + y];
    }
    rates[static_cast<size_t>(x) * dim + x] = -off;
  }
}

std::vector<double> flatten_checked(
    const std::vector<std::vector<double>>& rates, double tol,
    bool check_row_sums) {
  const size_t dim = rates.size();
  if (dim == 0) throw NonSquareError();
  std::vector<double> flat(dim * dim, 0.0);
  for (size_t x = 0; x < dim; ++x) {
    if (rates[x].size() != dim) throw NonSquareError();
    for (size_t y = 0; y < dim; ++y) {
      double r = rates[x][y];
      if (!std::isfinite(r)) {
        throw Error("rate (" + std::to_string(x) + "," + std::to_string(y) +
                    ") is not finite");
      }
      if (x != y) {
        if (r < -tol) {
          throw NegativeRateError(static_cast<int>(x), static_cast<int>(y));
        }
        if (r < 0.0) r = 0.0;
      }
      flat[x * dim + y] = r;
    }
  }
  if (check_row_sums) {
    for (size_t x = 0; x < dim; ++x) {
      double sum = 0.0;
      for (size_t y = 0; y < dim; ++y) sum += rates[x][y];
      if (std::abs(sum) > tol) {
        throw RowSumViolationError(static_cast<int>(x));
      }
    }
  }
  renormalize_diagonal(static_cast<int>(dim), flat);
  return flat;
}

}  // namespace

Distribution::Distribution(std::vector<double> probs, double tol)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw EmptyInputError();
  double sum = 0.0;
  for (size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] > 0.0) || !std::isfinite(probs_[i])) {
      throw Error("distribution entry " + std::to_string(i) +
                  " must be strictly positive");
    }
    sum += probs_[i];
  }
  if (std::abs(sum - 1.0) > tol) {
    throw Error("distribution entries sum to " + std::to_string(sum) +
                ", expected 1");
  }
}

Generator Generator::zero(int dim) {
  return Generator(dim, std::vector<double>(
                            static_cast<size_t>(dim) * static_cast<size_t>(dim),
                            0.0));
}

bool Generator::is_zero() const {
  return std::all_of(rates_.begin(), rates_.end(),
                     [](double r) { return r == 0.0; });
}

std::vector<std::vector<double>> Generator::rows() const {
  std::vector<std::vector<double>> out(static_cast<size_t>(dim_));
  for (int x = 0; x < dim_; ++x) {
    out[static_cast<size_t>(x)].assign(
        rates_.begin() + static_cast<size_t>(x) * dim_,
        rates_.begin() + static_cast<size_t>(x + 1) * dim_);
  }
  return out;
}

Generator GeneratorBuilder::build() && {
  renormalize_diagonal(dim_, rates_);
  return Generator(dim_, std::move(rates_));
}

GeneratorFamily::GeneratorFamily(std::vector<Generator> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw EmptyInputError();
  const int dim = members_.front().dim();
  bool any_nonzero = false;
  for (size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].dim() != dim) {
      throw DimensionMismatchError("family member " + std::to_string(i) +
                                   " has a different state space");
    }
    if (!members_[i].is_zero()) any_nonzero = true;
  }
  if (!any_nonzero) {
    throw DegenerateFamilyError("every member is the all-zeros generator");
  }
}

Generator validate_generator(const std::vector<std::vector<double>>& rates,
                             double tol) {
  auto flat = flatten_checked(rates, tol, /*check_row_sums=*/true);
  return Generator(static_cast<int>(rates.size()), std::move(flat));
}

Generator generator_from_off_diagonal(
    const std::vector<std::vector<double>>& rates, double tol) {
  auto flat = flatten_checked(rates, tol, /*check_row_sums=*/false);
  return Generator(static_cast<int>(rates.size()), std::move(flat));
}

Generator pi_dual(const Generator& generator, const Distribution& pi) {
  if (generator.dim() != pi.dim()) throw DimensionMismatchError();
  const int dim = generator.dim();
  GeneratorBuilder builder(dim);
  for (int x = 0; x < dim; ++x) {
    for (int y = 0; y < dim; ++y) {
      if (x == y) continue;
      builder.set(x, y, pi(y) / pi(x) * generator(y, x));
    }
  }
  return std::move(builder).build();
}

bool is_reversible(const Generator& generator, const Distribution& pi,
                   double tol) {
  if (generator.dim() != pi.dim()) throw DimensionMismatchError();
  const int dim = generator.dim();
  for (int x = 0; x < dim; ++x) {
    for (int y = x + 1; y < dim; ++y) {
      if (std::abs(pi(x) * generator(x, y) - pi(y) * generator(y, x)) > tol) {
        return false;
      }
    }
  }
  return true;
}

namespace {

// Power mean of two nonnegative rates, with the limit conventions at
// p in {0, +inf, -inf} and zero entries.
double power_mean(double a, double b, double p) {
  if (std::isinf(p)) return p > 0 ? std::max(a, b) : std::min(a, b);
  if (p == 0.0) return std::sqrt(a * b);
  if (a == 0.0 || b == 0.0) {
    return p > 0 ? std::pow((std::pow(a, p) + std::pow(b, p)) / 2.0, 1.0 / p)
                 : 0.0;
  }
  // Scale by one operand so the ratios stay in a safe range for pow.
  const double ref = p > 0 ? std::max(a, b) : std::min(a, b);
  const double s =
      (std::pow(a / ref, p) + std::pow(b / ref, p)) / 2.0;
  return ref * std::pow(s, 1.0 / p);
}

}  // namespace

Generator power_mean_reversiblization(const Generator& generator,
                                      const Distribution& pi, double p) {
  if (generator.dim() != pi.dim()) throw DimensionMismatchError();
  const int dim = generator.dim();
  GeneratorBuilder builder(dim);
  for (int x = 0; x < dim; ++x) {
    for (int y = x + 1; y < dim; ++y) {
      // Means of the pi-weighted pair rates keep detailed balance exact.
      const double beta = pi(x) * generator(x, y);
      const double beta_rev = pi(y) * generator(y, x);
      const double m = power_mean(beta, beta_rev, p);
      builder.set(x, y, m / pi(x));
      builder.set(y, x, m / pi(y));
    }
  }
  return std::move(builder).build();
}

GeneratorFamily permutation_family(int dim) {
  if (dim > kPermutationDimCap) {
    throw DimensionTooLargeError(dim, kPermutationDimCap);
  }
  if (dim < 2) throw Error("permutation family needs at least 2 states");
  std::vector<int> perm(static_cast<size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Generator> members;
  do {
    GeneratorBuilder builder(dim);
    for (int x = 0; x < dim; ++x) {
      const int y = perm[static_cast<size_t>(x)];
      if (y != x) builder.set(x, y, 1.0);
    }
    members.push_back(std::move(builder).build());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return GeneratorFamily(std::move(members));
}

GeneratorFamily uniformizable_basis(const Distribution& mu, double lambda) {
  if (!(lambda > 0.0)) throw Error("lambda must be strictly positive");
  const int m = mu.dim();
  const double rate = lambda * m * (m - 1) / 2.0;
  std::vector<Generator> members;
  for (int x = 0; x < m; ++x) {
    for (int y = x + 1; y < m; ++y) {
      GeneratorBuilder builder(m);
      builder.set(x, y, rate);
      builder.set(y, x, rate * mu(x) / mu(y));
      members.push_back(std::move(builder).build());
    }
  }
  members.push_back(Generator::zero(m));
  return GeneratorFamily(std::move(members));
}

Generator convex_combination(const GeneratorFamily& family,
                             const std::vector<double>& weights) {
  if (static_cast<int>(weights.size()) != family.size()) {
    throw DimensionMismatchError("weight count differs from family size");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw Error("combination weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error("combination weights must sum to one");
  }
  const int dim = family.dim();
  GeneratorBuilder builder(dim);
  for (int x = 0; x < dim; ++x) {
    for (int y = 0; y < dim; ++y) {
      if (x == y) continue;
      double r = 0.0;
      for (int i = 0; i < family.size(); ++i) {
        r += weights[static_cast<size_t>(i)] * family[i](x, y);
      }
      builder.set(x, y, r);
    }
  }
  return std::move(builder).build();
}

double max_abs_difference(const Generator& a, const Generator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError();
  double worst = 0.0;
  for (int x = 0; x < a.dim(); ++x) {
    for (int y = 0; y < a.dim(); ++y) {
      worst = std::max(worst, std::abs(a(x, y) - b(x, y)));
    }
  }
  return worst;
}

}  // namespace entgame
