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

#ifndef ENTGAME_GENERATOR_HPP_
#define ENTGAME_GENERATOR_HPP_

#include <vector>

#include "entgame/errors.hpp"

namespace entgame {

inline constexpr double kDefaultValidationTol = 1e-12;

// Strictly positive probability vector on a finite state space.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs,
                        double tol = kDefaultValidationTol);

  int dim() const { return static_cast<int>(probs_.size()); }
  double operator()(int x) const { return probs_[static_cast<size_t>(x)]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Markov infinitesimal generator: nonnegative off-diagonal rates (units
// 1/time) and zero row sums. Diagonals are always recomputed as negative
// off-diagonal row sums; input diagonals are only ever used for validation.
class Generator {
 public:
  static Generator zero(int dim);

  int dim() const { return dim_; }
  double operator()(int x, int y) const {
    return rates_[static_cast<size_t>(x) * static_cast<size_t>(dim_) +
                  static_cast<size_t>(y)];
  }
  bool is_zero() const;
  std::vector<std::vector<double>> rows() const;

 private:
  friend Generator validate_generator(
      const std::vector<std::vector<double>>&, double);
  friend Generator generator_from_off_diagonal(
      const std::vector<std::vector<double>>&, double);
  friend class GeneratorBuilder;

  Generator(int dim, std::vector<double> rates)
      : dim_(dim), rates_(std::move(rates)) {}

  int dim_;
  std::vector<double> rates_;  // row-major, diagonal = -sum of off-diagonals
};

// Entry-by-entry assembly of a generator whose off-diagonals are known to be
// valid. Diagonals are filled in on build().
class GeneratorBuilder {
 public:
  explicit GeneratorBuilder(int dim)
      : dim_(dim),
        rates_(static_cast<size_t>(dim) * static_cast<size_t>(dim), 0.0) {}

  void set(int x, int y, double rate) {
    rates_[static_cast<size_t>(x) * static_cast<size_t>(dim_) +
           static_cast<size_t>(y)] = rate;
  }
  Generator build() &&;

 private:
  int dim_;
  std::vector<double> rates_;
};

// Ordered family {L_1, ..., L_n} of generators on a common state space.
// At least one member must differ from the all-zeros generator.
class GeneratorFamily {
 public:
  explicit GeneratorFamily(std::vector<Generator> members);

  int size() const { return static_cast<int>(members_.size()); }
  int dim() const { return members_.front().dim(); }
  const Generator& operator[](int i) const {
    return members_[static_cast<size_t>(i)];
  }
  const std::vector<Generator>& members() const { return members_; }

 private:
  std::vector<Generator> members_;
};

// Checks squareness, off-diagonal nonnegativity (entries in [-tol, 0) are
// clamped to zero) and |row sum| <= tol, then renormalizes the diagonal.
// Throws NonSquareError, NegativeRateError or RowSumViolationError.
Generator validate_generator(const std::vector<std::vector<double>>& rates,
                             double tol = kDefaultValidationTol);

// Same as validate_generator but ignores the provided diagonal entirely;
// used where only the off-diagonal part is meaningful.
Generator generator_from_off_diagonal(
    const std::vector<std::vector<double>>& rates,
    double tol = kDefaultValidationTol);

// The pi-dual: off-diagonals L_pi(x,y) = (pi(y)/pi(x)) * L(y,x). Applying it
// twice returns the original generator.
Generator pi_dual(const Generator& generator, const Distribution& pi);

// Detailed balance check: max over x != y of
// |pi(x)L(x,y) - pi(y)L(y,x)| <= tol.
bool is_reversible(const Generator& generator, const Distribution& pi,
                   double tol = 1e-10);

// Entrywise power mean of order p of L and its pi-dual; p may be 0 or
// +/-infinity (geometric mean, max, min). For p <= 0 an entry is zero
// whenever either of the two rates vanishes. The result satisfies detailed
// balance with respect to pi exactly.
Generator power_mean_reversiblization(const Generator& generator,
                                      const Distribution& pi, double p);

// All dim! generators P - I over permutation matrices P, in lexicographic
// order of the permutation. Capped at dim = 6.
GeneratorFamily permutation_family(int dim);

// Basis of the lambda-uniformizable mu-reversible generators: one member per
// unordered state pair {x, y} with rate lambda*m(m-1)/2 from x to y (scaled
// by mu(x)/mu(y) in the reverse direction), plus the all-zeros generator as
// the final member. Every lambda-uniformizable mu-reversible generator is a
// convex combination of these with pair weights L(x,y) / (lambda*m(m-1)/2).
GeneratorFamily uniformizable_basis(const Distribution& mu, double lambda);

// Weighted sum of family members; weights must be nonnegative and sum to one
// within 1e-12.
Generator convex_combination(const GeneratorFamily& family,
                             const std::vector<double>& weights);

// Largest |A(x,y) - B(x,y)| over all entries.
double max_abs_difference(const Generator& a, const Generator& b);

}  // namespace entgame

#endif  // ENTGAME_GENERATOR_HPP_
