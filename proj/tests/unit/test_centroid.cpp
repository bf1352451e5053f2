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

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "entgame/oracle.hpp"
#include "test_support.hpp"

using namespace entgame;
namespace ts = test_support;

namespace {

const std::vector<DivergenceSpec> kClosedSpecs = {
    DivergenceSpec::alpha(-1.0), DivergenceSpec::alpha(0.5),
    DivergenceSpec::alpha(2.0),  DivergenceSpec::alpha(3.0),
    DivergenceSpec::kl(),        DivergenceSpec::squared_hellinger(),
};

double weighted_objective(const DivergenceSpec& spec,
                          const GeneratorFamily& family,
                          const Distribution& pi, const WeightVector& w,
                          const Generator& m) {
  double total = 0.0;
  for (int i = 0; i < family.size(); ++i) {
    if (w[i] > 0.0) total += w[i] * divergence(spec, m, family[i], pi);
  }
  return total;
}

}  // namespace

TEST_CASE("f-projections are the matching power-mean reversiblizations") {
  const auto l = ts::small_pair_generator();
  const auto pi = ts::uniform_distribution(2);

  const auto kl_proj = f_projection(DivergenceSpec::kl(), l, pi);
  CHECK(kl_proj(0, 1) == doctest::Approx(std::sqrt(3.0)));
  CHECK(kl_proj(1, 0) == doctest::Approx(std::sqrt(3.0)));

  const auto hellinger_proj =
      f_projection(DivergenceSpec::squared_hellinger(), l, pi);
  const auto half_mean = power_mean_reversiblization(l, pi, 0.5);
  CHECK(max_abs_difference(hellinger_proj, half_mean) == 0.0);
  const auto alpha_half_proj =
      f_projection(DivergenceSpec::alpha(0.5), l, pi);
  CHECK(max_abs_difference(alpha_half_proj, half_mean) == 0.0);

  // alpha = 2 projects through the order -1 (harmonic) mean.
  const auto chi_proj = f_projection(DivergenceSpec::chi_squared(), l, pi);
  CHECK(chi_proj(0, 1) == doctest::Approx(1.5));

  const auto tv_proj = f_projection(DivergenceSpec::total_variation(1.0), l, pi);
  CHECK(tv_proj(0, 1) == doctest::Approx(1.0));  // entrywise min
}

TEST_CASE("projection of a reversible generator is itself") {
  std::mt19937_64 rng(5);
  const auto pi = ts::random_distribution(3, rng);
  const auto m = ts::random_reversible(3, pi, rng);
  for (const auto& spec : kClosedSpecs) {
    CHECK(max_abs_difference(f_projection(spec, m, pi), m) <= 1e-12);
    CHECK(divergence(spec, f_projection(spec, m, pi), m, pi) <= 1e-12);
  }
}

TEST_CASE("total variation projection reports the flat interval") {
  const auto l = ts::small_pair_generator();
  const auto pi = ts::uniform_distribution(2);
  const auto result =
      f_projection_result(DivergenceSpec::total_variation(0.5), l, pi);
  REQUIRE(result.flat_interval.has_value());
  const double inf = std::numeric_limits<double>::infinity();
  const auto lower = power_mean_reversiblization(l, pi, -inf);
  const auto upper = power_mean_reversiblization(l, pi, inf);
  CHECK(max_abs_difference(result.flat_interval->first, lower) <= 1e-9);
  CHECK(max_abs_difference(result.flat_interval->second, upper) <= 1e-9);
  // Canonical value is the interval midpoint.
  CHECK(result.centroid(0, 1) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("single-member and unit-weight centroids reduce to projections") {
  std::mt19937_64 rng(7);
  const auto pi = ts::random_distribution(3, rng);
  const auto family = ts::random_family(3, 3, rng);
  for (const auto& spec : kClosedSpecs) {
    const auto single = weighted_centroid_closed(
        spec, GeneratorFamily({family[1]}), pi, WeightVector::unit(1, 0));
    CHECK(max_abs_difference(single.centroid, f_projection(spec, family[1], pi)) <=
          1e-12);
    for (int i = 0; i < family.size(); ++i) {
      const auto at_unit = weighted_centroid_closed(
          spec, family, pi, WeightVector::unit(family.size(), i));
      CHECK(max_abs_difference(at_unit.centroid,
                               f_projection(spec, family[i], pi)) <= 1e-12);
    }
  }
}

TEST_CASE("conjugate KL centroid is the arithmetic mean of the P_1 projections") {
  std::mt19937_64 rng(11);
  const auto pi = ts::random_distribution(3, rng);
  const auto family = ts::random_family(3, 2, rng);
  const WeightVector w({0.3, 0.7});
  const auto spec = DivergenceSpec::kl().conjugate();
  const auto result = weighted_centroid_closed(spec, family, pi, w);
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (x == y) continue;
      const double expected =
          0.3 * power_mean_reversiblization(family[0], pi, 1.0)(x, y) +
          0.7 * power_mean_reversiblization(family[1], pi, 1.0)(x, y);
      CHECK(result.centroid(x, y) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("per-member divergences are reproducible from the centroid") {
  std::mt19937_64 rng(13);
  const auto pi = ts::random_distribution(4, rng);
  const auto family = ts::random_family(4, 3, rng);
  const auto w = ts::random_weights(3, rng);
  const auto result =
      weighted_centroid_closed(DivergenceSpec::alpha(2.0), family, pi, w);
  CHECK(is_reversible(result.centroid, pi, 1e-10));
  for (int i = 0; i < family.size(); ++i) {
    CHECK(result.per_member_divergence[static_cast<size_t>(i)] ==
          doctest::Approx(divergence(DivergenceSpec::alpha(2.0),
                                     result.centroid, family[i], pi))
              .epsilon(1e-9));
  }
}

TEST_CASE("closed and generic centroids agree") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 3);
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto pi = ts::random_distribution(dim, rng);
    const auto family = ts::random_family(dim, n, rng);
    const auto w = ts::random_weights(n, rng);
    for (const auto& spec : kClosedSpecs) {
      const auto closed = weighted_centroid_closed(spec, family, pi, w);
      const auto generic = weighted_centroid_generic(spec, family, pi, w);
      CHECK(max_abs_difference(closed.centroid, generic.centroid) <= 1e-8);
      CHECK_FALSE(generic.flat_interval.has_value());
    }
  }
}

TEST_CASE("generic centroid is stable across solver tolerances") {
  std::mt19937_64 rng(19);
  const auto pi = ts::random_distribution(3, rng);
  const auto family = ts::random_family(3, 3, rng);
  const auto w = ts::random_weights(3, rng);
  GenericCentroidOptions fine;
  fine.tolerance = 1e-14;
  const auto a =
      weighted_centroid_generic(DivergenceSpec::alpha(0.5), family, pi, w);
  const auto b = weighted_centroid_generic(DivergenceSpec::alpha(0.5), family,
                                           pi, w, fine);
  CHECK(max_abs_difference(a.centroid, b.centroid) <= 1e-10);
}

TEST_CASE("generic centroid matches a dense per-pair value scan") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pi = ts::random_distribution(2, rng);
    const auto family = ts::random_family(2, 3, rng);
    const auto w = ts::random_weights(3, rng);
    for (const auto& spec :
         {DivergenceSpec::alpha(2.0), DivergenceSpec::kl(),
          DivergenceSpec::squared_hellinger()}) {
      const auto generic = weighted_centroid_generic(spec, family, pi, w);
      const auto scanned =
          oracle_edge_scan(spec, family, pi, w, {1e-5, std::nullopt});
      CHECK(max_abs_difference(generic.centroid, scanned) <= 1e-4);
    }
  }
}

TEST_CASE("total variation centroid of a dual pair has the Metropolis flat "
          "interval") {
  const auto l = ts::small_pair_generator();
  const auto pi = ts::uniform_distribution(2);
  const GeneratorFamily family({l, pi_dual(l, pi)});
  const auto result = weighted_centroid_generic(
      DivergenceSpec::total_variation(0.5), family, pi,
      WeightVector::uniform(2));
  REQUIRE(result.flat_interval.has_value());
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(max_abs_difference(result.flat_interval->first,
                           power_mean_reversiblization(l, pi, -inf)) <= 1e-9);
  CHECK(max_abs_difference(result.flat_interval->second,
                           power_mean_reversiblization(l, pi, inf)) <= 1e-9);
}

TEST_CASE("edges with no support across the family stay at zero") {
  GeneratorBuilder b1(3);
  b1.set(0, 1, 1.0);
  b1.set(1, 0, 2.0);
  GeneratorBuilder b2(3);
  b2.set(0, 1, 0.5);
  b2.set(1, 0, 0.25);
  const GeneratorFamily family({std::move(b1).build(), std::move(b2).build()});
  const auto pi = ts::uniform_distribution(3);
  for (const auto& spec : {DivergenceSpec::kl(), DivergenceSpec::alpha(0.5),
                           DivergenceSpec::total_variation(0.5)}) {
    const auto result = weighted_centroid_generic(spec, family, pi,
                                                  WeightVector::uniform(2));
    CHECK(result.centroid(0, 2) == 0.0);
    CHECK(result.centroid(2, 0) == 0.0);
    CHECK(result.centroid(1, 2) == 0.0);
  }
}

TEST_CASE("degenerate weight placement is rejected") {
  const auto l = ts::small_pair_generator();
  const GeneratorFamily family({Generator::zero(2), l});
  const auto pi = ts::uniform_distribution(2);
  CHECK_THROWS_AS(weighted_centroid_closed(DivergenceSpec::kl(), family, pi,
                                           WeightVector::unit(2, 0)),
                  DegenerateFamilyError);
  CHECK_THROWS_AS(weighted_centroid_generic(DivergenceSpec::kl(), family, pi,
                                            WeightVector::unit(2, 0)),
                  DegenerateFamilyError);
  CHECK_THROWS_AS(weighted_centroid_closed(
                      DivergenceSpec::total_variation(0.5), family, pi,
                      WeightVector::uniform(2)),
                  UnsupportedSpecError);
}

TEST_CASE("first-order optimality of the centroid") {
  std::mt19937_64 rng(29);
  const auto pi = ts::random_distribution(3, rng);
  const auto family = ts::random_family(3, 3, rng);
  const auto w = ts::random_weights(3, rng);
  for (const auto& spec : {DivergenceSpec::alpha(2.0), DivergenceSpec::kl()}) {
    const auto result = weighted_centroid(spec, family, pi, w);
    const double base = weighted_objective(spec, family, pi, w, result.centroid);
    std::uniform_real_distribution<double> delta(-1.0, 1.0);
    for (int probe = 0; probe < 20; ++probe) {
      // Reversibility-preserving perturbation, one pi-weighted value per pair.
      const double eps = 1e-6;
      GeneratorBuilder builder(3);
      for (int x = 0; x < 3; ++x) {
        for (int y = x + 1; y < 3; ++y) {
          double d = delta(rng);
          const double s = pi(x) * result.centroid(x, y);
          if (s + eps * d < 0.0) d = -d;
          builder.set(x, y, (s + eps * d) / pi(x));
          builder.set(y, x, (s + eps * d) / pi(y));
        }
      }
      const auto moved = std::move(builder).build();
      const double shifted = weighted_objective(spec, family, pi, w, moved);
      CHECK((shifted - base) / eps >= -1e-6);
    }
  }
}

TEST_CASE("Pythagorean identity for the alpha family") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 3);
    const auto pi = ts::random_distribution(dim, rng);
    const auto l = ts::random_generator(dim, rng);
    const auto m = ts::random_reversible(dim, pi, rng);
    for (double a : {-1.0, 0.5, 2.0}) {
      CHECK(pythagorean_residual(DivergenceSpec::alpha(a), m, l, pi) <= 1e-9);
    }
  }
}

TEST_CASE("Pythagorean identity degenerates at the projection itself") {
  std::mt19937_64 rng(37);
  const auto pi = ts::random_distribution(3, rng);
  const auto l = ts::random_generator(3, rng);
  const auto spec = DivergenceSpec::alpha(2.0);
  const auto proj = f_projection(spec, l, pi);
  CHECK(divergence(spec, proj, proj, pi) == doctest::Approx(0.0));
  CHECK(pythagorean_residual(spec, proj, l, pi) <= 1e-10);
}

TEST_CASE("Pythagorean residual guards its preconditions") {
  std::mt19937_64 rng(41);
  const auto pi = ts::random_distribution(2, rng);
  const auto l = ts::random_generator(2, rng);
  const auto m = ts::random_reversible(2, pi, rng);
  CHECK_THROWS_AS(pythagorean_residual(DivergenceSpec::kl(), m, l, pi),
                  UnsupportedSpecError);
  CHECK_THROWS_AS(
      pythagorean_residual(DivergenceSpec::alpha(2.0), l, l, pi),
      Error);  // first argument not reversible
  GeneratorBuilder zb(2);
  zb.set(1, 0, 1.0);  // zero forward rate: alpha(3) divergence blows up
  const auto with_zero = std::move(zb).build();
  CHECK_THROWS_AS(
      pythagorean_residual(DivergenceSpec::alpha(3.0), m, with_zero, pi),
      InfiniteDivergenceError);
}

TEST_CASE("WeightVector validation") {
  CHECK_THROWS_AS(WeightVector({0.5, 0.6}), Error);
  CHECK_THROWS_AS(WeightVector({-0.1, 1.1}), Error);
  CHECK_THROWS_AS(WeightVector({}), EmptyInputError);
  const auto w = WeightVector::uniform(4);
  CHECK(w[2] == doctest::Approx(0.25));
  CHECK(WeightVector::unit(3, 1)[1] == 1.0);
}
