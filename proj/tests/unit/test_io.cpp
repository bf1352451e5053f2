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

#include "entgame/io.hpp"

#include <random>

#include <doctest.h>
#include <json.hpp>

#include "test_support.hpp"

using namespace entgame;
using nlohmann::json;
namespace ts = test_support;

TEST_CASE("a well-formed instance parses") {
  const json doc = {
      {"pi", {0.5, 0.5}},
      {"generators", {{{-1, 1}, {3, -3}}, {{-3, 3}, {1, -1}}}},
      {"labels", {"forward", "backward"}},
      {"divergence", "kl"},
      {"options", {{"iters", 100}}},
  };
  const auto instance = parse_instance(doc);
  CHECK(instance.pi.dim() == 2);
  CHECK(instance.family.size() == 2);
  CHECK(instance.family[0](1, 0) == 3.0);
  CHECK(instance.labels[1] == "backward");
  REQUIRE(instance.divergence.has_value());
  CHECK(instance.divergence->name() == "kl");
  CHECK(instance.options["iters"] == 100);
}

TEST_CASE("blank diagonals are recomputed") {
  const json doc = {
      {"pi", {0.5, 0.5}},
      {"generators", {{{0, 2}, {5, 0}}}},
  };
  const auto instance = parse_instance(doc);
  CHECK(instance.family[0](0, 0) == -2.0);
  CHECK(instance.family[0](1, 1) == -5.0);
}

TEST_CASE("explicit diagonals must balance the rows") {
  const json doc = {
      {"pi", {0.5, 0.5}},
      {"generators", {{{-1, 2}, {3, -3}}}},
  };
  CHECK_THROWS_WITH_AS(parse_instance(doc),
                       "generators[0]: row 0 does not sum to zero", Error);
}

TEST_CASE("field paths are reported for malformed documents") {
  CHECK_THROWS_AS(parse_instance(json::array()), ParseError);
  CHECK_THROWS_AS(parse_instance({{"pi", {0.5, 0.5}}}), ParseError);
  try {
    parse_instance({{"pi", {0.5, -0.5, 1.0}},
                    {"generators", {{{0, 1}, {1, 0}}}}});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.path() == "pi[1]");
  }
  try {
    parse_instance({{"pi", {0.5, 0.5}},
                    {"generators", {{{0, 1}, {1, 0}}}},
                    {"labels", {"only-one-label-for-one-generator", "extra"}}});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.path() == "labels");
  }
  try {
    parse_instance({{"pi", {0.5, 0.5}},
                    {"generators", {{{0, 1, 0}, {1, 0, 0}}}}});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.path() == "generators[0][0]");
  }
}

TEST_CASE("pi and generator dimensions must agree") {
  const json doc = {
      {"pi", {0.5, 0.25, 0.25}},
      {"generators", {{{0, 1}, {1, 0}}}},
  };
  CHECK_THROWS_AS(parse_instance(doc), ParseError);
}

TEST_CASE("matrices round-trip losslessly through the serializer") {
  std::mt19937_64 rng(13);
  const auto g = ts::random_generator(4, rng, 1e-3, 1e3);
  const auto serialized = matrix_to_json(g);
  const std::string text = serialized.dump();
  const auto reparsed = json::parse(text);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      CHECK(reparsed[static_cast<size_t>(x)][static_cast<size_t>(y)]
                .get<double>() == g(x, y));
    }
  }
}

TEST_CASE("digest is stable for equal documents and separates different ones") {
  const json a = {{"pi", {0.5, 0.5}}, {"generators", {{{0, 1}, {1, 0}}}}};
  const json b = {{"pi", {0.5, 0.5}}, {"generators", {{{0, 1}, {2, 0}}}}};
  CHECK(inputs_digest(a) == inputs_digest(a));
  CHECK(inputs_digest(a) != inputs_digest(b));
  CHECK(inputs_digest(a).rfind("fnv1a:", 0) == 0);
}

TEST_CASE("non-finite values serialize as null") {
  CHECK(number_or_null(1.5) == nlohmann::ordered_json(1.5));
  CHECK(number_or_null(std::numeric_limits<double>::infinity()).is_null());
}

TEST_CASE("report documents carry the expected sections") {
  ReportDocument report;
  report.command = "divergence";
  report.flags = {{"divergence", "kl"}};
  report.inputs_digest = "fnv1a:0";
  report.results = {{"value", 0.25}};
  const auto out = report.to_json();
  CHECK(out["command"] == "divergence");
  CHECK(out["results"]["value"] == 0.25);
  CHECK(out["trace"].is_null() == false);
  CHECK(report.dump().find("\"command\":\"divergence\"") != std::string::npos);
}
