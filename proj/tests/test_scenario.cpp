//------------------------------------------------------------------------------
//
//   Copyright 2026 the twinmig authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <string>

#include "twinmig/scenario.hpp"

using namespace twinmig;

namespace {

// A complete, valid document the failure cases below mutate.
std::string valid_text() {
  return R"({
    "channel": {
      "transmit_power_dbm": 23.0,
      "unit_gain": 1.0,
      "distance_m": 500.0,
      "path_loss_exponent": 2.0,
      "noise_density_dbm_hz": -174.0
    },
    "task": {"data_bits": 8e8, "fixed_time_s": 5.0, "max_aomt_s": 50.0},
    "economics": {
      "beta": 200.0,
      "population": 10,
      "theta": [5e11, 1e12],
      "probabilities": [0.5, 0.5]
    },
    "grid": {"b_min_hz": 1e5, "b_max_hz": 4e7, "step_hz": 1e4}
  })";
}

std::string replaced(std::string text, const std::string& needle,
                     const std::string& replacement) {
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, needle.size(), replacement);
}

}  // namespace

TEST_CASE("the shipped default scenario loads") {
  const auto scenario =
      load_scenario(std::string(TWINMIG_SCENARIO_DIR) + "/default.json");
  CHECK(scenario.spectrum.size() == 4);
  CHECK(scenario.spectrum.population == 10);
  CHECK(scenario.params.beta == 200.0);
  CHECK(scenario.params.task.max_aomt_s == 50.0);
  CHECK(scenario.params.channel.distance_m == 500.0);
  // dBm inputs were converted to linear units at load
  CHECK(scenario.params.channel.transmit_power_w == doctest::Approx(0.199526).epsilon(1e-5));
  CHECK(scenario.params.channel.noise_density_w_hz ==
        doctest::Approx(3.98107e-21).epsilon(1e-5));
  CHECK(scenario.spectrum.types[3].theta == doctest::Approx(2e12));
  CHECK(scenario.sweep_data_bits.size() == 6);
  CHECK(scenario.sweep_data_bits.front() == 8e8);
  CHECK(scenario.sweep_data_bits.back() == 1.6e9);
}

TEST_CASE("a valid document parses and fingerprints") {
  const auto scenario = parse_scenario(valid_text());
  CHECK(scenario.spectrum.size() == 2);
  CHECK(scenario.hash.size() == 16);
  for (const char c : scenario.hash) CHECK(std::isxdigit(static_cast<unsigned char>(c)));

  // same content, same fingerprint; different content, different fingerprint
  CHECK(parse_scenario(valid_text()).hash == scenario.hash);
  const auto other =
      parse_scenario(replaced(valid_text(), "\"beta\": 200.0", "\"beta\": 150.0"));
  CHECK(other.hash != scenario.hash);
}

TEST_CASE("omitted probabilities default to uniform") {
  const auto scenario = parse_scenario(
      replaced(valid_text(), R"("probabilities": [0.5, 0.5])",
               R"("probabilities": "uniform")"));
  CHECK(scenario.spectrum.types[0].probability == doctest::Approx(0.5));

  // and missing sweep falls back to the stock six-point payload range
  CHECK(scenario.sweep_data_bits.size() == 6);
}

TEST_CASE("probabilities that do not sum to one are refused") {
  const auto text =
      replaced(valid_text(), R"("probabilities": [0.5, 0.5])",
               R"("probabilities": [0.5, 0.6])");
  CHECK_THROWS_WITH_AS(parse_scenario(text),
                       doctest::Contains("must sum to 1"), validation_error);
}

TEST_CASE("negative beta is refused") {
  const auto text = replaced(valid_text(), "\"beta\": 200.0", "\"beta\": -5.0");
  CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("beta"),
                       validation_error);
}

TEST_CASE("unknown keys are refused") {
  const auto text = replaced(valid_text(), "\"beta\": 200.0",
                             "\"beta\": 200.0, \"bata\": 1.0");
  CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("unknown key"),
                       validation_error);
}

TEST_CASE("theta must come from exactly one source") {
  const auto both = replaced(valid_text(), "\"theta\": [5e11, 1e12]",
                             "\"theta\": [5e11, 1e12], \"theta_base\": 5e11");
  CHECK_THROWS_AS(parse_scenario(both), validation_error);

  const auto neither = replaced(valid_text(),
                                "\"theta\": [5e11, 1e12],", "");
  CHECK_THROWS_AS(parse_scenario(neither), validation_error);

  const auto generated = parse_scenario(replaced(
      replaced(valid_text(), "\"theta\": [5e11, 1e12]",
               "\"theta_base\": 5e11, \"n_types\": 3"),
      R"("probabilities": [0.5, 0.5])", R"("probabilities": "uniform")"));
  CHECK(generated.spectrum.size() == 3);
  CHECK(generated.spectrum.types[2].theta == doctest::Approx(1.5e12));
}

TEST_CASE("unsorted theta lists are refused") {
  const auto text =
      replaced(valid_text(), "\"theta\": [5e11, 1e12]", "\"theta\": [1e12, 5e11]");
  CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("sorted"),
                       validation_error);
}

TEST_CASE("grid bounds are validated") {
  const auto text =
      replaced(valid_text(), "\"b_min_hz\": 1e5", "\"b_min_hz\": 5e7");
  CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("b_max_hz"),
                       validation_error);
}

TEST_CASE("task bounds are validated") {
  const auto text =
      replaced(valid_text(), "\"max_aomt_s\": 50.0", "\"max_aomt_s\": 3.0");
  CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("max_aomt_s"),
                       validation_error);
}

TEST_CASE("sweep entries must be unique") {
  const auto text = replaced(
      valid_text(), "\"grid\": {\"b_min_hz\": 1e5, \"b_max_hz\": 4e7, \"step_hz\": 1e4}",
      "\"grid\": {\"b_min_hz\": 1e5, \"b_max_hz\": 4e7, \"step_hz\": 1e4},\n"
      "\"sweep\": {\"data_bits\": [8e8, 8e8]}");
  CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("duplicate"),
                       validation_error);
}

TEST_CASE("malformed json is reported as a parse error") {
  CHECK_THROWS_WITH_AS(parse_scenario("{nope"), doctest::Contains("parse error"),
                       validation_error);
  CHECK_THROWS_AS(parse_scenario("[1,2,3]"), validation_error);
}

TEST_CASE("missing files are reported by name") {
  CHECK_THROWS_WITH_AS(load_scenario("/no/such/file.json"),
                       doctest::Contains("/no/such/file.json"), validation_error);
}
