// Copyright 2026 The fene-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fene/error.hpp"
#include "fene/run_config.hpp"

#include <doctest.h>

#include <string>

using namespace fene;

namespace {

ConfigError parse_error(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError("");
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
  const RunConfig c = parse_run_config("");
  CHECK(serialize_run_config(c) == serialize_run_config(RunConfig{}));
  CHECK(c.grid_n == 32);
  CHECK(c.model.b == 4.0);
  CHECK(c.effective_chi_index() == 32);
}

TEST_CASE("values, comments and whitespace") {
  const RunConfig c = parse_run_config(
      "# header\n"
      "model.b = 6   # trailing comment\n"
      "\n"
      "  scenario.kind=shear_perturbation\n"
      "fluid.cutoff_R = 5\n"
      "scenario.deltas = 1e-3,1e-2 , 0.1\n"
      "qspace.chi_mode = drift_only\r\n"
      "fp.scheme = ssprk3_explicit\n"
      "run.seed = 18446744073709551615\n");
  CHECK(c.model.b == 6.0);
  CHECK(c.scenario == Scenario::kShearPerturbation);
  REQUIRE(c.cutoff_R.has_value());
  CHECK(*c.cutoff_R == 5.0);
  CHECK(c.deltas == std::vector<double>{1e-3, 1e-2, 0.1});
  CHECK(c.chi_mode == ChiMode::kDriftOnly);
  CHECK(c.fp_scheme == FPScheme::kSsprk3Explicit);
  CHECK(c.seed == 18446744073709551615ull);
}

TEST_CASE("serialization round trips bit-exactly") {
  RunConfig c;
  c.model.epsilon = 0.1 + 0.2;
  c.dt = 1.0 / 3.0;
  c.cutoff_R = 2.5;
  c.fp_horizons = {0.1, 1.0 / 7.0};
  const std::string text = serialize_run_config(c);
  const RunConfig back = parse_run_config(text);
  CHECK(back.model.epsilon == c.model.epsilon);
  CHECK(back.dt == c.dt);
  CHECK(back.fp_horizons == c.fp_horizons);
  CHECK(serialize_run_config(back) == text);
}

TEST_CASE("every key can be set and read back") {
  RunConfig c;
  for (const auto& key : config_keys()) {
    const std::string v = get_config_value(c, key);
    CHECK_NOTHROW(set_config_value(c, key, v));
    CHECK(get_config_value(c, key) == v);
  }
  CHECK(config_keys().size() > 40);
}

TEST_CASE("unknown and duplicate keys") {
  const ConfigError e1 = parse_error("model.b = 4\nmodel.bee = 3\n");
  CHECK(e1.line() == 2);
  CHECK(e1.field() == "model.bee");
  CHECK(std::string(e1.what()).find("unknown key") != std::string::npos);

  const ConfigError e2 = parse_error("run.dt = 0.01\n\nrun.dt = 0.02\n");
  CHECK(e2.line() == 3);
  CHECK(std::string(e2.what()).find("duplicate") != std::string::npos);
}

TEST_CASE("malformed values") {
  CHECK(parse_error("grid.n = 32.5\n").field() == "grid.n");
  CHECK(parse_error("model.a = one\n").line() == 1);
  CHECK(parse_error("scenario.kind = shear\n").field() == "scenario.kind");
  CHECK(parse_error("just some text\n").line() == 1);
  CHECK(parse_error("scenario.deltas = 1e-3,,2\n").field() == "scenario.deltas");
}

TEST_CASE("validation names the violated constraint") {
  const ConfigError e = parse_error("# comment\nmodel.b = 1.5\n");
  CHECK(e.code() == ErrorCode::kConfig);
  CHECK(e.field() == "model.b");
  CHECK(e.line() == 2);
  CHECK(std::string(e.what()).find("b > 2") != std::string::npos);

  CHECK(parse_error("run.s = 3\nrun.s_prime = 3\n").field() == "run.s_prime");
  CHECK(parse_error("scenario.ensemble = 50\n").field() == "scenario.ensemble");
  CHECK(parse_error("grid.n = 10\nfluid.n_modes = 6\n").field() == "fluid.n_modes");
  CHECK(parse_error("qspace.n_basis = 5\nscenario.psi_mode = 5\n").field() == "scenario.psi_mode");
  CHECK(parse_error("model.gamma = 1\n").field() == "model.gamma");
  CHECK(parse_error("run.dt = 0\n").field() == "run.dt");
}

TEST_CASE("scenario names") {
  CHECK(scenario_name(Scenario::kLemmaA1) == "lemma_a1");
  CHECK(scenario_name(Scenario::kContractionStudy) == "contraction_study");
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_run_config("/nonexistent/fene.conf"), IoError);
}
