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

#include "fene/run_config.hpp"

#include "fene/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace fene {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) + ": " +
                        std::string(what),
                    0, std::string(key));
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (v.empty() || res.ec != std::errc() || res.ptr != end) bad_value(key, v, "expected a number");
  return out;
}

template <class Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (v.empty() || res.ec != std::errc() || res.ptr != end) bad_value(key, v, "expected an integer");
  return out;
}

std::vector<double> to_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  while (true) {
    const auto comma = v.find(',');
    out.push_back(to_double(key, trim(v.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i]);
  }
  return out;
}

template <class E>
struct Names {
  std::vector<std::pair<E, std::string_view>> table;
  std::string_view name(E e) const {
    for (const auto& [k, n] : table)
      if (k == e) return n;
    return "?";
  }
  E parse(std::string_view key, std::string_view v) const {
    std::string options;
    for (const auto& [k, n] : table) {
      if (n == v) return k;
      options += options.empty() ? "" : "|";
      options += n;
    }
    bad_value(key, v, "expected one of " + options);
  }
};

const Names<Scenario> kScenarios{{{Scenario::kEquilibrium, "equilibrium"},
                                   {Scenario::kShearPerturbation, "shear_perturbation"},
                                   {Scenario::kDensityBump, "density_bump"},
                                   {Scenario::kStressDifference, "stress_difference"},
                                   {Scenario::kContractionStudy, "contraction_study"},
                                   {Scenario::kLemmaA1, "lemma_a1"}}};
const Names<ForcingSpec::Kind> kForcing{{{ForcingSpec::Kind::kZero, "zero"},
                                         {ForcingSpec::Kind::kSteadyField, "steady_field"},
                                         {ForcingSpec::Kind::kTimePeriodic, "time_periodic"}}};
const Names<ChiMode> kChi{{{ChiMode::kBoth, "both"},
                           {ChiMode::kDriftOnly, "drift_only"},
                           {ChiMode::kOff, "off"}}};
const Names<FPScheme> kSchemes{{{FPScheme::kImexEuler, "imex_euler"},
                                {FPScheme::kSsprk3Explicit, "ssprk3_explicit"}}};

struct KeySpec {
  std::function<void(RunConfig&, std::string_view key, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
KeySpec real(T RunConfig::*outer, double T::*field) {
  return {[=](RunConfig& c, std::string_view k, std::string_view v) { (c.*outer).*field = to_double(k, v); },
          [=](const RunConfig& c) { return fmt((c.*outer).*field); }};
}
KeySpec real(double RunConfig::*field) {
  return {[=](RunConfig& c, std::string_view k, std::string_view v) { c.*field = to_double(k, v); },
          [=](const RunConfig& c) { return fmt(c.*field); }};
}
template <class Int>
KeySpec integer(Int RunConfig::*field) {
  return {[=](RunConfig& c, std::string_view k, std::string_view v) { c.*field = to_int<Int>(k, v); },
          [=](const RunConfig& c) { return std::to_string(c.*field); }};
}
KeySpec list(std::vector<double> RunConfig::*field) {
  return {[=](RunConfig& c, std::string_view k, std::string_view v) { c.*field = to_list(k, v); },
          [=](const RunConfig& c) { return fmt_list(c.*field); }};
}

const std::vector<std::pair<std::string, KeySpec>>& key_table() {
  static const std::vector<std::pair<std::string, KeySpec>> table = {
      {"model.a", real(&RunConfig::model, &ModelParams::a)},
      {"model.gamma", real(&RunConfig::model, &ModelParams::gamma)},
      {"model.mu_s", real(&RunConfig::model, &ModelParams::mu_s)},
      {"model.mu_b", real(&RunConfig::model, &ModelParams::mu_b)},
      {"model.epsilon", real(&RunConfig::model, &ModelParams::epsilon)},
      {"model.a11", real(&RunConfig::model, &ModelParams::a11)},
      {"model.lambda", real(&RunConfig::model, &ModelParams::lambda)},
      {"model.b", real(&RunConfig::model, &ModelParams::b)},
      {"forcing.kind",
       {[](RunConfig& c, std::string_view k, std::string_view v) { c.forcing.kind = kForcing.parse(k, v); },
        [](const RunConfig& c) { return std::string(kForcing.name(c.forcing.kind)); }}},
      {"forcing.amplitude", real(&RunConfig::forcing, &ForcingSpec::amplitude)},
      {"forcing.mode1",
       {[](RunConfig& c, std::string_view k, std::string_view v) { c.forcing.mode[0] = to_int<int>(k, v); },
        [](const RunConfig& c) { return std::to_string(c.forcing.mode[0]); }}},
      {"forcing.mode2",
       {[](RunConfig& c, std::string_view k, std::string_view v) { c.forcing.mode[1] = to_int<int>(k, v); },
        [](const RunConfig& c) { return std::to_string(c.forcing.mode[1]); }}},
      {"forcing.frequency", real(&RunConfig::forcing, &ForcingSpec::frequency)},
      {"grid.n", integer(&RunConfig::grid_n)},
      {"qspace.n_radial", integer(&RunConfig::n_radial)},
      {"qspace.n_angular", integer(&RunConfig::n_angular)},
      {"qspace.n_basis", integer(&RunConfig::n_basis)},
      {"qspace.chi_index", integer(&RunConfig::chi_index)},
      {"qspace.chi_mode",
       {[](RunConfig& c, std::string_view k, std::string_view v) { c.chi_mode = kChi.parse(k, v); },
        [](const RunConfig& c) { return std::string(kChi.name(c.chi_mode)); }}},
      {"fluid.cutoff_R",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          if (v == "none") {
            c.cutoff_R.reset();
          } else {
            c.cutoff_R = to_double(k, v);
          }
        },
        [](const RunConfig& c) { return c.cutoff_R ? fmt(*c.cutoff_R) : std::string("none"); }}},
      {"fluid.n_modes", integer(&RunConfig::n_modes)},
      {"fluid.cfl", real(&RunConfig::cfl)},
      {"fp.scheme",
       {[](RunConfig& c, std::string_view k, std::string_view v) { c.fp_scheme = kSchemes.parse(k, v); },
        [](const RunConfig& c) { return std::string(kSchemes.name(c.fp_scheme)); }}},
      {"run.dt", real(&RunConfig::dt)},
      {"run.steps", integer(&RunConfig::steps)},
      {"run.max_steps", integer(&RunConfig::max_steps)},
      {"run.series_every", integer(&RunConfig::series_every)},
      {"run.snapshot_every", integer(&RunConfig::snapshot_every)},
      {"run.s", integer(&RunConfig::s)},
      {"run.s_prime", integer(&RunConfig::s_prime)},
      {"run.ceiling", real(&RunConfig::ceiling)},
      {"run.seed", integer(&RunConfig::seed)},
      {"run.output_dir",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          if (v.empty()) bad_value(k, v, "expected a path");
          c.output_dir = std::string(v);
        },
        [](const RunConfig& c) { return c.output_dir; }}},
      {"scenario.kind",
       {[](RunConfig& c, std::string_view k, std::string_view v) { c.scenario = kScenarios.parse(k, v); },
        [](const RunConfig& c) { return std::string(kScenarios.name(c.scenario)); }}},
      {"scenario.amplitude", real(&RunConfig::amplitude)},
      {"scenario.rho0", real(&RunConfig::rho0)},
      {"scenario.psi_mode", integer(&RunConfig::psi_mode)},
      {"scenario.psi_amplitude", real(&RunConfig::psi_amplitude)},
      {"scenario.psi_wave1", integer(&RunConfig::psi_wave1)},
      {"scenario.psi_wave2", integer(&RunConfig::psi_wave2)},
      {"scenario.psi_noise", real(&RunConfig::psi_noise)},
      {"scenario.deltas", list(&RunConfig::deltas)},
      {"scenario.difference_horizon", real(&RunConfig::difference_horizon)},
      {"scenario.ensemble", integer(&RunConfig::ensemble)},
      {"scenario.lemma_deltas", list(&RunConfig::lemma_deltas)},
      {"fixed_point.horizon", real(&RunConfig::fp_horizon)},
      {"fixed_point.max_iters", integer(&RunConfig::fp_max_iters)},
      {"fixed_point.stop_tol", real(&RunConfig::fp_stop_tol)},
      {"fixed_point.horizons", list(&RunConfig::fp_horizons)},
  };
  return table;
}

const KeySpec& find_key(std::string_view key) {
  for (const auto& [name, spec] : key_table())
    if (name == key) return spec;
  throw ConfigError("unknown key '" + std::string(key) + "'", 0, std::string(key));
}

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(std::string(field) + " violates " + what, 0, field);
}

}  // namespace

std::string_view scenario_name(Scenario s) { return kScenarios.name(s); }

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, spec] : key_table()) k.push_back(name);
    return k;
  }();
  return keys;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  find_key(key).set(cfg, key, trim(value));
}

std::string get_config_value(const RunConfig& cfg, std::string_view key) {
  return find_key(key).get(cfg);
}

void validate_run_config(const RunConfig& c) {
  auto num = [](double x) { return " (got " + fmt(x) + ")"; };
  const ModelParams& m = c.model;
  require(m.a > 0.0, "model.a", "a > 0" + num(m.a));
  require(m.gamma > 1.0, "model.gamma", "gamma > 1" + num(m.gamma));
  require(m.mu_s > 0.0, "model.mu_s", "mu_s > 0" + num(m.mu_s));
  require(m.mu_b >= 0.0, "model.mu_b", "mu_b >= 0" + num(m.mu_b));
  require(m.epsilon >= 0.0, "model.epsilon", "epsilon >= 0" + num(m.epsilon));
  require(m.a11 > 0.0, "model.a11", "a11 > 0" + num(m.a11));
  require(m.lambda > 0.0, "model.lambda", "lambda > 0" + num(m.lambda));
  require(m.b > 2.0, "model.b", "b > 2" + num(m.b));
  require(c.forcing.mode[0] != 0 || c.forcing.mode[1] != 0, "forcing.mode1",
          "nonzero forcing wave vector");
  require(std::isfinite(c.forcing.amplitude), "forcing.amplitude", "finite amplitude");
  require(c.grid_n >= 8 && c.grid_n % 2 == 0, "grid.n", "n even and >= 8" + num(c.grid_n));
  require(c.n_radial >= 4, "qspace.n_radial", "n_radial >= 4" + num(c.n_radial));
  require(c.n_angular >= 8 && c.n_angular % 2 == 0, "qspace.n_angular",
          "n_angular even and >= 8" + num(c.n_angular));
  require(c.n_basis >= 1, "qspace.n_basis", "n_basis >= 1" + num(c.n_basis));
  require(c.chi_index >= 0, "qspace.chi_index", "chi_index >= 0" + num(c.chi_index));
  require(c.n_modes == -1 || (c.n_modes >= 1 && c.n_modes <= c.grid_n / 2), "fluid.n_modes",
          "n_modes = -1 or 1 <= n_modes <= n/2" + num(c.n_modes));
  require(c.cfl > 0.0, "fluid.cfl", "cfl > 0" + num(c.cfl));
  require(!c.cutoff_R || *c.cutoff_R > 0.0, "fluid.cutoff_R", "cutoff_R > 0");
  require(c.dt > 0.0, "run.dt", "dt > 0" + num(c.dt));
  require(c.steps >= 0, "run.steps", "steps >= 0");
  require(c.max_steps >= -1, "run.max_steps", "max_steps >= -1");
  require(c.series_every >= 1, "run.series_every", "series_every >= 1");
  require(c.snapshot_every >= 0, "run.snapshot_every", "snapshot_every >= 0");
  require(c.s >= 0 && c.s <= 8, "run.s", "0 <= s <= 8" + num(c.s));
  require(c.s_prime >= 0 && c.s_prime <= c.s - 1, "run.s_prime",
          "0 <= s_prime <= s - 1" + num(c.s_prime));
  require(c.ceiling > 0.0, "run.ceiling", "ceiling > 0" + num(c.ceiling));
  require(c.rho0 > 0.0, "scenario.rho0", "rho0 > 0" + num(c.rho0));
  require(c.psi_mode >= 0 && c.psi_mode < c.n_basis, "scenario.psi_mode",
          "0 <= psi_mode < n_basis" + num(c.psi_mode));
  require(c.psi_noise >= 0.0, "scenario.psi_noise", "psi_noise >= 0");
  require(c.deltas.size() >= 2, "scenario.deltas", "at least two perturbation sizes");
  for (double d : c.deltas) require(d > 0.0, "scenario.deltas", "deltas > 0" + num(d));
  require(c.difference_horizon > 0.0, "scenario.difference_horizon", "difference_horizon > 0");
  require(c.ensemble >= 100, "scenario.ensemble", "ensemble >= 100" + num(c.ensemble));
  require(!c.lemma_deltas.empty(), "scenario.lemma_deltas", "at least one delta");
  for (double d : c.lemma_deltas) require(d > 0.0, "scenario.lemma_deltas", "delta > 0" + num(d));
  require(c.fp_horizon > 0.0, "fixed_point.horizon", "horizon > 0" + num(c.fp_horizon));
  require(c.fp_max_iters >= 2, "fixed_point.max_iters", "max_iters >= 2" + num(c.fp_max_iters));
  require(c.fp_stop_tol >= 0.0, "fixed_point.stop_tol", "stop_tol >= 0");
  for (double h : c.fp_horizons) require(h > 0.0, "fixed_point.horizons", "horizons > 0" + num(h));
}

RunConfig parse_run_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (seen.count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'",
                        line_no, key);
    }
    try {
      set_config_value(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what(), line_no, key);
    }
    seen.emplace(key, line_no);
  }
  try {
    validate_run_config(cfg);
  } catch (const ConfigError& e) {
    const auto it = seen.find(e.field());
    const int line = it == seen.end() ? 0 : it->second;
    const std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
    throw ConfigError(where + e.what(), line, e.field());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string serialize_run_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [name, spec] : key_table()) out += name + " = " + spec.get(cfg) + "\n";
  return out;
}

}  // namespace fene
