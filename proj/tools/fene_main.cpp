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

// fene run <config> | fene resume <checkpoint> <config> | fene report <run-dir>
//
// The exit status is the library status code (0 on success). Failures print
// "fene: <StatusName>: <message>" to stderr.

#include "fene/fene.h"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Overrides {
  std::optional<unsigned long long> seed;
  std::optional<std::string> output;
  std::optional<long long> max_steps;
  std::optional<double> ceiling;
};

int fail(fene_status st) {
  std::fprintf(stderr, "fene: %s: %s\n", fene_status_name(st), fene_last_error());
  return static_cast<int>(st);
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "RNG seed (run.seed)");
  cmd->add_option("--output", o.output, "Output directory (run.output_dir)");
  cmd->add_option("--max-steps", o.max_steps, "Stop and checkpoint after this many steps");
  cmd->add_option("--ceiling", o.ceiling, "Blow-up indicator cap (run.ceiling)");
}

// Loads the config and applies the command-line overrides.
fene_status load_config(const std::string& path, const Overrides& o, fene_config** cfg) {
  fene_status st = fene_config_load(path.c_str(), cfg);
  if (st != FENE_OK) return st;
  auto set = [&](const char* key, const std::string& value) {
    if (st == FENE_OK) st = fene_config_set(*cfg, key, value.c_str());
  };
  if (o.seed) set("run.seed", std::to_string(*o.seed));
  if (o.output) set("run.output_dir", *o.output);
  if (o.max_steps) set("run.max_steps", std::to_string(*o.max_steps));
  if (o.ceiling) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", *o.ceiling);
    set("run.ceiling", buf);
  }
  return st;
}

int finish_run(fene_config* cfg, fene_status st) {
  const std::string note = fene_last_error();
  char dir[4096];
  size_t needed = 0;
  fene_config_get(cfg, "run.output_dir", dir, sizeof(dir), &needed);
  if (st != FENE_OK) {
    std::fprintf(stderr, "fene: %s: %s\n", fene_status_name(st), note.c_str());
    const int code = static_cast<int>(st);
    std::fprintf(stderr, "fene: run directory %s\n", dir);
    fene_config_free(cfg);
    return code;
  }
  std::printf("fene: %s%s%s -> %s\n", note.empty() ? "completed" : "stopped",
              note.empty() ? "" : ": ", note.c_str(), dir);
  fene_config_free(cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressible FENE dumbbell simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fene_version()));

  Overrides run_o;
  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "Run the scenario of a config file");
  run->add_option("config", run_config, "Config file")->required();
  add_overrides(run, run_o);

  Overrides resume_o;
  std::string resume_ckpt;
  std::string resume_config;
  CLI::App* resume = app.add_subcommand("resume", "Continue a run from a checkpoint");
  resume->add_option("checkpoint", resume_ckpt, "Checkpoint (.fkp)")->required();
  resume->add_option("config", resume_config, "Config file")->required();
  add_overrides(resume, resume_o);

  std::string report_dir;
  CLI::App* report = app.add_subcommand("report", "Summarize a run directory");
  report->add_option("run-dir", report_dir, "Run directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    fene_config* cfg = nullptr;
    const fene_status st = load_config(run_config, run_o, &cfg);
    if (st != FENE_OK) {
      fene_config_free(cfg);
      return fail(st);
    }
    return finish_run(cfg, fene_run(cfg));
  }
  if (*resume) {
    fene_config* cfg = nullptr;
    const fene_status st = load_config(resume_config, resume_o, &cfg);
    if (st != FENE_OK) {
      fene_config_free(cfg);
      return fail(st);
    }
    return finish_run(cfg, fene_resume(cfg, resume_ckpt.c_str()));
  }
  size_t needed = 0;
  fene_status st = fene_report(report_dir.c_str(), nullptr, 0, &needed);
  if (st != FENE_OK && st != FENE_ERR_SIZE) return fail(st);
  std::vector<char> buf(needed);
  st = fene_report(report_dir.c_str(), buf.data(), buf.size(), &needed);
  if (st != FENE_OK) return fail(st);
  std::fputs(buf.data(), stdout);
  return 0;
}
