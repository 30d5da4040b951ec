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

#include "fene/fene.h"

#include "fene/diagnostics.hpp"
#include "fene/error.hpp"
#include "fene/run_config.hpp"

#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

struct fene_config {
  fene::RunConfig cfg;
  std::string input_text;
};

struct fene_sim {
  std::unique_ptr<fene::Simulation> sim;
};

namespace {

thread_local std::string g_last_error;

fene_status set_error(fene::ErrorCode code, const std::string& msg) {
  g_last_error = msg;
  return static_cast<fene_status>(code);
}

// Runs fn and maps exceptions to status codes.
template <class F>
fene_status guarded(F&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const fene::Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(fene::ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return set_error(fene::ErrorCode::kInternal, e.what());
  } catch (...) {
    return set_error(fene::ErrorCode::kInternal, "unknown exception");
  }
}

fene_status null_arg(const char* what) {
  return set_error(fene::ErrorCode::kDomain, std::string("null argument: ") + what);
}

fene_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1) {
    return set_error(fene::ErrorCode::kSizeMismatch, "output buffer too small");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return FENE_OK;
}

fene_status outcome_status(const fene::RunOutcome& o) {
  if (o.code != fene::ErrorCode::kOk) return set_error(o.code, o.message);
  g_last_error = o.message;
  return FENE_OK;
}

}  // namespace

extern "C" {

const char* fene_version(void) { return "0.1.0"; }

const char* fene_status_name(fene_status status) {
  // error_code_name returns views of string literals
  return fene::error_code_name(static_cast<fene::ErrorCode>(status)).data();
}

const char* fene_last_error(void) { return g_last_error.c_str(); }

fene_status fene_config_load(const char* path, fene_config** out) {
  if (!path || !out) return null_arg("path/out");
  *out = nullptr;
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fene::IoError(std::string("cannot open config file '") + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    auto c = std::make_unique<fene_config>();
    c->cfg = fene::parse_run_config(text.str());
    c->input_text = text.str();
    *out = c.release();
    return FENE_OK;
  });
}

fene_status fene_config_parse(const char* text, fene_config** out) {
  if (!text || !out) return null_arg("text/out");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<fene_config>();
    c->cfg = fene::parse_run_config(text);
    c->input_text = text;
    *out = c.release();
    return FENE_OK;
  });
}

fene_status fene_config_set(fene_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return null_arg("cfg/key/value");
  return guarded([&] {
    fene::RunConfig next = cfg->cfg;
    fene::set_config_value(next, key, value);
    fene::validate_run_config(next);
    cfg->cfg = std::move(next);
    return FENE_OK;
  });
}

fene_status fene_config_get(const fene_config* cfg, const char* key, char* buf, size_t cap,
                            size_t* needed) {
  if (!cfg || !key) return null_arg("cfg/key");
  return guarded([&] { return copy_out(fene::get_config_value(cfg->cfg, key), buf, cap, needed); });
}

fene_status fene_config_serialize(const fene_config* cfg, char* buf, size_t cap, size_t* needed) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] { return copy_out(fene::serialize_run_config(cfg->cfg), buf, cap, needed); });
}

void fene_config_free(fene_config* cfg) { delete cfg; }

fene_status fene_sim_create(const fene_config* cfg, fene_sim** out) {
  if (!cfg || !out) return null_arg("cfg/out");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<fene_sim>();
    s->sim = std::make_unique<fene::Simulation>(cfg->cfg);
    *out = s.release();
    return FENE_OK;
  });
}

fene_status fene_sim_load(const fene_config* cfg, const char* checkpoint, fene_sim** out) {
  if (!cfg || !checkpoint || !out) return null_arg("cfg/checkpoint/out");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<fene_sim>();
    s->sim = std::make_unique<fene::Simulation>(cfg->cfg, fene::read_checkpoint(checkpoint));
    *out = s.release();
    return FENE_OK;
  });
}

fene_status fene_sim_step(fene_sim* sim, int64_t n_steps) {
  if (!sim) return null_arg("sim");
  if (n_steps < 0) return set_error(fene::ErrorCode::kDomain, "n_steps must be >= 0");
  return guarded([&] {
    for (int64_t k = 0; k < n_steps; ++k) sim->sim->step();
    return FENE_OK;
  });
}

fene_status fene_sim_monitors(const fene_sim* sim, fene_monitors* out) {
  if (!sim || !out) return null_arg("sim/out");
  return guarded([&] {
    const fene::SeriesRecord r = sim->sim->record();
    out->step = r.step;
    out->time = r.time;
    out->mass = r.mass;
    out->momentum[0] = r.momentum[0];
    out->momentum[1] = r.momentum[1];
    out->polymer_mass = r.polymer_mass;
    out->fp_l2m = r.fp_l2m;
    out->fp_h1m = r.fp_h1m;
    out->min_r = r.min_r;
    out->max_r = r.max_r;
    out->min_psi_sample = r.min_psi_sample;
    out->blowup_indicator = r.blowup_indicator;
    out->envelope_lower = r.envelope_lower;
    out->envelope_upper = r.envelope_upper;
    return FENE_OK;
  });
}

fene_status fene_sim_save(const fene_sim* sim, const char* path) {
  if (!sim || !path) return null_arg("sim/path");
  return guarded([&] {
    sim->sim->save(path);
    return FENE_OK;
  });
}

void fene_sim_free(fene_sim* sim) { delete sim; }

fene_status fene_run(const fene_config* cfg) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] { return outcome_status(fene::run(cfg->cfg, cfg->input_text)); });
}

fene_status fene_resume(const fene_config* cfg, const char* checkpoint) {
  if (!cfg || !checkpoint) return null_arg("cfg/checkpoint");
  return guarded(
      [&] { return outcome_status(fene::resume(cfg->cfg, checkpoint, cfg->input_text)); });
}

fene_status fene_report(const char* run_dir, char* buf, size_t cap, size_t* needed) {
  if (!run_dir) return null_arg("run_dir");
  return guarded([&] { return copy_out(fene::report(run_dir), buf, cap, needed); });
}

}  // extern "C"
