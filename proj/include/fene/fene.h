/* Copyright 2026 The fene-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the fene simulation library.
 *
 * Every function returns a fene_status; on failure a message is available
 * from fene_last_error() (thread local, valid until the next call on the
 * same thread). Handles are opaque and owned by the caller. String outputs
 * use (buf, cap, needed): *needed receives the length including the
 * terminating NUL, and FENE_ERR_SIZE is returned when cap is too small.
 */

#ifndef FENE_FENE_H
#define FENE_FENE_H

#include <stddef.h>
#include <stdint.h>

#if defined(FENE_BUILDING_LIBRARY)
#define FENE_API __attribute__((visibility("default")))
#else
#define FENE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fene_status {
  FENE_OK = 0,
  FENE_ERR_CONFIG = 2,
  FENE_ERR_POSITIVITY = 3,
  FENE_ERR_STABILITY = 4,
  FENE_ERR_BLOWUP = 5,
  FENE_ERR_IO = 6,
  FENE_ERR_VERSION = 7,
  FENE_ERR_DOMAIN = 8,
  FENE_ERR_SIZE = 9,
  FENE_ERR_EIGEN = 10,
  FENE_ERR_INTERNAL = 11
} fene_status;

typedef struct fene_config fene_config;
typedef struct fene_sim fene_sim;

typedef struct fene_monitors {
  uint64_t step;
  double time;
  double mass;
  double momentum[2];
  double polymer_mass;
  double fp_l2m;
  double fp_h1m;
  double min_r;
  double max_r;
  double min_psi_sample;
  double blowup_indicator;
  double envelope_lower;
  double envelope_upper;
} fene_monitors;

FENE_API const char* fene_version(void);
/* Stable identifier such as "ConfigError". */
FENE_API const char* fene_status_name(fene_status status);
FENE_API const char* fene_last_error(void);

FENE_API fene_status fene_config_load(const char* path, fene_config** out);
FENE_API fene_status fene_config_parse(const char* text, fene_config** out);
/* Sets one key; the change is rolled back if the result fails validation. */
FENE_API fene_status fene_config_set(fene_config* cfg, const char* key, const char* value);
FENE_API fene_status fene_config_get(const fene_config* cfg, const char* key, char* buf, size_t cap,
                                     size_t* needed);
/* Canonical "key = value" text of the resolved configuration. */
FENE_API fene_status fene_config_serialize(const fene_config* cfg, char* buf, size_t cap,
                                           size_t* needed);
FENE_API void fene_config_free(fene_config* cfg);

FENE_API fene_status fene_sim_create(const fene_config* cfg, fene_sim** out);
/* Continues from a checkpoint written by fene_sim_save or a run. */
FENE_API fene_status fene_sim_load(const fene_config* cfg, const char* checkpoint, fene_sim** out);
FENE_API fene_status fene_sim_step(fene_sim* sim, int64_t n_steps);
FENE_API fene_status fene_sim_monitors(const fene_sim* sim, fene_monitors* out);
FENE_API fene_status fene_sim_save(const fene_sim* sim, const char* path);
FENE_API void fene_sim_free(fene_sim* sim);

/* Runs the configured scenario into the configured output directory. The
 * status is that of the run (solver failures included); the run directory
 * is written in every case except I/O failures. */
FENE_API fene_status fene_run(const fene_config* cfg);
FENE_API fene_status fene_resume(const fene_config* cfg, const char* checkpoint);
/* Text summary of a run directory. */
FENE_API fene_status fene_report(const char* run_dir, char* buf, size_t cap, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* FENE_FENE_H */
