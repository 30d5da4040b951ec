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

#include "fene/checkpoint.hpp"
#include "fene/diagnostics.hpp"
#include "fene/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

using namespace fene;
namespace fs = std::filesystem;

namespace {

RunConfig small_config() {
  RunConfig c;
  c.grid_n = 16;
  c.n_radial = 16;
  c.n_angular = 16;
  c.n_basis = 12;
  c.scenario = Scenario::kShearPerturbation;
  c.psi_amplitude = 0.01;
  c.psi_noise = 0.01;
  c.seed = 3;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path temp_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fene_ckpt_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("save and load round trip exactly") {
  const RunConfig cfg = small_config();
  Simulation sim(cfg);
  sim.step();
  sim.step();
  const fs::path dir = temp_dir("roundtrip");
  const std::string path = (dir / "a.fkp").string();
  sim.save(path);

  const Checkpoint ck = read_checkpoint(path);
  CHECK(ck.header.step == 2);
  CHECK(ck.header.grid_n == 16);
  CHECK(ck.header.n_basis == 12);
  CHECK(ck.header.b == 4.0);
  CHECK(ck.monitors == sim.monitors().pack());

  const CoupledState back = restore_state(ck, sim.op().basis_ptr());
  CHECK(back == sim.state());

  // Re-saving the restored state gives the same bytes.
  save_checkpoint((dir / "b.fkp").string(), back, sim.op(), 2, ck.monitors);
  CHECK(slurp(dir / "a.fkp") == slurp(dir / "b.fkp"));
  CHECK_FALSE(fs::exists(dir / "a.fkp.tmp"));
}

TEST_CASE("corrupt files are rejected") {
  const RunConfig cfg = small_config();
  Simulation sim(cfg);
  const fs::path dir = temp_dir("corrupt");
  const fs::path good = dir / "good.fkp";
  sim.save(good.string());
  const std::string bytes = slurp(good);

  auto write = [&](const std::string& name, const std::string& data) {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << data;
    return p.string();
  };

  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(read_checkpoint(write("magic.fkp", bad_magic)), VersionError);

  std::string bad_version = bytes;
  bad_version[4] = 9;
  CHECK_THROWS_AS(read_checkpoint(write("version.fkp", bad_version)), VersionError);

  CHECK_THROWS_AS(read_checkpoint(write("short.fkp", bytes.substr(0, bytes.size() / 2))), IoError);
  CHECK_THROWS_AS(read_checkpoint(write("header.fkp", bytes.substr(0, 10))), IoError);
  CHECK_THROWS_AS(read_checkpoint(write("long.fkp", bytes + "x")), IoError);
  CHECK_THROWS_AS(read_checkpoint((dir / "missing.fkp").string()), IoError);
}

TEST_CASE("basis mismatch is a version error") {
  RunConfig cfg = small_config();
  Simulation sim(cfg);
  const fs::path dir = temp_dir("mismatch");
  const std::string path = (dir / "a.fkp").string();
  sim.save(path);

  RunConfig other = cfg;
  other.n_basis = 10;
  CHECK_THROWS_AS(load_checkpoint(path, build_basis(other)), VersionError);
  other = cfg;
  other.n_radial = 20;
  CHECK_THROWS_AS(load_checkpoint(path, build_basis(other)), VersionError);
  CHECK_NOTHROW(load_checkpoint(path, build_basis(cfg)));
}

TEST_CASE("simulation continues identically from a checkpoint") {
  const RunConfig cfg = small_config();
  Simulation a(cfg);
  for (int k = 0; k < 3; ++k) a.step();
  const fs::path dir = temp_dir("continue");
  const std::string path = (dir / "mid.fkp").string();
  a.save(path);
  Simulation b(cfg, read_checkpoint(path));
  CHECK(b.steps_done() == 3);
  for (int k = 0; k < 3; ++k) {
    a.step();
    b.step();
  }
  CHECK(a.state().fluid == b.state().fluid);
  CHECK(a.state().psi.coeffs == b.state().psi.coeffs);
  CHECK(a.state().time == b.state().time);
  CHECK(a.monitors().pack() == b.monitors().pack());
  CHECK(format_series_row(a.record()) == format_series_row(b.record()));
}
