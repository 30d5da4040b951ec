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

#include "fene/error.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

namespace fene {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'F', 'K', 'P', 'D'};

class Writer {
 public:
  template <class T>
  void put(T v) {
    const auto* p = reinterpret_cast<const char*>(&v);
    buf_.insert(buf_.end(), p, p + sizeof(T));
  }
  void put_field(const SpectralField& f) {
    const auto d = f.data();
    const auto* p = reinterpret_cast<const char*>(d.data());
    buf_.insert(buf_.end(), p, p + d.size() * sizeof(Complex));
  }
  void raw(const char* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
  const std::vector<char>& bytes() const { return buf_; }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  Reader(std::vector<char> buf, std::string path) : buf_(std::move(buf)), path_(std::move(path)) {}
  void need(std::size_t n) const {
    if (buf_.size() - pos_ < n) throw IoError("checkpoint '" + path_ + "' is truncated");
  }
  template <class T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, buf_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  void get_field(SpectralField& f) {
    auto d = f.data();
    const std::size_t n = d.size() * sizeof(Complex);
    need(n);
    std::memcpy(reinterpret_cast<char*>(d.data()), buf_.data() + pos_, n);
    pos_ += n;
  }
  bool at_end() const { return pos_ == buf_.size(); }

 private:
  std::vector<char> buf_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_checkpoint(const std::string& path, const CoupledState& state, const FPOperator& op,
                     std::uint64_t step, const std::vector<double>& monitors) {
  const ConfigBasis& basis = op.basis();
  const ConfigQuadrature& quad = basis.quadrature();
  if (state.psi.basis.get() != &basis) {
    throw SizeMismatch("save_checkpoint: state and operator use different bases");
  }
  Writer w;
  w.raw(kMagic, 4);
  w.put<std::uint32_t>(kCheckpointVersion);
  w.put<std::int32_t>(state.fluid.r.grid().n());
  w.put<std::int32_t>(basis.size());
  w.put<std::int32_t>(quad.n_radial());
  w.put<std::int32_t>(quad.n_angular());
  w.put<std::int32_t>(basis.radial_dim());
  w.put<std::int32_t>(op.chi_index());
  w.put<std::int32_t>(static_cast<std::int32_t>(op.chi_mode()));
  w.put<double>(quad.b());
  w.put<std::uint64_t>(step);
  w.put<double>(state.time);
  w.put<double>(state.fluid.time);
  w.put<double>(state.psi.time);
  w.put<double>(state.psi.initial_mass);
  w.put<std::uint64_t>(monitors.size());
  for (double m : monitors) w.put<double>(m);
  w.put_field(state.fluid.r);
  w.put_field(state.fluid.u);
  w.put_field(state.psi.coeffs);

  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint '" + tmp.string() + "'");
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    out.flush();
    if (!out) throw IoError("write failed for checkpoint '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename checkpoint to '" + path + "': " + ec.message());
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path + "'");
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(std::move(buf), path);

  char magic[4];
  for (char& c : magic) c = r.get<char>();
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw VersionError("'" + path + "' is not a checkpoint (bad magic)");
  }
  CheckpointHeader h;
  h.version = r.get<std::uint32_t>();
  if (h.version != kCheckpointVersion) {
    throw VersionError("checkpoint '" + path + "' has format version " + std::to_string(h.version) +
                       ", expected " + std::to_string(kCheckpointVersion));
  }
  h.grid_n = r.get<std::int32_t>();
  h.n_basis = r.get<std::int32_t>();
  h.n_radial = r.get<std::int32_t>();
  h.n_angular = r.get<std::int32_t>();
  h.radial_dim = r.get<std::int32_t>();
  h.chi_index = r.get<std::int32_t>();
  h.chi_mode = r.get<std::int32_t>();
  h.b = r.get<double>();
  h.step = r.get<std::uint64_t>();
  if (h.grid_n < 8 || h.grid_n % 2 != 0 || h.grid_n > 4096 || h.n_basis < 1 || h.n_basis > 100000) {
    throw VersionError("checkpoint '" + path + "' has an invalid header");
  }
  const double time = r.get<double>();
  const double fluid_time = r.get<double>();
  const double psi_time = r.get<double>();
  const double initial_mass = r.get<double>();
  const auto n_monitors = r.get<std::uint64_t>();
  r.need(n_monitors * sizeof(double));
  std::vector<double> monitors(n_monitors);
  for (double& m : monitors) m = r.get<double>();

  const TorusGrid grid(h.grid_n);
  FluidState fluid{SpectralField(grid, 1), SpectralField(grid, 2), fluid_time};
  SpectralField psi(grid, h.n_basis);
  r.get_field(fluid.r);
  r.get_field(fluid.u);
  r.get_field(psi);
  if (!r.at_end()) throw IoError("checkpoint '" + path + "' has trailing bytes");
  return Checkpoint{h, time, std::move(fluid), std::move(psi), psi_time, initial_mass,
                    std::move(monitors)};
}

CoupledState restore_state(const Checkpoint& ckpt, std::shared_ptr<const ConfigBasis> basis) {
  const CheckpointHeader& h = ckpt.header;
  const ConfigQuadrature& quad = basis->quadrature();
  if (basis->size() != h.n_basis || quad.n_radial() != h.n_radial ||
      quad.n_angular() != h.n_angular || basis->radial_dim() != h.radial_dim || quad.b() != h.b) {
    throw VersionError("checkpoint was written with a different configuration-space basis");
  }
  PolymerField psi{std::move(basis), ckpt.psi_coeffs, ckpt.psi_time, ckpt.psi_initial_mass};
  return CoupledState{ckpt.fluid, std::move(psi), ckpt.time};
}

CoupledState load_checkpoint(const std::string& path, std::shared_ptr<const ConfigBasis> basis) {
  return restore_state(read_checkpoint(path), std::move(basis));
}

}  // namespace fene
