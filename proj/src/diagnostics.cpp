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

#include "fene/diagnostics.hpp"

#include "fene/experiments.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace fene {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "': " + ec.message());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// psi/M perturbation used by several scenarios.
double psi_perturbation(const RunConfig& cfg, const std::vector<std::array<double, 5>>& noise,
                        int i, double x1, double x2) {
  double v = 0.0;
  if (i == cfg.psi_mode && cfg.psi_amplitude != 0.0) {
    v += cfg.psi_amplitude * std::cos(cfg.psi_wave1 * x1 + cfg.psi_wave2 * x2);
  }
  for (const auto& [index, k1, k2, amp, phase] : noise) {
    if (static_cast<int>(index) == i) v += amp * std::cos(k1 * x1 + k2 * x2 + phase);
  }
  return v;
}

}  // namespace

std::shared_ptr<const ConfigBasis> build_basis(const RunConfig& cfg) {
  return eigen_basis(build_quadrature(cfg.model.b, cfg.n_radial, cfg.n_angular), cfg.n_basis);
}

CoupledConfig make_coupled_config(const RunConfig& cfg) {
  CoupledConfig c;
  c.model = cfg.model;
  c.forcing = cfg.forcing;
  c.fluid.dt = cfg.dt;
  c.fluid.cutoff_R = cfg.cutoff_R;
  c.fluid.n_modes = cfg.n_modes;
  c.fluid.cfl = cfg.cfl;
  c.fp.dt = cfg.dt;
  c.fp.epsilon = cfg.model.epsilon;
  c.fp.scheme = cfg.fp_scheme;
  return c;
}

CoupledState initial_state(const RunConfig& cfg, std::shared_ptr<const ConfigBasis> basis) {
  const TorusGrid grid(cfg.grid_n);
  const double a = cfg.amplitude;
  const double rho0 = cfg.rho0;
  std::function<double(double, double)> rho = [rho0](double, double) { return rho0; };
  std::function<Vec2(double, double)> u = [](double, double) { return Vec2(0.0, 0.0); };
  switch (cfg.scenario) {
    case Scenario::kEquilibrium:
    case Scenario::kLemmaA1:
      break;
    case Scenario::kShearPerturbation:
    case Scenario::kStressDifference:
    case Scenario::kContractionStudy:
      u = [a](double, double x2) { return Vec2(a * std::sin(x2), 0.0); };
      break;
    case Scenario::kDensityBump:
      rho = [rho0, a](double x1, double x2) { return rho0 * (1.0 + a * std::cos(x1) * std::cos(x2)); };
      break;
  }
  FluidState fluid = make_fluid_state(grid, cfg.model, rho, u);

  // seeded low-mode noise: (basis index, k1, k2, amplitude, phase)
  std::vector<std::array<double, 5>> noise;
  if (cfg.psi_noise > 0.0) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    const int n_idx = std::min(basis->size(), 6);
    for (int i = 1; i < n_idx; ++i) {
      for (int k1 = -1; k1 <= 1; ++k1) {
        for (int k2 = 0; k2 <= 1; ++k2) {
          const double amp = cfg.psi_noise * normal(rng);
          const double ph = phase(rng);
          noise.push_back({static_cast<double>(i), static_cast<double>(k1),
                           static_cast<double>(k2), amp, ph});
        }
      }
    }
  }
  PolymerField psi = make_polymer(grid, basis, [&](int i, double x1, double x2) {
    return psi_perturbation(cfg, noise, i, x1, x2);
  });
  return CoupledState{std::move(fluid), std::move(psi), 0.0};
}

// ---------------------------------------------------------------------------

std::vector<double> MonitorState::pack() const {
  return {mass0,           momentum0[0],   momentum0[1],       momentum_scale,
          polymer_mass0,   inf_r0,         sup_r0,             grad_u_integral,
          u_sobolev_integral, source_integral, last_grad_u,    last_u_sobolev,
          last_source};
}

MonitorState MonitorState::unpack(const std::vector<double>& v) {
  if (v.size() != 13) throw VersionError("checkpoint monitor block has the wrong size");
  MonitorState m;
  m.mass0 = v[0];
  m.momentum0[0] = v[1];
  m.momentum0[1] = v[2];
  m.momentum_scale = v[3];
  m.polymer_mass0 = v[4];
  m.inf_r0 = v[5];
  m.sup_r0 = v[6];
  m.grad_u_integral = v[7];
  m.u_sobolev_integral = v[8];
  m.source_integral = v[9];
  m.last_grad_u = v[10];
  m.last_u_sobolev = v[11];
  m.last_source = v[12];
  return m;
}

std::vector<std::string> series_header(int s_max) {
  std::vector<std::string> h{"step", "time", "mass", "momentum_x", "momentum_y", "polymer_mass"};
  for (int s = 0; s <= s_max; ++s) h.push_back("fluid_energy_s" + std::to_string(s));
  for (const char* c : {"fp_l2m", "fp_h1m", "min_r", "min_psi_sample", "blowup_indicator",
                        "cutoff_active", "max_r", "envelope_lower", "envelope_upper",
                        "grad_u_integral", "u_sobolev_integral", "source_integral"}) {
    h.emplace_back(c);
  }
  return h;
}

std::string format_series_row(const SeriesRecord& r) {
  std::string out = std::to_string(r.step);
  auto add = [&out](double x) {
    out += ',';
    out += fmt17(x);
  };
  add(r.time);
  add(r.mass);
  add(r.momentum[0]);
  add(r.momentum[1]);
  add(r.polymer_mass);
  for (double e : r.fluid_energy) add(e);
  add(r.fp_l2m);
  add(r.fp_h1m);
  add(r.min_r);
  add(r.min_psi_sample);
  add(r.blowup_indicator);
  out += r.cutoff_active ? ",1" : ",0";
  add(r.max_r);
  add(r.envelope_lower);
  add(r.envelope_upper);
  add(r.grad_u_integral);
  add(r.u_sobolev_integral);
  add(r.source_integral);
  return out;
}

std::vector<SeriesRecord> read_series(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + csv_path + "' is empty");
  const int n_cols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
  const int n_energy = n_cols - 18;
  if (n_energy < 1) throw IoError("'" + csv_path + "' has an unexpected header");
  std::vector<SeriesRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
    if (static_cast<int>(v.size()) != n_cols) throw IoError("'" + csv_path + "' has a ragged row");
    SeriesRecord r;
    std::size_t k = 0;
    r.step = static_cast<std::uint64_t>(v[k++]);
    r.time = v[k++];
    r.mass = v[k++];
    r.momentum[0] = v[k++];
    r.momentum[1] = v[k++];
    r.polymer_mass = v[k++];
    for (int s = 0; s < n_energy; ++s) r.fluid_energy.push_back(v[k++]);
    r.fp_l2m = v[k++];
    r.fp_h1m = v[k++];
    r.min_r = v[k++];
    r.min_psi_sample = v[k++];
    r.blowup_indicator = v[k++];
    r.cutoff_active = v[k++] != 0.0;
    r.max_r = v[k++];
    r.envelope_lower = v[k++];
    r.envelope_upper = v[k++];
    r.grad_u_integral = v[k++];
    r.u_sobolev_integral = v[k++];
    r.source_integral = v[k++];
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------

Simulation::Simulation(const RunConfig& cfg)
    : cfg_(cfg),
      basis_(build_basis(cfg)),
      op_(std::make_unique<FPOperator>(basis_, cfg.model, cfg.effective_chi_index(), cfg.chi_mode)),
      ccfg_(make_coupled_config(cfg)),
      state_(initial_state(cfg, basis_)) {
  init_monitors();
}

Simulation::Simulation(const RunConfig& cfg, const Checkpoint& ckpt)
    : cfg_(cfg),
      basis_(build_basis(cfg)),
      op_(std::make_unique<FPOperator>(basis_, cfg.model, cfg.effective_chi_index(), cfg.chi_mode)),
      ccfg_(make_coupled_config(cfg)),
      state_(restore_state(ckpt, basis_)),
      mon_(MonitorState::unpack(ckpt.monitors)),
      step_(ckpt.header.step) {
  if (ckpt.header.grid_n != cfg.grid_n || ckpt.header.chi_index != op_->chi_index() ||
      ckpt.header.chi_mode != static_cast<int>(cfg.chi_mode)) {
    throw VersionError("checkpoint does not match the configuration (grid or cut-off)");
  }
}

void Simulation::sample_rates(double& grad_u, double& u_sob, double& source) const {
  const FluidState& f = state_.fluid;
  grad_u = sup_norm_gradient(f.u);
  u_sob = sobolev_norm_sq(f.u, cfg_.s + 1);
  source = sobolev_norm_sq(stress_field(state_.psi), cfg_.s) +
           sobolev_norm_sq(forcing_field(f.u.grid(), cfg_.forcing, state_.time), cfg_.s);
}

void Simulation::init_monitors() {
  const FluidState& f = state_.fluid;
  mon_.mass0 = total_mass(f, cfg_.model);
  const Vec2 p0 = total_momentum(f, cfg_.model);
  mon_.momentum0[0] = p0[0];
  mon_.momentum0[1] = p0[1];
  // sum_i int rho |u_i| dx on the grid
  const GridValues r = backward(f.r);
  const GridValues u = backward(f.u);
  const int np = f.r.grid().size();
  const double h = f.r.grid().spacing();
  double scale = 0.0;
  for (int k = 0; k < np; ++k) {
    const double rho = r_to_density(r.values[k], cfg_.model);
    scale += rho * (std::abs(u.values[k]) + std::abs(u.values[np + k]));
  }
  mon_.momentum_scale = scale * h * h;
  mon_.polymer_mass0 = polymer_mass(state_.psi);
  mon_.inf_r0 = grid_min(f.r);
  mon_.sup_r0 = grid_max(f.r);
  sample_rates(mon_.last_grad_u, mon_.last_u_sobolev, mon_.last_source);
}

void Simulation::step() {
  state_ = coupled_step(state_, *op_, ccfg_);
  ++step_;
  double g = 0.0, us = 0.0, src = 0.0;
  sample_rates(g, us, src);
  const double dt = ccfg_.fluid.dt;
  mon_.grad_u_integral += 0.5 * dt * (mon_.last_grad_u + g);
  mon_.u_sobolev_integral += 0.5 * dt * (mon_.last_u_sobolev + us);
  mon_.source_integral += 0.5 * dt * (mon_.last_source + src);
  mon_.last_grad_u = g;
  mon_.last_u_sobolev = us;
  mon_.last_source = src;
}

SeriesRecord Simulation::record() const {
  const FluidState& f = state_.fluid;
  SeriesRecord r;
  r.step = step_;
  r.time = state_.time;
  r.mass = total_mass(f, cfg_.model);
  const Vec2 p = total_momentum(f, cfg_.model);
  r.momentum[0] = p[0];
  r.momentum[1] = p[1];
  r.polymer_mass = polymer_mass(state_.psi);
  for (int s = 0; s <= cfg_.s; ++s) r.fluid_energy.push_back(fluid_energy(f, s));
  const FPEnergy e = fp_energy(state_.psi, cfg_.s);
  r.fp_l2m = e.l2m;
  r.fp_h1m = e.h1m;
  r.min_r = grid_min(f.r);
  r.max_r = grid_max(f.r);
  r.min_psi_sample = nonnegativity_report(state_.psi).min_psi;
  r.blowup_indicator = blowup_indicator(state_);
  r.cutoff_active = cfg_.cutoff_R.has_value() && sup_norm_w2inf(f.u) > *cfg_.cutoff_R;
  const Envelope env =
      max_principle_envelope(mon_.inf_r0, mon_.sup_r0, mon_.grad_u_integral, cfg_.model.gamma);
  r.envelope_lower = env.lower;
  r.envelope_upper = env.upper;
  r.grad_u_integral = mon_.grad_u_integral;
  r.u_sobolev_integral = mon_.u_sobolev_integral;
  r.source_integral = mon_.source_integral;
  return r;
}

void Simulation::save(const std::string& path) const {
  save_checkpoint(path, state_, *op_, step_, mon_.pack());
}

// ---------------------------------------------------------------------------

EnergyFit fit_energy(const std::vector<SeriesRecord>& series) {
  EnergyFit fit;
  if (series.empty()) return fit;
  constexpr double kFlat = 1e-12;  // log-energy changes below this count as constant
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double dlog = std::log(series[k].fp_l2m) - std::log(series[k - 1].fp_l2m);
    const double di = series[k].u_sobolev_integral - series[k - 1].u_sobolev_integral;
    if (dlog <= kFlat) continue;
    fit.fp_c = di > 0.0 ? std::max(fit.fp_c, dlog / di) : std::numeric_limits<double>::infinity();
  }
  const int s = static_cast<int>(series.front().fluid_energy.size()) - 1;
  const double e0 = series.front().fluid_energy[s];
  double sup_e = 0.0;
  for (const auto& r : series) {
    sup_e = std::max(sup_e, r.fluid_energy[s]);
    const double ratio = (sup_e + r.u_sobolev_integral) / (e0 + r.source_integral);
    fit.fluid_c = std::max(fit.fluid_c, ratio);
  }
  return fit;
}

std::string git_blob_sha1(const std::string& text) {
  const std::string blob = "blob " + std::to_string(text.size()) + '\0' + text;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1) {
    throw Error(ErrorCode::kInternal, "SHA-1 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

namespace {

ordered_json base_manifest(const RunConfig& cfg, const std::string& input_text) {
  const std::string resolved = serialize_run_config(cfg);
  ordered_json m;
  m["format"] = "fene-run/1";
  m["scenario"] = std::string(scenario_name(cfg.scenario));
  ordered_json conf = ordered_json::object();
  for (const auto& key : config_keys()) conf[key] = get_config_value(cfg, key);
  m["config"] = conf;
  m["config_hash"] = git_blob_sha1(resolved);
  if (!input_text.empty()) m["input_hash"] = git_blob_sha1(input_text);
  return m;
}

void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::string text = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += fmt17(row[i]);
    }
    text += '\n';
  }
  write_atomic(path, text);
}

ordered_json json_number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

void run_experiment(const RunConfig& cfg, const fs::path& dir, ordered_json& manifest) {
  ordered_json res;
  switch (cfg.scenario) {
    case Scenario::kStressDifference: {
      const DifferenceResult d = stress_difference_experiment(cfg);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < d.deltas.size(); ++i) {
        rows.push_back({d.deltas[i], d.fluid_distance[i], d.fp_distance[i]});
      }
      write_csv(dir / "difference.csv", "delta,fluid_distance,fp_distance", rows);
      res["fluid_slope"] = json_number(d.fluid_slope);
      res["fp_slope"] = json_number(d.fp_slope);
      break;
    }
    case Scenario::kContractionStudy: {
      const auto runs = contraction_study(cfg, cfg.fp_horizons);
      std::vector<std::vector<double>> rows;
      ordered_json list = ordered_json::array();
      for (const auto& r : runs) {
        for (std::size_t k = 0; k < r.report.distances.size(); ++k) {
          const double ratio = k < r.report.ratios.size() ? r.report.ratios[k] : std::nan("");
          rows.push_back({r.horizon, static_cast<double>(k + 1), r.report.distances[k], ratio});
        }
        ordered_json e;
        e["horizon"] = r.horizon;
        e["n_steps"] = r.n_steps;
        e["dt"] = r.dt;
        e["ratios"] = r.report.ratios;
        e["max_ratio"] = r.report.ratios.empty()
                             ? json_number(std::nan(""))
                             : json_number(*std::max_element(r.report.ratios.begin(),
                                                             r.report.ratios.end()));
        e["converged"] = r.report.converged;
        e["floor"] = r.report.floor;
        e["monolithic_distance"] = r.monolithic_distance;
        list.push_back(e);
      }
      write_csv(dir / "contraction.csv", "horizon,iteration,distance,ratio", rows);
      res["horizons"] = list;
      break;
    }
    case Scenario::kLemmaA1: {
      const LemmaA1Result l = lemma_a1_experiment(cfg);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < l.deltas.size(); ++i) rows.push_back({l.deltas[i], l.c_delta[i]});
      write_csv(dir / "lemma_a1.csv", "delta,c_delta", rows);
      res["ensemble"] = l.ensemble;
      res["c_delta"] = l.c_delta;
      res["finite"] = l.finite;
      res["monotone"] = l.monotone;
      res["pure_m_ratio"] = l.pure_m_ratio;
      res["pure_m_h1"] = l.pure_m_h1;
      break;
    }
    default:
      break;
  }
  manifest["results"] = res;
}

bool is_experiment(Scenario s) {
  return s == Scenario::kStressDifference || s == Scenario::kContractionStudy ||
         s == Scenario::kLemmaA1;
}

RunOutcome finish(ordered_json& manifest, const fs::path& dir, RunOutcome outcome) {
  manifest["status"] = outcome.status;
  manifest["code"] = static_cast<int>(outcome.code);
  manifest["message"] = outcome.message;
  write_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  return outcome;
}

RunOutcome failure(const Error& e, const fs::path& dir) {
  return RunOutcome{e.code(), std::string(error_code_name(e.code())), e.what(), dir.string()};
}

RunOutcome time_stepping(const RunConfig& cfg, const std::string& input_text,
                         const std::string* checkpoint_path) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  ordered_json manifest = base_manifest(cfg, input_text);

  std::unique_ptr<Simulation> sim;
  std::string series_text;
  try {
    if (checkpoint_path) {
      const Checkpoint ckpt = read_checkpoint(*checkpoint_path);
      sim = std::make_unique<Simulation>(cfg, ckpt);
      manifest["resumed_from"] = *checkpoint_path;
      manifest["resumed_step"] = sim->steps_done();
    } else {
      sim = std::make_unique<Simulation>(cfg);
    }
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    return finish(manifest, dir, failure(e, dir));
  }

  // header, then any rows already written up to the resume point
  std::string header;
  for (const auto& h : series_header(cfg.s)) header += (header.empty() ? "" : ",") + h;
  series_text = header + "\n";
  const fs::path series_path = dir / "series.csv";
  if (checkpoint_path && fs::exists(series_path)) {
    std::istringstream old(read_text(series_path));
    std::string line;
    std::getline(old, line);
    while (std::getline(old, line)) {
      if (line.empty()) continue;
      const auto step = std::stoull(line.substr(0, line.find(',')));
      if (step < sim->steps_done()) series_text += line + "\n";
    }
  }

  const auto total = static_cast<std::uint64_t>(cfg.steps);
  const std::uint64_t stop =
      cfg.max_steps >= 0 ? std::min(total, static_cast<std::uint64_t>(cfg.max_steps)) : total;
  const fs::path snapshots = dir / "snapshots";
  RunOutcome outcome{ErrorCode::kOk, "completed", "", dir.string()};
  std::vector<SeriesRecord> rows;
  try {
    if (sim->steps_done() % cfg.series_every == 0 || sim->steps_done() == total) {
      series_text += format_series_row(sim->record()) + "\n";
    }
    while (sim->steps_done() < stop) {
      sim->step();
      const std::uint64_t n = sim->steps_done();
      if (n % cfg.series_every == 0 || n == total) {
        series_text += format_series_row(sim->record()) + "\n";
      }
      if (cfg.snapshot_every > 0 && n % static_cast<std::uint64_t>(cfg.snapshot_every) == 0) {
        char name[64];
        std::snprintf(name, sizeof(name), "step_%010llu.fkp", static_cast<unsigned long long>(n));
        fs::create_directories(snapshots);
        sim->save((snapshots / name).string());
      }
      const double indicator = blowup_indicator(sim->state());
      if (!(indicator <= cfg.ceiling)) {
        throw BlowupCeiling("blow-up indicator " + fmt17(indicator) + " exceeds the ceiling " +
                            fmt17(cfg.ceiling) + " at t = " + fmt17(sim->state().time));
      }
    }
    if (sim->steps_done() < total) {
      outcome.status = "stopped";
      outcome.message = "max_steps reached at step " + std::to_string(sim->steps_done());
    }
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    outcome = failure(e, dir);
  }

  write_atomic(series_path, series_text);
  sim->save((dir / "checkpoint.fkp").string());

  const MonitorState& mon = sim->monitors();
  ordered_json m;
  m["mass0"] = mon.mass0;
  m["momentum0"] = {mon.momentum0[0], mon.momentum0[1]};
  m["momentum_scale"] = mon.momentum_scale;
  m["polymer_mass0"] = mon.polymer_mass0;
  m["inf_r0"] = mon.inf_r0;
  m["sup_r0"] = mon.sup_r0;
  manifest["initial"] = m;
  manifest["steps_done"] = sim->steps_done();
  manifest["final_time"] = sim->state().time;
  const EnergyFit fit = fit_energy(read_series(series_path.string()));
  manifest["energy_fit"] = {{"fp_c", json_number(fit.fp_c)}, {"fluid_c", json_number(fit.fluid_c)}};
  return finish(manifest, dir, outcome);
}

}  // namespace

RunOutcome run(const RunConfig& cfg, const std::string& input_text) {
  if (!is_experiment(cfg.scenario)) return time_stepping(cfg, input_text, nullptr);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  ordered_json manifest = base_manifest(cfg, input_text);
  try {
    run_experiment(cfg, dir, manifest);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    return finish(manifest, dir, failure(e, dir));
  }
  return finish(manifest, dir, RunOutcome{ErrorCode::kOk, "completed", "", dir.string()});
}

RunOutcome resume(const RunConfig& cfg, const std::string& checkpoint_path,
                  const std::string& input_text) {
  if (is_experiment(cfg.scenario)) {
    throw ConfigError("scenario " + std::string(scenario_name(cfg.scenario)) +
                          " has no time stepping to resume",
                      0, "scenario.kind");
  }
  return time_stepping(cfg, input_text, &checkpoint_path);
}

std::string report(const std::string& run_dir) {
  const fs::path dir(run_dir);
  const ordered_json m = ordered_json::parse(read_text(dir / "manifest.json"), nullptr, false);
  if (m.is_discarded()) throw IoError("'" + (dir / "manifest.json").string() + "' is not valid JSON");
  std::ostringstream out;
  out.precision(6);
  out << "run directory: " << run_dir << "\n";
  out << "scenario:      " << m.value("scenario", "?") << "\n";
  out << "status:        " << m.value("status", "?");
  if (!m.value("message", "").empty()) out << " (" << m.value("message", "") << ")";
  out << "\n";
  out << "config hash:   " << m.value("config_hash", "?") << "\n";
  if (m.contains("results")) out << "results:       " << m["results"].dump() << "\n";

  const fs::path series_path = dir / "series.csv";
  if (fs::exists(series_path)) {
    const auto rows = read_series(series_path.string());
    if (!rows.empty()) {
      const SeriesRecord& a = rows.front();
      const SeriesRecord& b = rows.back();
      const double scale = m.contains("initial") ? m["initial"].value("momentum_scale", 0.0) : 0.0;
      auto rel = [](double x, double x0) { return std::abs(x - x0) / std::max(std::abs(x0), 1e-300); };
      double min_r = a.min_r, max_r = a.max_r, min_psi = a.min_psi_sample, max_blowup = 0.0;
      bool inside = true;
      for (const auto& r : rows) {
        min_r = std::min(min_r, r.min_r);
        max_r = std::max(max_r, r.max_r);
        min_psi = std::min(min_psi, r.min_psi_sample);
        max_blowup = std::max(max_blowup, r.blowup_indicator);
        inside = inside && r.min_r >= r.envelope_lower && r.max_r <= r.envelope_upper;
      }
      out << "steps:         " << a.step << " .. " << b.step << "  (t = " << a.time << " .. "
          << b.time << ")\n";
      out << "mass drift:    " << rel(b.mass, a.mass) << " (relative)\n";
      const double dp = std::abs(b.momentum[0] - a.momentum[0]) + std::abs(b.momentum[1] - a.momentum[1]);
      out << "momentum drift:" << ' ' << (scale > 0.0 ? dp / scale : dp)
          << (scale > 0.0 ? " (relative to int rho|u|)" : " (absolute)") << "\n";
      out << "polymer drift: " << rel(b.polymer_mass, a.polymer_mass) << " (relative)\n";
      out << "r range:       [" << min_r << ", " << max_r << "], envelope "
          << (inside ? "respected" : "VIOLATED") << "\n";
      out << "min psi:       " << min_psi << "\n";
      out << "max blow-up:   " << max_blowup << "\n";
      const EnergyFit fit = fit_energy(rows);
      out << "energy fit:    fp c = " << fit.fp_c << ", fluid c = " << fit.fluid_c << "\n";
    }
  }
  return out.str();
}

}  // namespace fene
