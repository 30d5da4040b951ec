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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs at the default desk-scale resolution.

#include "fene/checkpoint.hpp"
#include "fene/config_space.hpp"
#include "fene/diagnostics.hpp"
#include "fene/experiments.hpp"
#include "fene/model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <string>
#include <vector>

using namespace fene;
namespace fs = std::filesystem;

namespace {

constexpr double kEquilibriumTol = 1e-10;
constexpr double kDriftTol = 1e-8;
constexpr double kKramersTol = 1e-8;
constexpr double kMassTol = 1e-10;
constexpr double kResidualTol = 1e-8;
constexpr double kLambda0Tol = 1e-8;
constexpr double kEigenStabilityTol = 1e-6;
constexpr double kEnergyConstantMax = 1e2;
constexpr double kMonolithicTol = 1e-4;
constexpr double kSlopeTol = 0.1;
constexpr double kMinOrder = 2.7;
constexpr int kLongSteps = 1000;

struct Line {
  int id;
  bool pass;
  std::string detail;
};
std::vector<Line> lines;

void report(int id, bool pass, const std::string& detail) {
  lines.push_back({id, pass, detail});
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

RunConfig shipped(const std::string& name) {
  return load_run_config(std::string(FENE_CONFIG_DIR) + "/" + name + ".conf");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "fene_acceptance" / name;
  fs::remove_all(d);
  return d;
}

// Every monitored scalar of one record.
std::vector<double> monitored(const SeriesRecord& r) {
  std::vector<double> v{r.mass, r.momentum[0], r.momentum[1], r.polymer_mass, r.fp_l2m, r.fp_h1m,
                        r.min_r, r.max_r, r.min_psi_sample, r.blowup_indicator};
  v.insert(v.end(), r.fluid_energy.begin(), r.fluid_energy.end());
  return v;
}

struct ScenarioRun {
  std::vector<SeriesRecord> series;
  MonitorState monitors;
  std::string error;
};

ScenarioRun run_in_process(const RunConfig& cfg) {
  ScenarioRun out;
  try {
    Simulation sim(cfg);
    out.series.push_back(sim.record());
    for (std::int64_t k = 0; k < cfg.steps; ++k) {
      sim.step();
      out.series.push_back(sim.record());
    }
    out.monitors = sim.monitors();
  } catch (const Error& e) {
    out.error = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  return out;
}

struct EpsResult {
  bool c1 = false, c2 = false, c5 = false, c6 = false;
  std::string d1, d2, d5, d6;
};

bool envelope_holds(const ScenarioRun& r, double& worst) {
  worst = 0.0;
  bool ok = r.error.empty();
  for (const auto& s : r.series) {
    // tiny slack for the rounding of the envelope exponentials
    const double tol = 1e-12 * s.envelope_upper;
    ok = ok && s.min_r >= s.envelope_lower - tol && s.max_r <= s.envelope_upper + tol;
    worst = std::max({worst, s.envelope_lower - s.min_r, s.max_r - s.envelope_upper});
  }
  return ok;
}

EpsResult criteria_at(double epsilon) {
  EpsResult res;
  const std::string tag = fmt("eps=%g", epsilon);

  // 1: equilibrium fixed point
  RunConfig eq = shipped("equilibrium");
  eq.model.epsilon = epsilon;
  eq.steps = kLongSteps;
  const ScenarioRun e = run_in_process(eq);
  double change = 0.0;
  if (e.error.empty()) {
    const auto v0 = monitored(e.series.front());
    for (const auto& s : e.series) {
      const auto v = monitored(s);
      for (std::size_t i = 0; i < v.size(); ++i) change = std::max(change, std::abs(v[i] - v0[i]));
    }
  }
  res.c1 = e.error.empty() && change <= kEquilibriumTol;
  res.d1 = tag + fmt(" max change %.3e", change) + (e.error.empty() ? "" : " " + e.error);

  // 2 and 6: shear perturbation
  RunConfig sh = shipped("shear_perturbation");
  sh.model.epsilon = epsilon;
  sh.steps = kLongSteps;
  const ScenarioRun s = run_in_process(sh);
  double dm = 0.0, dp = 0.0, dpsi = 0.0;
  if (s.error.empty()) {
    const MonitorState& m = s.monitors;
    for (const auto& r : s.series) {
      dm = std::max(dm, std::abs(r.mass - m.mass0) / m.mass0);
      const double scale = m.momentum_scale > 0.0 ? m.momentum_scale : 1.0;
      dp = std::max(dp, std::hypot(r.momentum[0] - m.momentum0[0], r.momentum[1] - m.momentum0[1]) / scale);
      dpsi = std::max(dpsi, std::abs(r.polymer_mass - m.polymer_mass0) / m.polymer_mass0);
    }
  }
  res.c2 = s.error.empty() && dm < kDriftTol && dp < kDriftTol && dpsi < kDriftTol;
  res.d2 = tag + fmt(" mass %.2e", dm) + fmt(" momentum %.2e", dp) + fmt(" polymer %.2e", dpsi) +
           (s.error.empty() ? "" : " " + s.error);

  EnergyFit fit{};
  if (s.error.empty()) fit = fit_energy(s.series);
  res.c6 = s.error.empty() && fit.fp_c <= kEnergyConstantMax && fit.fluid_c <= kEnergyConstantMax;
  res.d6 = tag + fmt(" fp c %.3g", fit.fp_c) + fmt(" fluid c %.3g", fit.fluid_c);

  // 5: envelope on every time-stepping scenario, full horizon
  RunConfig db = shipped("density_bump");
  db.model.epsilon = epsilon;
  const ScenarioRun d = run_in_process(db);
  double w_eq, w_sh, w_db;
  const bool ok_eq = envelope_holds(e, w_eq);
  const bool ok_sh = envelope_holds(s, w_sh);
  const bool ok_db = envelope_holds(d, w_db);
  res.c5 = ok_eq && ok_sh && ok_db;
  res.d5 = tag + fmt(" worst excess eq %.2e", w_eq) + fmt(" shear %.2e", w_sh) +
           fmt(" bump %.2e", w_db) + (d.error.empty() ? "" : " " + d.error);
  return res;
}

double state_distance(const CoupledState& a, const CoupledState& b) {
  return std::sqrt(sobolev_norm_sq(a.fluid.r - b.fluid.r, 0) + sobolev_norm_sq(a.fluid.u - b.fluid.u, 0) +
                   sobolev_norm_sq(a.psi.coeffs - b.psi.coeffs, 0));
}

void criterion3() {
  const auto quad = build_quadrature(4.0, 32, 32);
  const double mass = quad->integrate([](const QuadNode& n) { return maxwellian(n.t * 4.0, 4.0); });
  const Mat2 t = kramers_stress(*quad, Eigen::VectorXd::Ones(quad->size()));
  const double err = (t - Mat2::Identity()).cwiseAbs().maxCoeff();
  report(3, err < kKramersTol && std::abs(mass - 1.0) < kMassTol,
         fmt("kramers max error %.2e", err) + fmt(", mass - 1 = %.2e", mass - 1.0));
}

void criterion4() {
  const auto coarse = eigen_basis(build_quadrature(4.0, 32, 32), 40);
  const auto fine = eigen_basis(build_quadrature(4.0, 64, 32), 40);
  const double residual = std::max(coarse->max_residual(), fine->max_residual());
  const double lambda0 = std::abs(coarse->eigenvalue(0));
  double drift = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double a = coarse->eigenvalue(i), b = fine->eigenvalue(i);
    drift = std::max(drift, i == 0 ? std::abs(a - b) : std::abs(a - b) / std::abs(b));
  }
  report(4, residual < kResidualTol && lambda0 < kLambda0Tol && drift < kEigenStabilityTol,
         fmt("residual %.2e", residual) + fmt(", |lambda0| %.2e", lambda0) +
             fmt(", eigenvalue drift 32->64 %.2e", drift));
}

void criterion7() {
  RunConfig c = shipped("contraction_study");
  c.fp_max_iters = 5;
  c.fp_stop_tol = 0.0;
  const auto runs = contraction_study(c, {0.05});
  const ContractionRun& r = runs.front();
  bool ok = !r.report.ratios.empty() && r.monolithic_distance < kMonolithicTol;
  double worst = 0.0;
  for (double q : r.report.ratios) {
    ok = ok && q < 1.0;
    worst = std::max(worst, q);
  }
  report(7, ok,
         fmt("T=0.05: %g ratios", static_cast<double>(r.report.ratios.size())) +
             fmt(", max ratio %.3e", worst) + fmt(", monolithic distance %.2e", r.monolithic_distance));
}

void criterion8() {
  const DifferenceResult r = stress_difference_experiment(shipped("stress_difference"));
  report(8, std::abs(r.fluid_slope - 1.0) <= kSlopeTol && std::abs(r.fp_slope - 1.0) <= kSlopeTol,
         fmt("fluid slope %.6f", r.fluid_slope) + fmt(", fp slope %.6f", r.fp_slope));
}

void criterion10() {
  RunConfig c = shipped("shear_perturbation");
  c.fp_scheme = FPScheme::kSsprk3Explicit;
  c.psi_amplitude = 0.05;
  c.psi_mode = 3;
  c.model.epsilon = 0.01;
  Simulation sim(c);
  const CoupledState x0 = sim.state();
  const FPOperator& op = sim.op();
  const double horizon = 0.1;
  const double bound = coupled_stability_bound(x0, op, sim.coupled_config());
  const int n = std::max(10, static_cast<int>(std::ceil(horizon / (0.5 * bound))));
  auto solve = [&](int steps) {
    CoupledConfig cc = sim.coupled_config();
    cc.fluid.dt = horizon / steps;
    cc.fp.dt = cc.fluid.dt;
    CoupledState x = x0;
    for (int k = 0; k < steps; ++k) x = coupled_step(x, op, cc);
    return x;
  };
  std::string err;
  double order = 0.0, e1 = 0.0, e2 = 0.0;
  try {
    const CoupledState a = solve(n), b = solve(2 * n), d = solve(4 * n);
    e1 = state_distance(a, b);
    e2 = state_distance(b, d);
    order = std::log2(e1 / e2);
  } catch (const Error& e) {
    err = e.what();
  }
  report(10, err.empty() && order >= kMinOrder,
         fmt("dt %.3e", horizon / n) + fmt(", differences %.3e", e1) + fmt(" / %.3e", e2) +
             fmt(", order %.3f", order) + (err.empty() ? "" : " " + err));
}

void criterion11() {
  RunConfig c = shipped("shear_perturbation");
  c.steps = 20;
  c.series_every = 1;
  c.snapshot_every = 0;
  c.psi_noise = 0.01;
  c.seed = 42;
  bool ok = true;
  std::string detail;
  try {
    c.output_dir = scratch("full").string();
    ok = ok && run(c).code == ErrorCode::kOk;
    RunConfig twin = c;
    twin.output_dir = scratch("twin").string();
    ok = ok && run(twin).code == ErrorCode::kOk;
    const bool same_seed = slurp(fs::path(c.output_dir) / "series.csv") ==
                           slurp(fs::path(twin.output_dir) / "series.csv");

    RunConfig part = c;
    part.output_dir = scratch("part").string();
    part.max_steps = 8;
    ok = ok && run(part).status == "stopped";
    part.max_steps = -1;
    ok = ok && resume(part, (fs::path(part.output_dir) / "checkpoint.fkp").string()).code ==
                   ErrorCode::kOk;
    const bool same_series = slurp(fs::path(c.output_dir) / "series.csv") ==
                             slurp(fs::path(part.output_dir) / "series.csv");
    const bool same_ckpt = slurp(fs::path(c.output_dir) / "checkpoint.fkp") ==
                           slurp(fs::path(part.output_dir) / "checkpoint.fkp");
    ok = ok && same_seed && same_series && same_ckpt;
    detail = std::string("seeded csv ") + (same_seed ? "identical" : "DIFFERENT") + ", resumed csv " +
             (same_series ? "identical" : "DIFFERENT") + ", resumed checkpoint " +
             (same_ckpt ? "identical" : "DIFFERENT");
  } catch (const Error& e) {
    ok = false;
    detail = e.what();
  }
  report(11, ok, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion3();
  criterion4();

  std::map<double, EpsResult> by_eps;
  for (double eps : {0.0, 0.01}) by_eps[eps] = criteria_at(eps);
  auto both = [&](auto member_ok, auto member_detail) {
    bool ok = true;
    std::string detail;
    for (const auto& [eps, r] : by_eps) {
      ok = ok && r.*member_ok;
      detail += (detail.empty() ? "" : "; ") + r.*member_detail;
    }
    return std::make_pair(ok, detail);
  };
  const auto c1 = both(&EpsResult::c1, &EpsResult::d1);
  const auto c2 = both(&EpsResult::c2, &EpsResult::d2);
  const auto c5 = both(&EpsResult::c5, &EpsResult::d5);
  const auto c6 = both(&EpsResult::c6, &EpsResult::d6);
  report(1, c1.first, c1.second);
  report(2, c2.first, c2.second);
  report(5, c5.first, c5.second);
  report(6, c6.first, c6.second);

  criterion7();
  criterion8();

  std::string d9;
  bool ok9 = true;
  for (const auto& [eps, r] : by_eps) {
    const bool ok = r.c1 && r.c2 && r.c5 && r.c6;
    ok9 = ok9 && ok;
    d9 += std::string(d9.empty() ? "" : ", ") + fmt("eps=%g ", eps) + (ok ? "all of 1,2,5,6" : "failed");
  }
  report(9, ok9, d9);

  criterion10();
  criterion11();

  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  int failed = 0;
  for (const auto& l : lines) failed += l.pass ? 0 : 1;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("summary: %d/%zu criteria passed in %.1f s\n", static_cast<int>(lines.size()) - failed,
              lines.size(), secs);
  return failed == 0 ? 0 : 1;
}
