// Copyright 2026 The collisim Authors
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

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Lines tagged INFO are diagnostics and never affect the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "collisim/engine.hpp"
#include "collisim/ledger.hpp"
#include "collisim/nonmarkov.hpp"
#include "collisim/output.hpp"
#include "collisim/scenarios.hpp"
#include "collisim/thermo.hpp"

using namespace collisim;
using namespace collisim::scenarios;
using engine::AaMode;
using engine::Backend;
using engine::Metric;
namespace la = collisim::linalg;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr LogBase kBase = LogBase::bits;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Named {
  std::string name;
  CollisionConfig cfg;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every trajectory the six scenarios produce at their defaults.
std::vector<Named> scenario_configs() {
  std::vector<Named> out;
  out.push_back({"thermalization", thermalization_config({}, kSeed, kBase)});
  const NonMarkovParams nm;
  for (const AaMode mode : nm.modes)
    for (const double p : nm.p_grid)
      out.push_back({"nonmarkov_sweep " + engine::to_string(mode) + " p=" + fmt(p),
                     nonmarkov_config(nm, mode, p, kSeed, kBase)});
  BatteryParams battery;
  out.push_back({"battery inverting", battery_config(battery, kSeed, kBase)});
  battery.coupling = BatteryCoupling::thermalizing;
  out.push_back({"battery thermalizing", battery_config(battery, kSeed, kBase)});
  out.push_back({"two_qubit_local_global", two_qubit_config({}, kSeed, kBase)});
  LandauerParams landauer;
  for (const double beta : landauer.beta_grid)
    out.push_back({"landauer xx beta=" + fmt(beta), landauer_config(landauer, beta, kSeed, kBase)});
  landauer.coupling = LandauerCoupling::partial_swap;
  for (const double beta : landauer.beta_grid)
    out.push_back({"landauer swap beta=" + fmt(beta), landauer_config(landauer, beta, kSeed, kBase)});
  const ContinuousLimitParams cl;
  for (const double tau : cl.tau_grid)
    out.push_back({"continuous_limit tau=" + fmt(tau), continuous_limit_config(cl, tau, kSeed, kBase)});
  return out;
}

struct ScenarioRun {
  std::string name;
  CollisionConfig cfg;
  Trajectory traj;
};

const std::vector<ScenarioRun>& scenario_runs() {
  static const std::vector<ScenarioRun> runs = [] {
    std::vector<ScenarioRun> r;
    for (auto& n : scenario_configs()) r.push_back({n.name, n.cfg, engine::run(n.cfg)});
    return r;
  }();
  return runs;
}

Outcome thermalization() {
  const auto t0 = std::chrono::steady_clock::now();
  const ThermalizationParams p;
  const auto s = summarize_thermalization(p, engine::run(thermalization_config(p, kSeed, kBase)));
  const double secs = seconds_since(t0);
  return {s.final_distance < 1e-6 && s.max_increase <= 1e-12 && secs < 5.0,
          "final distance " + fmt(s.final_distance) + " (< 1e-6), max step increase " +
              fmt(s.max_increase) + " (<= 1e-12), " + fmt(secs) + " s (< 5 s)"};
}

Outcome contractivity() {
  std::mt19937_64 rng(2024);
  double worst_trace = -1.0, worst_js = -1.0;
  for (int channel = 0; channel < 10; ++channel) {
    CollisionConfig cfg;
    cfg.system_hamiltonian = testing::random_hermitian(2, rng);
    cfg.system_init = DensityMatrix::maximally_mixed(2);
    cfg.streams = {engine::AncillaStreamSpec::prepared(testing::random_hermitian(2, rng),
                                                       testing::random_state(2, rng))};
    cfg.interactions = {testing::random_hermitian(4, rng)};
    cfg.tau = 0.2 + 0.2 * channel;
    cfg.n_steps = 1;
    const engine::Collider collider(cfg);
    for (int pair = 0; pair < 100; ++pair) {
      const DensityMatrix a = pair % 5 == 0 ? testing::random_pure(2, rng) : testing::random_state(2, rng);
      const DensityMatrix b = testing::random_state(2, rng);
      const auto ta = collider.run(a);
      const auto tb = collider.run(b);
      worst_trace = std::max(worst_trace, qstate::trace_distance(ta.snapshots[1], tb.snapshots[1]) -
                                              qstate::trace_distance(a, b));
      worst_js = std::max(worst_js, qstate::js_distance(ta.snapshots[1], tb.snapshots[1]) -
                                        qstate::js_distance(a, b));
    }
  }
  return {worst_trace <= 1e-10 && worst_js <= 1e-10,
          "1000 pairs; max increase trace " + fmt(worst_trace) + ", Jensen-Shannon " +
              fmt(worst_js) + " (<= 1e-10)"};
}

Outcome revival_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const NonMarkovParams nm;
  double min_slack = 1e300, max_lhs = -1e300;
  std::size_t checked = 0;
  for (const Metric metric : {Metric::trace, Metric::jensen_shannon}) {
    for (const AaMode mode : nm.modes) {
      for (const double p : nm.p_grid) {
        const nonmarkov::RevivalAnalysis analysis(nonmarkov_config(nm, mode, p, kSeed, kBase),
                                                  DensityMatrix::basis(2, 0),
                                                  DensityMatrix::basis(2, 1), metric);
        for (const auto& r : analysis.all_bounds()) {
          min_slack = std::min(min_slack, r.slack);
          max_lhs = std::max(max_lhs, r.lhs);
          ++checked;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {min_slack >= -1e-9 && max_lhs > 1e-4 && secs < 60.0,
          std::to_string(checked) + " (s,t) pairs over 8 ancillas (512-dim joint); min slack " +
              fmt(min_slack) + " (>= -1e-9), max revival " + fmt(max_lhs) + " (> 1e-4), " +
              fmt(secs) + " s (< 60 s)"};
}

Outcome backend_equivalence() {
  double worst = 0.0;
  std::size_t compared = 0;
  for (const auto& n : scenario_configs()) {
    CollisionConfig full = n.cfg;
    full.backend = Backend::full;
    // Truncate to the longest run that fits the cap.
    while (full.n_steps > 1 && full.full_backend_qubits() > full.full_qubit_cap) --full.n_steps;
    CollisionConfig windowed = n.cfg;
    windowed.n_steps = full.n_steps;
    const auto a = engine::run(windowed);
    const auto b = engine::run(full);
    for (std::size_t k = 0; k < a.snapshots.size(); ++k)
      worst = std::max(worst, qstate::trace_distance(a.snapshots[k], b.snapshots[k]));
    ++compared;
  }
  return {worst < 1e-10, std::to_string(compared) + " scenario configs truncated to the cap; max trace distance " +
                             fmt(worst) + " (< 1e-10)"};
}

Outcome first_law() {
  double worst = 0.0, worst_cumulative_ratio = 0.0;
  for (const auto& r : scenario_runs()) {
    const auto ledger = thermo::build_ledger(r.traj);
    worst = std::max(worst, ledger.max_first_law_residual);
    worst_cumulative_ratio = std::max(worst_cumulative_ratio,
                                      ledger.cumulative_first_law_residual /
                                          (1e-9 * static_cast<double>(ledger.steps.size())));
  }
  return {worst < 1e-9 && worst_cumulative_ratio < 1.0,
          "max per-collision residual " + fmt(worst) + " (< 1e-9); max cumulative residual / (1e-9 n_steps) " +
              fmt(worst_cumulative_ratio) + " (< 1)"};
}

double max_abs_work(const Trajectory& t) {
  double w = 0.0;
  for (const auto& r : t.records) w = std::max(w, std::abs(r.W));
  return w;
}

Outcome switching_work() {
  double swap_work = 0.0;
  for (const auto& r : scenario_runs())
    if (r.cfg.partial_swap_theta) swap_work = std::max(swap_work, max_abs_work(r.traj));
  double battery_work = 0.0, xx_work = 1e300;
  for (const auto& r : scenario_runs()) {
    if (r.name == "battery inverting") battery_work = max_abs_work(r.traj);
    if (r.name.rfind("landauer xx", 0) == 0) xx_work = std::min(xx_work, max_abs_work(r.traj));
  }

  // Interaction library on resonant qubits, H = σz/2 on each side.
  const auto x = la::pauli_x(), y = la::pauli_y(), z = la::pauli_z();
  const std::vector<ComplexMatrix> library{la::swap_operator(2),      la::kron(x, x) + la::kron(y, y),
                                           la::kron(x, y) - la::kron(y, x), la::kron(z, z),
                                           la::kron(x, x) - la::kron(y, y), la::kron(x, x),
                                           la::kron(x, z),            la::kron(y, y) + la::kron(z, x)};
  const ComplexMatrix h = 0.5 * z;
  const ComplexMatrix h0 = la::kron(h, la::identity(2)) + la::kron(la::identity(2), h);
  std::mt19937_64 rng(77);
  std::size_t agree = 0;
  for (const auto& v : library) {
    const bool commutes = la::commutator_norm(h0, v) < 1e-12;
    double w = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      CollisionConfig cfg;
      cfg.system_hamiltonian = h;
      cfg.system_init = testing::random_state(2, rng);
      cfg.streams = {engine::AncillaStreamSpec::thermal(h, 0.5 + trial)};
      cfg.interactions = {v};
      cfg.tau = 0.6;
      cfg.n_steps = 5;
      w = std::max(w, max_abs_work(engine::run(cfg)));
    }
    if ((w < 1e-10) == commutes && (commutes || w > 1e-6)) ++agree;
  }
  return {swap_work < 1e-10 && battery_work > 1e-6 && xx_work > 1e-6 && agree == library.size(),
          "partial SWAP max |W| " + fmt(swap_work) + " (< 1e-10); transient max |W| battery " +
              fmt(battery_work) + ", σxσx " + fmt(xx_work) + " (nonzero); zero work iff commuting in " +
              std::to_string(agree) + "/" + std::to_string(library.size()) + " couplings"};
}

Outcome second_law() {
  double worst_gap = 1e300, min_info = 1e300, worst_decomposition = 0.0;
  std::size_t bath_records = 0;
  for (const auto& r : scenario_runs()) {
    for (const auto& rec : r.traj.records) {
      worst_gap = std::min(worst_gap, rec.Sigma - rec.I_SE);
      min_info = std::min(min_info, rec.I_SE);
      if (rec.bath_beta && rec.D_relent) {
        worst_decomposition = std::max(worst_decomposition, std::abs(rec.Sigma - rec.I_SE - *rec.D_relent));
        ++bath_records;
      }
    }
  }
  return {worst_gap >= -1e-9 && min_info >= -1e-9 && worst_decomposition < 1e-9,
          "min (Σ - I) " + fmt(worst_gap) + ", min I " + fmt(min_info) +
              " (>= -1e-9); thermal units |Σ - I - D| max " + fmt(worst_decomposition) + " over " +
              std::to_string(bath_records) + " collisions (< 1e-9)"};
}

Outcome battery() {
  BatteryParams p;
  const auto inv = summarize_battery(p, engine::run(battery_config(p, kSeed, kBase)));
  p.coupling = BatteryCoupling::thermalizing;
  const auto th = summarize_battery(p, engine::run(battery_config(p, kSeed, kBase)));
  const bool pass = inv.population_inverted && inv.distance_to_inverted < 1e-6 &&
                    std::abs(inv.fluxes.Q_rate) < 1e-8 && std::abs(inv.fluxes.W_rate) < 1e-8 &&
                    th.distance_to_thermal < 1e-6;
  return {pass, "XX-YY: distance to inverted state " + fmt(inv.distance_to_inverted) +
                    " (< 1e-6), |Q_rate| " + fmt(std::abs(inv.fluxes.Q_rate)) + ", |W_rate| " +
                    fmt(std::abs(inv.fluxes.W_rate)) + " (< 1e-8); XX+YY: distance to thermal " +
                    fmt(th.distance_to_thermal) + " (< 1e-6)"};
}

Outcome blp_sweep() {
  // Golden values, seed 1, default sweep parameters.
  const std::vector<double> golden_coherent{0.0, 0.0, 0.0, 0.20673182678775606, 0.9510565162951539};
  const std::vector<double> golden_incoherent{0.0, 0.0, 0.4755282581475765, 0.4755282581475765,
                                              0.9510565162951539};
  const NonMarkovParams nm;
  const auto points = run_nonmarkov_sweep(nm, kSeed, kBase);
  bool zero_at_zero = true, positive_at_one = true;
  double golden_dev = 0.0;
  std::ostringstream vals;
  for (const auto& pt : points) {
    const std::size_t i = static_cast<std::size_t>(&pt - points.data());
    const auto& golden = pt.mode == AaMode::coherent ? golden_coherent : golden_incoherent;
    const double g = golden[i % nm.p_grid.size()];
    golden_dev = std::max(golden_dev, std::abs(pt.blp - g));
    if (pt.p == 0.0) zero_at_zero = zero_at_zero && pt.blp == 0.0;
    if (pt.p == 1.0) positive_at_one = positive_at_one && pt.blp > 0.0;
    if (pt.p == 1.0) vals << engine::to_string(pt.mode) << " " << fmt(pt.blp) << " ";
  }
  return {zero_at_zero && positive_at_one && golden_dev < 1e-12,
          "p=0 exactly 0: " + std::string(zero_at_zero ? "yes" : "no") + "; p=1 " + vals.str() +
              "(> 0); max deviation from golden " + fmt(golden_dev) + " (< 1e-12)"};
}

Outcome landauer(std::string& info) {
  const LandauerParams p;
  const auto points = run_landauer(p, kSeed, kBase);
  double worst_residual = 0.0, min_gap = 1e300, literal = 0.0;
  for (const auto& pt : points) {
    worst_residual = std::max(worst_residual, std::abs(pt.report.residual));
    min_gap = std::min(min_gap, pt.report.landauer_gap);
    literal = std::max(literal, std::abs(pt.anc_form_gap));
  }
  info = "βQ - ΔS_E - (I + D) with ΔS_E the ancilla entropy change reaches " + fmt(literal) +
         " = I_SE; that reading of the identity is off by the S:E mutual information";
  return {worst_residual < 1e-8 && min_gap >= 0.0,
          "β grid {0.1, 0.5, 1, 2}: |βQ + ΔS_S - I - D| max " + fmt(worst_residual) +
              " (< 1e-8); min (βQ - ΔS_E) " + fmt(min_gap) + " (>= 0)"};
}

Outcome determinism() {
  std::size_t identical = 0;
  for (const auto& name : registry()) {
    ScenarioSpec spec;
    spec.name = name;
    spec.seed = 31337;
    const auto a = output::trajectory_csv(run_scenario(spec).primary);
    const auto b = output::trajectory_csv(run_scenario(spec).primary);
    if (a == b && !a.empty()) ++identical;
  }
  return {identical == registry().size(),
          std::to_string(identical) + "/" + std::to_string(registry().size()) +
              " scenarios byte-identical on re-run"};
}

Outcome continuous_limit() {
  const auto s = run_continuous_limit({}, kSeed, kBase);
  std::ostringstream os;
  for (double d : s.max_deviation) os << fmt(d) << " ";
  return {s.strictly_decreasing, "max deviation per τ {0.1, 0.05, 0.025, 0.0125}: " + os.str() +
                                     "(strictly decreasing)"};
}

}  // namespace

int main() {
  std::string landauer_info;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"thermalization", thermalization},
      {"contractivity", contractivity},
      {"revival bound", revival_bound},
      {"backend equivalence", backend_equivalence},
      {"first law", first_law},
      {"switching work", switching_work},
      {"second law", second_law},
      {"battery", battery},
      {"BLP sweep", blp_sweep},
      {"Landauer", [&] { return landauer(landauer_info); }},
      {"determinism", determinism},
      {"continuous limit", continuous_limit},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    if (!landauer_info.empty()) {
      std::printf("INFO %2zu %s: %s\n", i + 1, criteria[i].first.c_str(), landauer_info.c_str());
      landauer_info.clear();
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
