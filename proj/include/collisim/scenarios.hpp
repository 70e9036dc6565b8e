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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collisim/engine.hpp"
#include "collisim/ledger.hpp"
#include "collisim/nonmarkov.hpp"

// Named experiments. Defaults live here; a JSON object of overrides may
// replace any listed parameter, and an unlisted key is a ConfigError.
namespace collisim::scenarios {

using engine::CollisionConfig;
using engine::Trajectory;
using nlohmann::json;

enum class Emit { csv, json, both };

struct ScenarioSpec {
  std::string name;
  json overrides = json::object();
  std::filesystem::path output_path = ".";
  Emit emit = Emit::csv;
  std::uint64_t seed = 1;
  LogBase log_base = LogBase::bits;
};

const std::vector<std::string>& registry();
bool is_registered(const std::string& name);

// --- thermalization --------------------------------------------------------

struct ThermalizationParams {
  double omega = 1.0;
  double beta = 1.0;
  double theta = 0.05 * std::numbers::pi;
  std::size_t n_steps = 2000;
  std::array<double, 3> init_bloch{std::numbers::sqrt2 / 2, 0.0, std::numbers::sqrt2 / 2};
  double erasure_lambda = 1.0;
  engine::Backend backend = engine::Backend::windowed;
  std::size_t full_qubit_cap = 10;
};

struct ThermalizationSummary {
  std::vector<double> distance_to_thermal;  // index n = after n collisions
  double final_distance = 0;
  double max_increase = 0;
  bool monotone = false;  // no increase beyond 1e-12
};

CollisionConfig thermalization_config(const ThermalizationParams& p, std::uint64_t seed,
                                      LogBase base);
ThermalizationSummary summarize_thermalization(const ThermalizationParams& p,
                                               const Trajectory& traj);

// --- nonmarkov_sweep -------------------------------------------------------

struct NonMarkovParams {
  double omega = 1.0;
  double beta = 1.0;
  double theta = 0.15 * std::numbers::pi;
  double aa_theta = std::numbers::pi / 2;
  std::vector<double> p_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<engine::AaMode> modes{engine::AaMode::coherent, engine::AaMode::incoherent};
  std::size_t n_steps = 8;
  engine::Metric metric = engine::Metric::trace;
  std::size_t full_qubit_cap = 10;
};

struct SweepPoint {
  engine::AaMode mode = engine::AaMode::coherent;
  double p = 0;
  std::vector<double> series;
  double blp = 0;
  std::optional<std::size_t> first_revival;
  std::optional<nonmarkov::BoundReport> dominant_bound;  // when a revival exists
  std::optional<double> min_slack;  // over every (s, t); absent if over the cap
  Trajectory trajectory;  // the run started from |0⟩, D_pair filled
};

/// The paired initial states |0⟩, |1⟩ of a sweep point.
CollisionConfig nonmarkov_config(const NonMarkovParams& p, engine::AaMode mode, double prob,
                                 std::uint64_t seed, LogBase base);
std::vector<SweepPoint> run_nonmarkov_sweep(const NonMarkovParams& p, std::uint64_t seed,
                                            LogBase base);

// --- battery ---------------------------------------------------------------

enum class BatteryCoupling { inverting, thermalizing };  // XX - YY, XX + YY

struct BatteryParams {
  double omega = 1.0;
  double beta = 1.0;
  double g = 1.0;
  double tau = 0.5;
  std::size_t n_steps = 400;
  std::size_t window = thermo::kDefaultWindow;
  BatteryCoupling coupling = BatteryCoupling::inverting;
};

struct BatterySummary {
  double p_ground = 0, p_excited = 0;
  double distance_to_inverted = 0;  // to the thermal state of -H at β
  double distance_to_thermal = 0;   // to the thermal state at +β
  bool population_inverted = false;
  double ergotropy = 0;
  thermo::FluxReport fluxes;
  double max_transient_work = 0;
};

CollisionConfig battery_config(const BatteryParams& p, std::uint64_t seed, LogBase base);
/// Throws NotConvergedError if the fluxes have not settled.
BatterySummary summarize_battery(const BatteryParams& p, const Trajectory& traj);

// --- two_qubit_local_global ------------------------------------------------

enum class InternalCoupling { xx, exchange };  // κ σx σx, κ (σxσx + σyσy)

struct TwoQubitParams {
  double omega = 1.0;
  double kappa = 0.2;
  InternalCoupling internal = InternalCoupling::xx;
  double beta_1 = 0.5;
  double beta_2 = 2.0;
  double g = 1.0;
  double tau = 0.5;
  std::size_t n_steps = 600;
  std::size_t window = thermo::kDefaultWindow;
  engine::Backend backend = engine::Backend::windowed;
  std::size_t full_qubit_cap = 10;
};

struct TwoQubitSummary {
  std::array<double, 2> heat_current{};  // steady Q per collision into bath unit i
  double work_rate = 0;
  double total_work = 0;
  double max_abs_work = 0;
  double max_first_law_residual = 0;
  double cumulative_sigma = 0;
  double global_commutator = 0;  // ‖[H_I, V_1]‖
  bool current_sign_consistent = false;
  thermo::FluxReport fluxes;
};

CollisionConfig two_qubit_config(const TwoQubitParams& p, std::uint64_t seed, LogBase base);
TwoQubitSummary summarize_two_qubit(const TwoQubitParams& p, const Trajectory& traj);

// --- landauer --------------------------------------------------------------

enum class LandauerCoupling { xx, partial_swap };

struct LandauerParams {
  double omega = 1.0;
  double g = 1.0;
  double tau = 0.5;
  double theta = 0.25 * std::numbers::pi;  // used by partial_swap
  LandauerCoupling coupling = LandauerCoupling::xx;
  std::vector<double> beta_grid{0.1, 0.5, 1.0, 2.0};
  std::size_t n_steps = 600;
  std::size_t window = thermo::kDefaultWindow;
};

struct LandauerPoint {
  double beta = 0;
  thermo::LandauerReport report;
  // βQ - ΔS_anc - I_SE - D, the form that drops the system entropy change;
  // equals -I_SE at steady state.
  double anc_form_gap = 0;
};

CollisionConfig landauer_config(const LandauerParams& p, double beta, std::uint64_t seed,
                                LogBase base);
/// Throws NotConvergedError if any grid point has not settled.
std::vector<LandauerPoint> run_landauer(const LandauerParams& p, std::uint64_t seed,
                                        LogBase base, Trajectory* first_trajectory = nullptr);

// --- continuous_limit ------------------------------------------------------

struct ContinuousLimitParams {
  double gamma = 1.0;
  double total_time = 5.0;
  std::vector<double> tau_grid{0.1, 0.05, 0.025, 0.0125};
};

struct ContinuousLimitSummary {
  double fitted_rate = 0;            // Γ from the last (finest) grid entry
  std::vector<double> max_deviation;  // per τ, against exp(-Γ t)
  bool strictly_decreasing = false;
};

CollisionConfig continuous_limit_config(const ContinuousLimitParams& p, double tau,
                                        std::uint64_t seed, LogBase base);
ContinuousLimitSummary run_continuous_limit(const ContinuousLimitParams& p, std::uint64_t seed,
                                            LogBase base, Trajectory* finest = nullptr);

// --- dispatch --------------------------------------------------------------

ThermalizationParams parse_thermalization(const json& overrides);
NonMarkovParams parse_nonmarkov(const json& overrides);
BatteryParams parse_battery(const json& overrides);
TwoQubitParams parse_two_qubit(const json& overrides);
LandauerParams parse_landauer(const json& overrides);
ContinuousLimitParams parse_continuous_limit(const json& overrides);

struct ScenarioResult {
  std::string name;
  std::uint64_t seed = 0;
  Trajectory primary;  // the trajectory written to CSV
  json summary;        // parameters and results
};

/// Throws ConfigError for an unknown name or a bad override.
ScenarioResult run_scenario(const ScenarioSpec& spec);

}  // namespace collisim::scenarios
