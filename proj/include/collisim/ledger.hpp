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

#include <optional>
#include <vector>

#include "collisim/engine.hpp"

namespace collisim::thermo {

using engine::CollisionConfig;
using engine::Trajectory;

inline constexpr double kFirstLawTol = 1e-9;
inline constexpr double kSecondLawTol = 1e-9;
inline constexpr double kSteadyStateTol = 1e-8;
inline constexpr std::size_t kDefaultWindow = 50;

struct LedgerStep {
  double Q_resource = 0, Q_bath = 0, W_switch = 0;
  double dE_S = 0, dS_S = 0, dS_anc = 0;
  double I_SE = 0, Sigma = 0;
  std::optional<double> D_env_relent;
};

struct ThermoLedger {
  std::vector<LedgerStep> steps;
  LedgerStep cumulative;  // sums; D_env_relent summed over steps that have it
  double max_first_law_residual = 0;
  double cumulative_first_law_residual = 0;
  double min_second_law_gap = 0;  // min(Σ - I_SE)
  double min_mutual_information = 0;
};

ThermoLedger build_ledger(const Trajectory& traj);

/// Throws NumericalIntegrityError if any step breaks the first law or the
/// Σ ≥ I_SE ≥ 0 chain beyond tolerance.
void check_ledger(const ThermoLedger& ledger);

struct FluxReport {
  double Q_rate = 0;  // per collision, all streams
  double W_rate = 0;
  std::vector<double> Q_rate_per_stream;  // per collision of that stream
  double drift = 0;   // max change between the last two windows
  bool converged = false;
};

/// Averages over the last `window` collisions, compared with the window
/// before it.
FluxReport steady_state_fluxes(const Trajectory& traj, std::size_t window = kDefaultWindow);

/// Per-collision averages over a steady-state window of a single thermal
/// stream. With the system stationary (ΔS_S = 0) the entropy balance
/// β·Q = ΔS_erased + I_SE + D_relent has nothing left to erase, so
/// `residual` = β·Q + ΔS_S - I_SE - D_relent vanishes identically and the
/// bare Landauer bound β·Q ≥ ΔS_anc is exhibited with its sharpening terms.
struct LandauerReport {
  double beta_Q = 0;
  double dS_anc = 0;
  double dS_S = 0;
  double I_SE = 0;
  double D_relent = 0;
  double residual = 0;
  double landauer_gap = 0;  // β·Q - ΔS_anc
  double drift = 0;         // max trace distance between successive snapshots
  std::size_t window = 0;
};

LandauerReport landauer_report(const Trajectory& traj, std::size_t window = kDefaultWindow,
                               LogBase base = LogBase::bits);
LandauerReport landauer_report(const CollisionConfig& cfg,
                               std::size_t window = kDefaultWindow);

}  // namespace collisim::thermo
