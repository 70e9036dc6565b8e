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

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collisim/engine.hpp"
#include "collisim/scenarios.hpp"

// CSV/JSON emission of collision records. Both formats parse back to the same
// doubles.
namespace collisim::output {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCsvHeader = "step,E_S,Q_resource,Q_bath,W,S_S,S_anc,I_SE,Sigma,D_pair";

std::string format_double(double v);

/// Rows use the post-collision system energy and entropies.
std::string trajectory_csv(const engine::Trajectory& traj);
nlohmann::json trajectory_json(const engine::Trajectory& traj);

/// Re-checks the thermodynamic ledger, then writes `<dir>/<name>_<seed>.csv`
/// and/or `.json`. Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const scenarios::ScenarioResult& result,
                                                 const std::filesystem::path& dir,
                                                 scenarios::Emit emit);

}  // namespace collisim::output
