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

#include "collisim/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "collisim/errors.hpp"
#include "collisim/ledger.hpp"

namespace collisim::output {

namespace {

std::array<double, 9> row_values(const engine::CollisionRecord& r) {
  return {r.E_S_after, r.Q_resource(), r.Q_bath(), r.W,    r.S_S_after,
          r.S_anc_after, r.I_SE,       r.Sigma,    r.D_pair.value_or(std::nan(""))};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << content;
  if (!out) throw ConfigError("failed writing output file " + path.string());
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectory_csv(const engine::Trajectory& traj) {
  std::string out = "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  out += kCsvHeader;
  out += '\n';
  for (const auto& r : traj.records) {
    out += std::to_string(r.step);
    const auto values = row_values(r);
    for (std::size_t i = 0; i < values.size(); ++i) {
      out += ',';
      // An absent pair distance is an empty field.
      if (i + 1 == values.size() && !r.D_pair) continue;
      out += format_double(values[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json trajectory_json(const engine::Trajectory& traj) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : traj.records) {
    records.push_back({{"step", r.step},
                       {"E_S", r.E_S_after},
                       {"Q_resource", r.Q_resource()},
                       {"Q_bath", r.Q_bath()},
                       {"W", r.W},
                       {"S_S", r.S_S_after},
                       {"S_anc", r.S_anc_after},
                       {"I_SE", r.I_SE},
                       {"Sigma", r.Sigma},
                       {"D_pair", r.D_pair ? nlohmann::json(*r.D_pair) : nlohmann::json(nullptr)}});
  }
  return records;
}

std::vector<std::filesystem::path> write_outputs(const scenarios::ScenarioResult& result,
                                                 const std::filesystem::path& dir,
                                                 scenarios::Emit emit) {
  thermo::check_ledger(thermo::build_ledger(result.primary));

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::string stem = result.name + "_" + std::to_string(result.seed);
  std::vector<std::filesystem::path> written;
  if (emit != scenarios::Emit::json) {
    const auto path = dir / (stem + ".csv");
    write_file(path, trajectory_csv(result.primary));
    written.push_back(path);
  }
  if (emit != scenarios::Emit::csv) {
    const auto path = dir / (stem + ".json");
    nlohmann::json doc{{"schema_version", kSchemaVersion},
                       {"summary", result.summary},
                       {"records", trajectory_json(result.primary)}};
    // nlohmann writes the shortest form that round-trips, so values parse
    // back to the same doubles as the %.17g CSV fields.
    write_file(path, doc.dump(2) + "\n");
    written.push_back(path);
  }
  return written;
}

}  // namespace collisim::output
