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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "collisim/errors.hpp"
#include "collisim/output.hpp"
#include "collisim/scenarios.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kUnknownScenario = 2,
  kConfigError = 3,
  kIntegrityError = 4,
  kNotConverged = 5,
};

std::string registry_list() {
  std::string names;
  for (const auto& n : collisim::scenarios::registry()) names += (names.empty() ? "" : ", ") + n;
  return names;
}

nlohmann::json load_overrides(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw collisim::ConfigError("cannot read config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw collisim::ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
}

int run(int argc, char** argv) {
  // `collisim run <scenario>` and `collisim <scenario>` are equivalent.
  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  if (!args.empty() && args.back() == "run") args.pop_back();

  CLI::App app{"Collision-model open quantum system simulator"};
  std::string scenario;
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::string emit = "csv";
  std::string log_base = "2";
  app.add_option("scenario", scenario, "One of: " + registry_list())->required();
  app.add_option("--config", config_path, "JSON object of parameter overrides");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--emit", emit, "Output format")->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--log-base", log_base, "Entropy log base")->check(CLI::IsMember({"2", "e"}));
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (!collisim::scenarios::is_registered(scenario)) {
    std::cerr << "error: unknown scenario '" << scenario << "'; registered: " << registry_list()
              << "\n";
    return kUnknownScenario;
  }

  try {
    collisim::scenarios::ScenarioSpec spec;
    spec.name = scenario;
    spec.overrides = load_overrides(config_path);
    spec.output_path = out_dir;
    spec.emit = emit == "json"   ? collisim::scenarios::Emit::json
                : emit == "both" ? collisim::scenarios::Emit::both
                                 : collisim::scenarios::Emit::csv;
    spec.seed = seed;
    spec.log_base = log_base == "e" ? collisim::LogBase::nats : collisim::LogBase::bits;

    const auto result = collisim::scenarios::run_scenario(spec);
    const auto written = collisim::output::write_outputs(result, spec.output_path, spec.emit);
    nlohmann::json line = result.summary;
    line["outputs"] = nlohmann::json::array();
    for (const auto& p : written) line["outputs"].push_back(p.string());
    std::cout << line.dump() << "\n";
    return kOk;
  } catch (const collisim::NotConvergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const collisim::NumericalIntegrityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIntegrityError;
  } catch (const std::invalid_argument& e) {  // ConfigError, PreconditionError
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
