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

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

// Runs the CLI binary with stderr folded into the captured output.
Outcome cli(const std::string& args) {
  const std::string cmd = std::string(COLLISIM_CLI_PATH) + " " + args + " 2>&1";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("collisim_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_config(const std::filesystem::path& dir, const std::string& text) {
  const auto path = dir / "config.json";
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("run writes a CSV and prints a one-line summary", "[cli]") {
  const auto dir = scratch("happy");
  const auto o = cli("run thermalization --out " + dir.string());
  REQUIRE(o.status == 0);
  CHECK(std::filesystem::exists(dir / "thermalization_1.csv"));
  CHECK(o.out.find('\n') == o.out.size() - 1);
  const auto summary = nlohmann::json::parse(o.out);
  CHECK(summary["scenario"] == "thermalization");
  CHECK(summary["final_distance"].get<double>() < 1e-6);
}

TEST_CASE("the run keyword is optional and flags are honoured", "[cli]") {
  const auto dir = scratch("flags");
  const auto o = cli("continuous_limit --out " + dir.string() + " --seed 77 --emit both --log-base e");
  REQUIRE(o.status == 0);
  CHECK(std::filesystem::exists(dir / "continuous_limit_77.csv"));
  CHECK(std::filesystem::exists(dir / "continuous_limit_77.json"));
  CHECK(nlohmann::json::parse(o.out)["log_base"] == "e");
}

TEST_CASE("unknown scenario exits 2 and lists the registry", "[cli]") {
  const auto o = cli("run thermalisation");
  CHECK(o.status == 2);
  CHECK(o.out.find("thermalization") != std::string::npos);
  CHECK(o.out.find("continuous_limit") != std::string::npos);
}

TEST_CASE("config problems exit 3", "[cli]") {
  const auto dir = scratch("config");
  SECTION("full-backend cap names the size") {
    const auto o = cli("run thermalization --out " + dir.string() + " --config " +
                       write_config(dir, R"({"backend": "full"})"));
    CHECK(o.status == 3);
    CHECK(o.out.find("2001 qubits") != std::string::npos);
  }
  SECTION("unknown key") {
    const auto o = cli("run battery --config " + write_config(dir, R"({"gg": 1})"));
    CHECK(o.status == 3);
    CHECK(o.out.find("'gg'") != std::string::npos);
  }
  SECTION("malformed JSON") {
    CHECK(cli("run battery --config " + write_config(dir, "{")).status == 3);
  }
  SECTION("missing file") {
    CHECK(cli("run battery --config " + (dir / "absent.json").string()).status == 3);
  }
  SECTION("bad flag value") {
    CHECK(cli("run battery --emit xml").status == 3);
  }
}

TEST_CASE("non-convergence exits 5", "[cli]") {
  const auto dir = scratch("slow");
  const auto o = cli("run battery --out " + dir.string() + " --config " +
                     write_config(dir, R"({"n_steps": 100, "tau": 0.02})"));
  CHECK(o.status == 5);
  CHECK_FALSE(std::filesystem::exists(dir / "battery_1.csv"));
}

TEST_CASE("repeated invocations produce identical CSV bytes", "[cli]") {
  const auto a = scratch("repeat_a");
  const auto b = scratch("repeat_b");
  REQUIRE(cli("run two_qubit_local_global --out " + a.string()).status == 0);
  REQUIRE(cli("run two_qubit_local_global --out " + b.string()).status == 0);
  std::ifstream fa(a / "two_qubit_local_global_1.csv"), fb(b / "two_qubit_local_global_1.csv");
  const std::string sa((std::istreambuf_iterator<char>(fa)), {});
  const std::string sb((std::istreambuf_iterator<char>(fb)), {});
  CHECK(!sa.empty());
  CHECK(sa == sb);
}
