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

#include <numbers>

#include "collisim/errors.hpp"
#include "collisim/nonmarkov.hpp"

using namespace collisim;
using namespace collisim::nonmarkov;
using engine::AaMode;
using engine::AncillaStreamSpec;
using engine::StreamRole;

namespace {

DistinguishabilitySeries series_of(std::vector<double> v) {
  return {Metric::trace, std::move(v)};
}

CollisionConfig memory_config(AaMode mode, double p, std::size_t n) {
  const ComplexMatrix h = 0.5 * linalg::pauli_z();
  CollisionConfig cfg;
  cfg.system_hamiltonian = h;
  cfg.system_init = DensityMatrix::basis(2, 0);
  cfg.streams = {AncillaStreamSpec::thermal(h, 1.0, StreamRole::resource)};
  cfg.partial_swap_theta = 0.15 * std::numbers::pi;
  cfg.n_steps = n;
  cfg.aa_mode = mode;
  cfg.aa_swap_prob = p;
  cfg.rng_seed = 5;
  return cfg;
}

const DensityMatrix kUp = DensityMatrix::basis(2, 0);
const DensityMatrix kDown = DensityMatrix::basis(2, 1);

}  // namespace

TEST_CASE("BLP sums the rises of a series", "[nonmarkov]") {
  const auto s = series_of({1.0, 0.5, 0.7, 0.6, 0.65, 0.9, 0.2});
  CHECK(blp_measure(s) == Catch::Approx(0.2 + 0.05 + 0.25));
  CHECK(first_revival(s) == 2u);
  const auto dom = dominant_revival(s);
  REQUIRE(dom);
  CHECK(dom->s == 3);
  CHECK(dom->t == 5);
  CHECK(dom->rise == Catch::Approx(0.3));
}

TEST_CASE("monotone series and sub-threshold wiggles have no revival", "[nonmarkov]") {
  const auto flat = series_of({1.0, 0.8, 0.8, 0.3});
  CHECK(blp_measure(flat) == 0.0);
  CHECK_FALSE(first_revival(flat));
  CHECK_FALSE(dominant_revival(flat));
  const auto wiggle = series_of({1.0, 0.5, 0.5 + 1e-12, 0.4});
  CHECK(blp_measure(wiggle) == 0.0);
}

TEST_CASE("Bloch grid covers antipodal pure pairs", "[nonmarkov]") {
  CHECK(bloch_grid(1).size() == 1);
  const std::size_t r = 4;
  const auto grid = bloch_grid(r);
  CHECK(grid.size() == 1 + (r - 1) * 2 * r);
  for (const auto& pair : grid) {
    CHECK(qstate::trace_distance(pair.a, pair.b) == Catch::Approx(1.0));
    CHECK((pair.a.matrix() * pair.a.matrix()).trace().real() == Catch::Approx(1.0));
  }
  CHECK(grid.front().cos_theta == 1.0);
  CHECK(grid.back().cos_theta == Catch::Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(bloch_grid(0), ConfigError);
}

TEST_CASE("Markovian collisions never revive for any pair", "[nonmarkov]") {
  const auto cfg = memory_config(AaMode::off, 0.0, 12);
  for (const Metric m : {Metric::trace, Metric::jensen_shannon}) {
    const auto best = blp_optimize_pairs(cfg, m, 5);
    CHECK(best.value == 0.0);
    CHECK(best.evaluated == bloch_grid(5).size());
  }
}

TEST_CASE("full AA swaps revive distinguishability", "[nonmarkov]") {
  const auto best = blp_optimize_pairs(memory_config(AaMode::coherent, 1.0, 8), Metric::trace, 4);
  CHECK(best.value > 1e-4);
  CHECK_THROWS_AS(blp_optimize_pairs([] {
                    auto c = memory_config(AaMode::off, 0.0, 2);
                    c.system_dim = 3;
                    return c;
                  }(), Metric::trace),
                  ConfigError);
}

TEST_CASE("revival bound holds at every (s, t)", "[nonmarkov]") {
  for (const Metric m : {Metric::trace, Metric::jensen_shannon}) {
    for (const AaMode mode : {AaMode::coherent, AaMode::incoherent}) {
      for (const double p : {0.3, 1.0}) {
        const RevivalAnalysis analysis(memory_config(mode, p, 7), kUp, kDown, m);
        for (const auto& r : analysis.all_bounds()) {
          INFO("s=" << r.s << " t=" << r.t << " p=" << p);
          CHECK(r.slack >= -1e-9);
        }
      }
    }
  }
}

TEST_CASE("precursor terms vanish before the first ancilla", "[nonmarkov]") {
  const auto terms = precursor_series(memory_config(AaMode::coherent, 1.0, 4), kUp, kDown);
  REQUIRE(terms.size() == 5);
  CHECK(terms[0].total() == 0.0);
  for (const auto& t : terms) {
    CHECK(t.env >= 0.0);
    CHECK(t.corr_rho >= 0.0);
    CHECK(t.corr_sigma >= 0.0);
  }
}

TEST_CASE("single bound report matches the full analysis", "[nonmarkov]") {
  const auto cfg = memory_config(AaMode::coherent, 1.0, 8);
  const RevivalAnalysis analysis(cfg, kUp, kDown, Metric::trace);
  const auto dom = dominant_revival(analysis.series());
  REQUIRE(dom);
  const auto direct = revival_bound_report(cfg, kUp, kDown, dom->s, dom->t);
  const auto ref = analysis.bound(dom->s, dom->t);
  CHECK(direct.lhs == Catch::Approx(ref.lhs).margin(1e-14));
  CHECK(direct.slack == Catch::Approx(ref.slack).margin(1e-14));
  CHECK(direct.lhs > 1e-4);
  CHECK_THROWS_AS(analysis.bound(3, 2), ConfigError);
}

TEST_CASE("series and analysis agree with the windowed paired run", "[nonmarkov]") {
  auto cfg = memory_config(AaMode::incoherent, 0.5, 8);
  const RevivalAnalysis analysis(cfg, kUp, kDown, Metric::trace);
  const auto [a, b] = engine::run_paired(cfg, kUp, kDown);
  const auto windowed = distinguishability_series(a, b, Metric::trace);
  REQUIRE(windowed.values.size() == analysis.series().values.size());
  for (std::size_t n = 0; n < windowed.values.size(); ++n)
    CHECK(windowed.values[n] == Catch::Approx(analysis.series().values[n]).margin(1e-10));
}
