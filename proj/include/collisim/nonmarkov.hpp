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

namespace collisim::nonmarkov {

using engine::CollisionConfig;
using engine::Metric;
using engine::Trajectory;

/// Increments at or below this are rounding, not revivals.
inline constexpr double kRevivalThreshold = 1e-10;

struct DistinguishabilitySeries {
  Metric metric = Metric::trace;
  std::vector<double> values;  // index n = after n collisions
};

DistinguishabilitySeries distinguishability_series(const Trajectory& a, const Trajectory& b,
                                                   Metric metric,
                                                   LogBase base = LogBase::bits);

/// Σ max(0, D[n+1] - D[n]) over increments above kRevivalThreshold.
double blp_measure(const DistinguishabilitySeries& series);

/// Step index n+1 of the first increment above threshold.
std::optional<std::size_t> first_revival(const DistinguishabilitySeries& series);

struct Revival {
  std::size_t s = 0;  // start of the rising run (local minimum)
  std::size_t t = 0;  // end of the run (local maximum)
  double rise = 0.0;
};

/// Largest monotone rise in the series.
std::optional<Revival> dominant_revival(const DistinguishabilitySeries& series);

struct BlochPair {
  double cos_theta = 1.0;
  double phi = 0.0;
  DensityMatrix a;  // Bloch vector n
  DensityMatrix b;  // antipode -n
};

/// Antipodal pure-state pairs on the upper hemisphere, uniform in (cos θ, φ):
/// `resolution` values of cos θ from 1 down to 0 and 2·resolution values of φ,
/// with the pole counted once.
std::vector<BlochPair> bloch_grid(std::size_t resolution);

struct BlpOptimum {
  BlochPair pair;
  double value = 0.0;
  std::size_t evaluated = 0;
};

BlpOptimum blp_optimize_pairs(const CollisionConfig& cfg, Metric metric,
                              std::size_t resolution = 12);

struct BoundReport {
  std::size_t s = 0;
  std::size_t t = 0;
  double lhs = 0.0;
  double rhs_env = 0.0;
  double rhs_corr_rho = 0.0;
  double rhs_corr_sigma = 0.0;
  double slack = 0.0;
};

struct PrecursorTerms {
  double env = 0.0;
  double corr_rho = 0.0;
  double corr_sigma = 0.0;
  double total() const { return env + corr_rho + corr_sigma; }
};

/// Paired full-state runs with the revival bound terms evaluated at every
/// collision boundary. The environment is every ancilla that has entered the
/// joint state so far.
class RevivalAnalysis {
 public:
  RevivalAnalysis(const CollisionConfig& cfg, const DensityMatrix& init_a,
                  const DensityMatrix& init_b, Metric metric);

  const DistinguishabilitySeries& series() const { return series_; }
  const std::vector<PrecursorTerms>& precursors() const { return precursors_; }
  const Trajectory& trajectory_a() const { return traj_a_; }
  const Trajectory& trajectory_b() const { return traj_b_; }

  BoundReport bound(std::size_t s, std::size_t t) const;
  /// Every (s, t) with s <= t.
  std::vector<BoundReport> all_bounds() const;

 private:
  Metric metric_;
  Trajectory traj_a_;
  Trajectory traj_b_;
  DistinguishabilitySeries series_;
  std::vector<PrecursorTerms> precursors_;
};

BoundReport revival_bound_report(const CollisionConfig& cfg, const DensityMatrix& init_a,
                                 const DensityMatrix& init_b, std::size_t s, std::size_t t);

std::vector<PrecursorTerms> precursor_series(const CollisionConfig& cfg,
                                             const DensityMatrix& init_a,
                                             const DensityMatrix& init_b);

}  // namespace collisim::nonmarkov
