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

#include "collisim/nonmarkov.hpp"

#include <cmath>
#include <numbers>

#include "collisim/errors.hpp"
#include "collisim/parallel.hpp"

namespace collisim::nonmarkov {

DistinguishabilitySeries distinguishability_series(const Trajectory& a, const Trajectory& b,
                                                   Metric metric, LogBase base) {
  if (a.snapshots.empty() || a.snapshots.size() != b.snapshots.size())
    throw ConfigError("distinguishability_series: paired trajectories need matching snapshots");
  DistinguishabilitySeries out{metric, {}};
  out.values.reserve(a.snapshots.size());
  for (std::size_t n = 0; n < a.snapshots.size(); ++n)
    out.values.push_back(engine::distance(metric, a.snapshots[n], b.snapshots[n], base));
  return out;
}

double blp_measure(const DistinguishabilitySeries& series) {
  double total = 0.0;
  for (std::size_t n = 0; n + 1 < series.values.size(); ++n) {
    const double rise = series.values[n + 1] - series.values[n];
    if (rise > kRevivalThreshold) total += rise;
  }
  return total;
}

std::optional<std::size_t> first_revival(const DistinguishabilitySeries& series) {
  for (std::size_t n = 0; n + 1 < series.values.size(); ++n)
    if (series.values[n + 1] - series.values[n] > kRevivalThreshold) return n + 1;
  return std::nullopt;
}

std::optional<Revival> dominant_revival(const DistinguishabilitySeries& series) {
  std::optional<Revival> best;
  const auto& v = series.values;
  std::size_t n = 0;
  while (n + 1 < v.size()) {
    if (v[n + 1] - v[n] > kRevivalThreshold) {
      std::size_t end = n + 1;
      while (end + 1 < v.size() && v[end + 1] - v[end] > kRevivalThreshold) ++end;
      const double rise = v[end] - v[n];
      if (!best || rise > best->rise) best = Revival{n, end, rise};
      n = end;
    } else {
      ++n;
    }
  }
  return best;
}

std::vector<BlochPair> bloch_grid(std::size_t resolution) {
  if (resolution == 0) throw ConfigError("bloch_grid: resolution must be at least 1");
  std::vector<BlochPair> grid;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double c = resolution == 1 ? 1.0
                                     : 1.0 - static_cast<double>(i) /
                                                 static_cast<double>(resolution - 1);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const std::size_t n_phi = i == 0 ? 1 : 2 * resolution;
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(resolution);
      const double x = s * std::cos(phi), y = s * std::sin(phi);
      grid.push_back({c, phi, DensityMatrix::bloch(x, y, c), DensityMatrix::bloch(-x, -y, -c)});
    }
  }
  return grid;
}

BlpOptimum blp_optimize_pairs(const CollisionConfig& cfg, Metric metric,
                              std::size_t resolution) {
  if (cfg.system_dim != 2) throw ConfigError("blp_optimize_pairs: only qubit systems are supported");
  CollisionConfig local = cfg;
  local.pair_metric = metric;
  local.keep_snapshots = true;
  const engine::Collider collider(local);
  const auto grid = bloch_grid(resolution);
  const auto values = parallel_map(grid.size(), [&](std::size_t i) {
    const auto [ta, tb] = collider.run_paired(grid[i].a, grid[i].b);
    return blp_measure(distinguishability_series(ta, tb, metric, local.log_base));
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return {grid[best], values[best], grid.size()};
}

RevivalAnalysis::RevivalAnalysis(const CollisionConfig& cfg, const DensityMatrix& init_a,
                                 const DensityMatrix& init_b, Metric metric)
    : metric_(metric) {
  CollisionConfig full = cfg;
  full.backend = engine::Backend::full;
  full.keep_snapshots = true;
  full.pair_metric = metric;
  const engine::Collider collider(full);
  auto run_a = collider.run_full(init_a, true);
  auto run_b = collider.run_full(init_b, true);
  traj_a_ = std::move(run_a.trajectory);
  traj_b_ = std::move(run_b.trajectory);
  series_ = distinguishability_series(traj_a_, traj_b_, metric, full.log_base);
  for (std::size_t n = 0; n < traj_a_.records.size(); ++n) {
    traj_a_.records[n].D_pair = series_.values[n + 1];
    traj_b_.records[n].D_pair = series_.values[n + 1];
  }

  const LogBase base = full.log_base;
  precursors_ = parallel_map(run_a.joints.size(), [&](std::size_t s) {
    PrecursorTerms terms;
    if (s == 0) return terms;  // no ancilla has entered yet
    const auto& f = run_a.factors[s];
    const std::array<std::size_t, 1> system{0};
    std::vector<std::size_t> env;
    for (std::size_t i = 1; i < f.size(); ++i) env.push_back(i);
    const auto split = [&](const ComplexMatrix& joint) {
      ComplexMatrix rho_s = linalg::partial_trace(joint, f, system);
      ComplexMatrix rho_e = linalg::partial_trace(joint, f, env);
      return std::pair{std::move(rho_s), std::move(rho_e)};
    };
    const auto [sa, ea] = split(run_a.joints[s]);
    const auto [sb, eb] = split(run_b.joints[s]);
    terms.env = engine::distance(metric_, DensityMatrix::trusted(ea), DensityMatrix::trusted(eb),
                                 base);
    terms.corr_rho = engine::distance(metric_, DensityMatrix::trusted(run_a.joints[s]),
                                      DensityMatrix::trusted(linalg::kron(sa, ea)), base);
    terms.corr_sigma = engine::distance(metric_, DensityMatrix::trusted(run_b.joints[s]),
                                        DensityMatrix::trusted(linalg::kron(sb, eb)), base);
    return terms;
  });
}

BoundReport RevivalAnalysis::bound(std::size_t s, std::size_t t) const {
  if (t < s) throw ConfigError("revival bound: t must not precede s");
  if (t >= series_.values.size()) throw ConfigError("revival bound: t beyond the run");
  BoundReport r;
  r.s = s;
  r.t = t;
  r.lhs = series_.values[t] - series_.values[s];
  r.rhs_env = precursors_[s].env;
  r.rhs_corr_rho = precursors_[s].corr_rho;
  r.rhs_corr_sigma = precursors_[s].corr_sigma;
  r.slack = r.rhs_env + r.rhs_corr_rho + r.rhs_corr_sigma - r.lhs;
  return r;
}

std::vector<BoundReport> RevivalAnalysis::all_bounds() const {
  std::vector<BoundReport> out;
  for (std::size_t s = 0; s < series_.values.size(); ++s)
    for (std::size_t t = s; t < series_.values.size(); ++t) out.push_back(bound(s, t));
  return out;
}

BoundReport revival_bound_report(const CollisionConfig& cfg, const DensityMatrix& init_a,
                                 const DensityMatrix& init_b, std::size_t s, std::size_t t) {
  if (t < s) throw ConfigError("revival bound: t must not precede s");
  CollisionConfig truncated = cfg;
  truncated.n_steps = std::max<std::size_t>(t, 1);
  return RevivalAnalysis(truncated, init_a, init_b, cfg.pair_metric).bound(s, t);
}

std::vector<PrecursorTerms> precursor_series(const CollisionConfig& cfg,
                                             const DensityMatrix& init_a,
                                             const DensityMatrix& init_b) {
  return RevivalAnalysis(cfg, init_a, init_b, cfg.pair_metric).precursors();
}

}  // namespace collisim::nonmarkov
