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

#include "collisim/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "collisim/errors.hpp"

namespace collisim::thermo {

ThermoLedger build_ledger(const Trajectory& traj) {
  ThermoLedger ledger;
  ledger.min_second_law_gap = std::numeric_limits<double>::infinity();
  ledger.min_mutual_information = std::numeric_limits<double>::infinity();
  auto& c = ledger.cumulative;
  for (const auto& r : traj.records) {
    LedgerStep s;
    s.Q_resource = r.Q_resource();
    s.Q_bath = r.Q_bath();
    s.W_switch = r.W;
    s.dE_S = r.E_S_after - r.E_S_before;
    s.dS_S = r.S_S_after - r.S_S_before;
    s.dS_anc = r.S_anc_after - r.S_anc_before;
    s.I_SE = r.I_SE;
    s.Sigma = r.Sigma;
    s.D_env_relent = r.D_relent;

    c.Q_resource += s.Q_resource;
    c.Q_bath += s.Q_bath;
    c.W_switch += s.W_switch;
    c.dE_S += s.dE_S;
    c.dS_S += s.dS_S;
    c.dS_anc += s.dS_anc;
    c.I_SE += s.I_SE;
    c.Sigma += s.Sigma;
    if (s.D_env_relent) c.D_env_relent = c.D_env_relent.value_or(0.0) + *s.D_env_relent;

    ledger.max_first_law_residual =
        std::max(ledger.max_first_law_residual, std::abs(r.first_law_residual()));
    ledger.min_second_law_gap = std::min(ledger.min_second_law_gap, s.Sigma - s.I_SE);
    ledger.min_mutual_information = std::min(ledger.min_mutual_information, s.I_SE);
    ledger.steps.push_back(s);
  }
  ledger.cumulative_first_law_residual =
      std::abs(c.dE_S - (c.W_switch - (c.Q_resource + c.Q_bath)));
  if (ledger.steps.empty()) {
    ledger.min_second_law_gap = 0.0;
    ledger.min_mutual_information = 0.0;
  }
  return ledger;
}

void check_ledger(const ThermoLedger& ledger) {
  std::ostringstream os;
  const double n = static_cast<double>(std::max<std::size_t>(1, ledger.steps.size()));
  if (!(ledger.max_first_law_residual < kFirstLawTol))
    os << "first-law residual " << ledger.max_first_law_residual << " exceeds " << kFirstLawTol
       << "; ";
  if (!(ledger.cumulative_first_law_residual < kFirstLawTol * n))
    os << "cumulative first-law residual " << ledger.cumulative_first_law_residual << "; ";
  if (!(ledger.min_second_law_gap >= -kSecondLawTol))
    os << "entropy production below mutual information by " << -ledger.min_second_law_gap
       << "; ";
  if (!(ledger.min_mutual_information >= -kSecondLawTol))
    os << "negative mutual information " << ledger.min_mutual_information << "; ";
  const std::string problems = os.str();
  if (!problems.empty()) throw NumericalIntegrityError("ledger check failed: " + problems);
}

FluxReport steady_state_fluxes(const Trajectory& traj, std::size_t window) {
  FluxReport out;
  const auto& recs = traj.records;
  if (window == 0 || recs.size() < 2 * window) {
    out.drift = std::numeric_limits<double>::infinity();
    return out;
  }
  std::size_t n_streams = 0;
  for (const auto& r : recs) n_streams = std::max(n_streams, r.stream + 1);

  const auto averages = [&](std::size_t begin) {
    double q = 0.0, w = 0.0;
    std::vector<double> per(n_streams, 0.0);
    std::vector<std::size_t> count(n_streams, 0);
    for (std::size_t i = begin; i < begin + window; ++i) {
      q += recs[i].Q;
      w += recs[i].W;
      per[recs[i].stream] += recs[i].Q;
      ++count[recs[i].stream];
    }
    for (std::size_t k = 0; k < n_streams; ++k)
      if (count[k] > 0) per[k] /= static_cast<double>(count[k]);
    const double m = static_cast<double>(window);
    return std::tuple{q / m, w / m, per};
  };
  const auto [q_prev, w_prev, per_prev] = averages(recs.size() - 2 * window);
  const auto [q_last, w_last, per_last] = averages(recs.size() - window);
  out.Q_rate = q_last;
  out.W_rate = w_last;
  out.Q_rate_per_stream = per_last;
  out.drift = std::max(std::abs(q_last - q_prev), std::abs(w_last - w_prev));
  for (std::size_t k = 0; k < n_streams; ++k)
    out.drift = std::max(out.drift, std::abs(per_last[k] - per_prev[k]));
  out.converged = out.drift < kSteadyStateTol;
  return out;
}

LandauerReport landauer_report(const Trajectory& traj, std::size_t window, LogBase base) {
  const auto& recs = traj.records;
  if (window == 0 || recs.size() < window || traj.snapshots.size() != recs.size() + 1)
    throw ConfigError("landauer_report: trajectory too short for the window or lacks snapshots");
  LandauerReport out;
  out.window = window;
  const std::size_t begin = recs.size() - window;
  for (std::size_t i = begin; i < recs.size(); ++i) {
    out.drift = std::max(out.drift,
                         qstate::trace_distance(traj.snapshots[i + 1], traj.snapshots[i]));
  }
  if (!(out.drift < kSteadyStateTol)) {
    std::ostringstream os;
    os << "steady state not reached: successive snapshots differ by " << out.drift;
    throw NotConvergedError(os.str(), out.drift);
  }
  for (std::size_t i = begin; i < recs.size(); ++i) {
    const auto& r = recs[i];
    if (!r.bath_beta || !r.D_relent)
      throw ConfigError("landauer_report: every collision in the window must be with a thermal bath unit");
    out.beta_Q += *r.bath_beta * r.Q * from_nats(base);
    out.dS_anc += r.S_anc_after - r.S_anc_before;
    out.dS_S += r.S_S_after - r.S_S_before;
    out.I_SE += r.I_SE;
    out.D_relent += *r.D_relent;
  }
  const double m = static_cast<double>(window);
  out.beta_Q /= m;
  out.dS_anc /= m;
  out.dS_S /= m;
  out.I_SE /= m;
  out.D_relent /= m;
  out.residual = out.beta_Q + out.dS_S - out.I_SE - out.D_relent;
  out.landauer_gap = out.beta_Q - out.dS_anc;
  return out;
}

LandauerReport landauer_report(const CollisionConfig& cfg, std::size_t window) {
  CollisionConfig local = cfg;
  local.keep_snapshots = true;
  return landauer_report(engine::run(local), window, local.log_base);
}

}  // namespace collisim::thermo
