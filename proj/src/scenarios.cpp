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

#include "collisim/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "collisim/errors.hpp"
#include "collisim/parallel.hpp"
#include "collisim/thermo.hpp"

namespace collisim::scenarios {

namespace la = collisim::linalg;
using engine::AaMode;
using engine::AncillaStreamSpec;
using engine::Backend;
using engine::Metric;
using engine::StreamRole;

namespace {

constexpr double kMonotoneSlack = 1e-12;
constexpr double kCurrentDeadband = 1e-8;

// Reads typed values out of an override object and remembers which keys were
// consumed, so that finish() can reject the rest.
class Overrides {
 public:
  Overrides(const json& j, std::string scenario) : j_(j), scenario_(std::move(scenario)) {
    if (!j_.is_object()) throw ConfigError(scenario_ + ": overrides must be a JSON object");
  }

  void read(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) fail(key, "a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(key, "a finite number");
    }
  }

  void read(const char* key, std::size_t& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer() || v->get<std::int64_t>() < 0) fail(key, "a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void read(const char* key, std::vector<double>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array() || v->empty()) fail(key, "a non-empty array of numbers");
      std::vector<double> values;
      for (const auto& e : *v) {
        if (!e.is_number()) fail(key, "a non-empty array of numbers");
        values.push_back(e.get<double>());
      }
      out = std::move(values);
    }
  }

  template <std::size_t N>
  void read(const char* key, std::array<double, N>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array() || v->size() != N) fail(key, "an array of " + std::to_string(N) + " numbers");
      for (std::size_t i = 0; i < N; ++i) {
        if (!(*v)[i].is_number()) fail(key, "an array of numbers");
        out[i] = (*v)[i].get<double>();
      }
    }
  }

  template <typename Enum>
  void read_enum(const char* key, Enum& out, const std::map<std::string, Enum>& names) {
    if (const json* v = take(key)) {
      if (!v->is_string()) fail(key, "a string");
      const auto it = names.find(v->get<std::string>());
      if (it == names.end()) fail(key, "one of " + joined(names));
      out = it->second;
    }
  }

  template <typename Enum>
  void read_enum_list(const char* key, std::vector<Enum>& out,
                      const std::map<std::string, Enum>& names) {
    if (const json* v = take(key)) {
      if (!v->is_array() || v->empty()) fail(key, "a non-empty array of strings");
      std::vector<Enum> values;
      for (const auto& e : *v) {
        const auto it = e.is_string() ? names.find(e.get<std::string>()) : names.end();
        if (it == names.end()) fail(key, "an array drawn from " + joined(names));
        values.push_back(it->second);
      }
      out = std::move(values);
    }
  }

  void finish() const {
    std::vector<std::string> unknown;
    for (const auto& [key, value] : j_.items())
      if (!used_.contains(key)) unknown.push_back(key);
    if (unknown.empty()) return;
    std::ostringstream os;
    os << scenario_ << ": unknown override key";
    if (unknown.size() > 1) os << "s";
    for (std::size_t i = 0; i < unknown.size(); ++i) os << (i ? ", " : " ") << "'" << unknown[i] << "'";
    throw ConfigError(os.str());
  }

 private:
  const json* take(const char* key) {
    used_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  [[noreturn]] void fail(const char* key, const std::string& expected) const {
    throw ConfigError(scenario_ + ": override '" + key + "' must be " + expected);
  }

  template <typename Enum>
  static std::string joined(const std::map<std::string, Enum>& names) {
    std::string s;
    for (const auto& [name, value] : names) s += (s.empty() ? "" : "|") + name;
    return s;
  }

  const json& j_;
  std::string scenario_;
  std::set<std::string> used_;
};

const std::map<std::string, Backend> kBackends{{"windowed", Backend::windowed},
                                               {"full", Backend::full}};
const std::map<std::string, Metric> kMetrics{{"trace", Metric::trace},
                                             {"jensen-shannon", Metric::jensen_shannon}};
const std::map<std::string, AaMode> kAaModes{{"off", AaMode::off},
                                             {"coherent", AaMode::coherent},
                                             {"incoherent", AaMode::incoherent}};

ComplexMatrix half_sigma_z(double omega) { return 0.5 * omega * la::pauli_z(); }

ComplexMatrix xx() { return la::kron(la::pauli_x(), la::pauli_x()); }
ComplexMatrix yy() { return la::kron(la::pauli_y(), la::pauli_y()); }

void require_positive(double value, const char* what) {
  if (!(value > 0.0)) throw ConfigError(std::string(what) + " must be positive");
}

void require_beta(double beta) {
  if (!(beta >= 0.0)) throw ConfigError("beta must be >= 0");
}

[[noreturn]] void not_converged(const std::string& scenario, double drift) {
  std::ostringstream os;
  os << scenario << ": steady state not reached (window drift " << drift << ")";
  throw NotConvergedError(os.str(), drift);
}

json to_json(const thermo::FluxReport& f) {
  return {{"Q_rate", f.Q_rate},
          {"W_rate", f.W_rate},
          {"Q_rate_per_stream", f.Q_rate_per_stream},
          {"drift", f.drift},
          {"converged", f.converged}};
}

json to_json(const nonmarkov::BoundReport& b) {
  return {{"s", b.s},
          {"t", b.t},
          {"lhs", b.lhs},
          {"rhs_env", b.rhs_env},
          {"rhs_corr_rho", b.rhs_corr_rho},
          {"rhs_corr_sigma", b.rhs_corr_sigma},
          {"slack", b.slack}};
}

json to_json(const thermo::LandauerReport& r) {
  return {{"beta_Q", r.beta_Q},   {"dS_anc", r.dS_anc},     {"dS_S", r.dS_S},
          {"I_SE", r.I_SE},       {"D_relent", r.D_relent}, {"residual", r.residual},
          {"landauer_gap", r.landauer_gap}, {"drift", r.drift}, {"window", r.window}};
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

const std::vector<std::string>& registry() {
  static const std::vector<std::string> names{"thermalization",         "nonmarkov_sweep",
                                              "battery",                "two_qubit_local_global",
                                              "landauer",               "continuous_limit"};
  return names;
}

bool is_registered(const std::string& name) {
  const auto& r = registry();
  return std::find(r.begin(), r.end(), name) != r.end();
}

// --- thermalization --------------------------------------------------------

ThermalizationParams parse_thermalization(const json& overrides) {
  ThermalizationParams p;
  Overrides o(overrides, "thermalization");
  std::size_t system_dim = 2;
  o.read("system_dim", system_dim);
  o.read("omega", p.omega);
  o.read("beta", p.beta);
  o.read("theta", p.theta);
  o.read("n_steps", p.n_steps);
  o.read("init_bloch", p.init_bloch);
  o.read("erasure_lambda", p.erasure_lambda);
  o.read_enum("backend", p.backend, kBackends);
  o.read("full_qubit_cap", p.full_qubit_cap);
  o.finish();
  if (system_dim != 2) throw ConfigError("thermalization: the system is a qubit (system_dim 2)");
  return p;
}

CollisionConfig thermalization_config(const ThermalizationParams& p, std::uint64_t seed,
                                      LogBase base) {
  require_beta(p.beta);
  const ComplexMatrix h = half_sigma_z(p.omega);
  CollisionConfig cfg;
  cfg.system_dim = 2;
  cfg.system_hamiltonian = h;
  cfg.system_init = DensityMatrix::bloch(p.init_bloch[0], p.init_bloch[1], p.init_bloch[2]);
  cfg.streams = {AncillaStreamSpec::thermal(h, p.beta, StreamRole::bath)};
  cfg.partial_swap_theta = p.theta;
  cfg.n_steps = p.n_steps;
  cfg.erasure_lambda = p.erasure_lambda;
  cfg.backend = p.backend;
  cfg.full_qubit_cap = p.full_qubit_cap;
  cfg.rng_seed = seed;
  cfg.log_base = base;
  return cfg;
}

ThermalizationSummary summarize_thermalization(const ThermalizationParams& p,
                                               const Trajectory& traj) {
  const DensityMatrix target = qstate::thermal_state(half_sigma_z(p.omega), p.beta);
  ThermalizationSummary out;
  for (const auto& rho : traj.snapshots)
    out.distance_to_thermal.push_back(qstate::trace_distance(rho, target));
  for (std::size_t n = 1; n < out.distance_to_thermal.size(); ++n)
    out.max_increase = std::max(out.max_increase,
                                out.distance_to_thermal[n] - out.distance_to_thermal[n - 1]);
  out.final_distance = out.distance_to_thermal.back();
  out.monotone = out.max_increase <= kMonotoneSlack;
  return out;
}

// --- nonmarkov_sweep -------------------------------------------------------

NonMarkovParams parse_nonmarkov(const json& overrides) {
  NonMarkovParams p;
  Overrides o(overrides, "nonmarkov_sweep");
  o.read("omega", p.omega);
  o.read("beta", p.beta);
  o.read("theta", p.theta);
  o.read("aa_theta", p.aa_theta);
  o.read("p_grid", p.p_grid);
  o.read_enum_list("modes", p.modes, kAaModes);
  o.read("n_steps", p.n_steps);
  o.read_enum("metric", p.metric, kMetrics);
  o.read("full_qubit_cap", p.full_qubit_cap);
  o.finish();
  return p;
}

CollisionConfig nonmarkov_config(const NonMarkovParams& p, AaMode mode, double prob,
                                 std::uint64_t seed, LogBase base) {
  require_beta(p.beta);
  const ComplexMatrix h = half_sigma_z(p.omega);
  CollisionConfig cfg;
  cfg.system_dim = 2;
  cfg.system_hamiltonian = h;
  cfg.system_init = DensityMatrix::basis(2, 0);
  cfg.streams = {AncillaStreamSpec::thermal(h, p.beta, StreamRole::resource)};
  cfg.partial_swap_theta = p.theta;
  cfg.n_steps = p.n_steps;
  cfg.aa_mode = mode;
  cfg.aa_swap_prob = mode == AaMode::off ? 0.0 : prob;
  cfg.aa_theta = p.aa_theta;
  cfg.pair_metric = p.metric;
  cfg.full_qubit_cap = p.full_qubit_cap;
  cfg.rng_seed = seed;
  cfg.log_base = base;
  return cfg;
}

std::vector<SweepPoint> run_nonmarkov_sweep(const NonMarkovParams& p, std::uint64_t seed,
                                            LogBase base) {
  const std::size_t n_points = p.modes.size() * p.p_grid.size();
  // Validate every point up front so a bad grid fails before any work starts.
  for (const AaMode mode : p.modes)
    for (const double prob : p.p_grid) nonmarkov_config(p, mode, prob, seed, base).validate();

  return parallel_map(n_points, [&](std::size_t i) {
    SweepPoint point;
    point.mode = p.modes[i / p.p_grid.size()];
    point.p = p.p_grid[i % p.p_grid.size()];
    CollisionConfig cfg = nonmarkov_config(p, point.mode, point.p, seed, base);
    const DensityMatrix a = DensityMatrix::basis(2, 0);
    const DensityMatrix b = DensityMatrix::basis(2, 1);

    nonmarkov::DistinguishabilitySeries series;
    CollisionConfig full = cfg;
    full.backend = Backend::full;
    if (full.full_backend_qubits() <= full.full_qubit_cap) {
      const nonmarkov::RevivalAnalysis analysis(cfg, a, b, p.metric);
      series = analysis.series();
      double min_slack = std::numeric_limits<double>::infinity();
      for (const auto& r : analysis.all_bounds()) min_slack = std::min(min_slack, r.slack);
      point.min_slack = min_slack;
      if (const auto rev = nonmarkov::dominant_revival(series))
        point.dominant_bound = analysis.bound(rev->s, rev->t);
      point.trajectory = analysis.trajectory_a();
    } else {
      auto [ta, tb] = engine::run_paired(cfg, a, b);
      series = nonmarkov::distinguishability_series(ta, tb, p.metric, base);
      point.trajectory = std::move(ta);
    }
    point.series = series.values;
    point.blp = nonmarkov::blp_measure(series);
    point.first_revival = nonmarkov::first_revival(series);
    return point;
  });
}

// --- battery ---------------------------------------------------------------

BatteryParams parse_battery(const json& overrides) {
  BatteryParams p;
  Overrides o(overrides, "battery");
  o.read("omega", p.omega);
  o.read("beta", p.beta);
  o.read("g", p.g);
  o.read("tau", p.tau);
  o.read("n_steps", p.n_steps);
  o.read("window", p.window);
  o.read_enum("coupling", p.coupling,
              std::map<std::string, BatteryCoupling>{{"inverting", BatteryCoupling::inverting},
                                                     {"thermalizing", BatteryCoupling::thermalizing}});
  o.finish();
  return p;
}

CollisionConfig battery_config(const BatteryParams& p, std::uint64_t seed, LogBase base) {
  require_beta(p.beta);
  require_positive(p.tau, "battery: tau");
  const ComplexMatrix h = p.omega * la::pauli_z();
  const double sign = p.coupling == BatteryCoupling::inverting ? -1.0 : 1.0;
  CollisionConfig cfg;
  cfg.system_dim = 2;
  cfg.system_hamiltonian = h;
  cfg.system_init = DensityMatrix::maximally_mixed(2);
  cfg.streams = {AncillaStreamSpec::thermal(h, p.beta, StreamRole::bath)};
  cfg.interactions = {ComplexMatrix(xx() + sign * yy())};
  cfg.tau = p.tau;
  cfg.coupling = p.g;
  cfg.n_steps = p.n_steps;
  cfg.rng_seed = seed;
  cfg.log_base = base;
  return cfg;
}

BatterySummary summarize_battery(const BatteryParams& p, const Trajectory& traj) {
  const ComplexMatrix h = p.omega * la::pauli_z();
  const DensityMatrix& final_state = traj.snapshots.back();
  BatterySummary out;
  // σz = +1 on |0⟩, so |0⟩ is the excited level.
  out.p_excited = final_state.matrix()(0, 0).real();
  out.p_ground = final_state.matrix()(1, 1).real();
  out.population_inverted = out.p_excited > out.p_ground;
  out.distance_to_inverted =
      qstate::trace_distance(final_state, qstate::thermal_state(ComplexMatrix(-h), p.beta));
  out.distance_to_thermal = qstate::trace_distance(final_state, qstate::thermal_state(h, p.beta));
  out.ergotropy = thermo::ergotropy(final_state, h);
  for (const auto& r : traj.records) out.max_transient_work = std::max(out.max_transient_work, std::abs(r.W));
  out.fluxes = thermo::steady_state_fluxes(traj, p.window);
  if (!out.fluxes.converged) not_converged("battery", out.fluxes.drift);
  return out;
}

// --- two_qubit_local_global ------------------------------------------------

TwoQubitParams parse_two_qubit(const json& overrides) {
  TwoQubitParams p;
  Overrides o(overrides, "two_qubit_local_global");
  o.read("omega", p.omega);
  o.read("kappa", p.kappa);
  o.read_enum("internal_coupling", p.internal,
              std::map<std::string, InternalCoupling>{{"xx", InternalCoupling::xx},
                                                      {"exchange", InternalCoupling::exchange}});
  o.read("beta_1", p.beta_1);
  o.read("beta_2", p.beta_2);
  o.read("g", p.g);
  o.read("tau", p.tau);
  o.read("n_steps", p.n_steps);
  o.read("window", p.window);
  o.read_enum("backend", p.backend, kBackends);
  o.read("full_qubit_cap", p.full_qubit_cap);
  o.finish();
  return p;
}

namespace {

ComplexMatrix two_qubit_internal(const TwoQubitParams& p) {
  return p.kappa * (p.internal == InternalCoupling::xx ? xx() : ComplexMatrix(xx() + yy()));
}

// Local exchange (σxσx + σyσy)/2 between system qubit `which` and the ancilla.
ComplexMatrix local_exchange(std::size_t which) {
  const la::HilbertFactorization f{{2, 2, 2}};
  const std::vector<std::size_t> targets{which, 2};
  return la::embed(0.5 * (xx() + yy()), f, targets);
}

}  // namespace

CollisionConfig two_qubit_config(const TwoQubitParams& p, std::uint64_t seed, LogBase base) {
  require_beta(p.beta_1);
  require_beta(p.beta_2);
  require_positive(p.tau, "two_qubit_local_global: tau");
  const ComplexMatrix h1 = half_sigma_z(p.omega);
  const ComplexMatrix id = la::identity(2);
  CollisionConfig cfg;
  cfg.system_dim = 4;
  cfg.system_hamiltonian = la::kron(h1, id) + la::kron(id, h1) + two_qubit_internal(p);
  cfg.system_init = DensityMatrix::maximally_mixed(4);
  cfg.streams = {AncillaStreamSpec::thermal(h1, p.beta_1, StreamRole::bath),
                 AncillaStreamSpec::thermal(h1, p.beta_2, StreamRole::bath)};
  cfg.interactions = {local_exchange(0), local_exchange(1)};
  cfg.tau = p.tau;
  cfg.coupling = p.g;
  cfg.n_steps = p.n_steps;
  cfg.backend = p.backend;
  cfg.full_qubit_cap = p.full_qubit_cap;
  cfg.rng_seed = seed;
  cfg.log_base = base;
  return cfg;
}

TwoQubitSummary summarize_two_qubit(const TwoQubitParams& p, const Trajectory& traj) {
  TwoQubitSummary out;
  out.fluxes = thermo::steady_state_fluxes(traj, p.window);
  if (!out.fluxes.converged) not_converged("two_qubit_local_global", out.fluxes.drift);
  out.heat_current = {out.fluxes.Q_rate_per_stream.at(0), out.fluxes.Q_rate_per_stream.at(1)};
  out.work_rate = out.fluxes.W_rate;
  for (const auto& r : traj.records) {
    out.total_work += r.W;
    out.max_abs_work = std::max(out.max_abs_work, std::abs(r.W));
    out.cumulative_sigma += r.Sigma;
  }
  out.max_first_law_residual = thermo::build_ledger(traj).max_first_law_residual;

  const la::HilbertFactorization f{{2, 2, 2}};
  const std::vector<std::size_t> system{0, 1};
  out.global_commutator =
      la::commutator_norm(la::embed(two_qubit_internal(p), f, system), local_exchange(0));

  // The colder reservoir (larger β) must absorb more heat per collision.
  const double dq = out.heat_current[1] - out.heat_current[0];
  const double dbeta = p.beta_2 - p.beta_1;
  out.current_sign_consistent =
      dbeta == 0.0 ? std::abs(dq) < kCurrentDeadband : dq * dbeta > 0.0;
  return out;
}

// --- landauer --------------------------------------------------------------

LandauerParams parse_landauer(const json& overrides) {
  LandauerParams p;
  Overrides o(overrides, "landauer");
  o.read("omega", p.omega);
  o.read("g", p.g);
  o.read("tau", p.tau);
  o.read("theta", p.theta);
  o.read_enum("coupling", p.coupling,
              std::map<std::string, LandauerCoupling>{{"xx", LandauerCoupling::xx},
                                                      {"partial_swap", LandauerCoupling::partial_swap}});
  o.read("beta_grid", p.beta_grid);
  o.read("n_steps", p.n_steps);
  o.read("window", p.window);
  o.finish();
  return p;
}

CollisionConfig landauer_config(const LandauerParams& p, double beta, std::uint64_t seed,
                                LogBase base) {
  require_beta(beta);
  require_positive(p.tau, "landauer: tau");
  const ComplexMatrix h = half_sigma_z(p.omega);
  CollisionConfig cfg;
  cfg.system_dim = 2;
  cfg.system_hamiltonian = h;
  cfg.system_init = DensityMatrix::maximally_mixed(2);
  cfg.streams = {AncillaStreamSpec::thermal(h, beta, StreamRole::bath)};
  if (p.coupling == LandauerCoupling::xx) {
    cfg.interactions = {xx()};
  } else {
    cfg.partial_swap_theta = p.theta;
  }
  cfg.tau = p.tau;
  cfg.coupling = p.g;
  cfg.n_steps = p.n_steps;
  cfg.rng_seed = seed;
  cfg.log_base = base;
  return cfg;
}

std::vector<LandauerPoint> run_landauer(const LandauerParams& p, std::uint64_t seed,
                                        LogBase base, Trajectory* first_trajectory) {
  for (const double beta : p.beta_grid) landauer_config(p, beta, seed, base).validate();
  auto results = parallel_map(p.beta_grid.size(), [&](std::size_t i) {
    const double beta = p.beta_grid[i];
    Trajectory traj = engine::run(landauer_config(p, beta, seed, base));
    LandauerPoint point;
    point.beta = beta;
    point.report = thermo::landauer_report(traj, p.window, base);
    const auto& r = point.report;
    point.anc_form_gap = r.beta_Q - r.dS_anc - r.I_SE - r.D_relent;
    return std::pair{std::move(point), i == 0 ? std::move(traj) : Trajectory{}};
  });
  std::vector<LandauerPoint> points;
  for (auto& [point, traj] : results) points.push_back(std::move(point));
  if (first_trajectory) *first_trajectory = std::move(results.front().second);
  return points;
}

// --- continuous_limit ------------------------------------------------------

ContinuousLimitParams parse_continuous_limit(const json& overrides) {
  ContinuousLimitParams p;
  Overrides o(overrides, "continuous_limit");
  o.read("gamma", p.gamma);
  o.read("total_time", p.total_time);
  o.read("tau_grid", p.tau_grid);
  o.finish();
  return p;
}

CollisionConfig continuous_limit_config(const ContinuousLimitParams& p, double tau,
                                        std::uint64_t seed, LogBase base) {
  if (!(p.gamma >= 0.0)) throw ConfigError("continuous_limit: gamma must be >= 0");
  require_positive(tau, "continuous_limit: tau");
  require_positive(p.total_time, "continuous_limit: total_time");
  const ComplexMatrix h = half_sigma_z(1.0);
  CollisionConfig cfg;
  cfg.system_dim = 2;
  cfg.system_hamiltonian = h;
  cfg.system_init = DensityMatrix::basis(2, 0);  // excited
  cfg.streams = {AncillaStreamSpec::prepared(h, DensityMatrix::basis(2, 1))};
  cfg.partial_swap_theta = std::sqrt(p.gamma * tau);
  cfg.tau = tau;
  cfg.n_steps = static_cast<std::size_t>(std::llround(p.total_time / tau));
  cfg.rng_seed = seed;
  cfg.log_base = base;
  return cfg;
}

ContinuousLimitSummary run_continuous_limit(const ContinuousLimitParams& p, std::uint64_t seed,
                                            LogBase base, Trajectory* finest) {
  for (const double tau : p.tau_grid) continuous_limit_config(p, tau, seed, base).validate();
  const auto runs = parallel_map(p.tau_grid.size(), [&](std::size_t i) {
    return engine::run(continuous_limit_config(p, p.tau_grid[i], seed, base));
  });
  const auto excited = [](const Trajectory& t) {
    std::vector<double> pops;
    for (const auto& rho : t.snapshots) pops.push_back(rho.matrix()(0, 0).real());
    return pops;
  };

  const std::size_t fine = static_cast<std::size_t>(
      std::min_element(p.tau_grid.begin(), p.tau_grid.end()) - p.tau_grid.begin());
  ContinuousLimitSummary out;
  {
    // Least-squares slope of ln P(t) through the origin.
    const auto pops = excited(runs[fine]);
    double num = 0.0, den = 0.0;
    for (std::size_t n = 1; n < pops.size(); ++n) {
      if (!(pops[n] > 0.0)) break;
      const double t = static_cast<double>(n) * p.tau_grid[fine];
      num += t * std::log(pops[n]);
      den += t * t;
    }
    out.fitted_rate = den > 0.0 ? -num / den : 0.0;
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto pops = excited(runs[i]);
    double dev = 0.0;
    for (std::size_t n = 0; n < pops.size(); ++n) {
      const double t = static_cast<double>(n) * p.tau_grid[i];
      dev = std::max(dev, std::abs(pops[n] - std::exp(-out.fitted_rate * t)));
    }
    out.max_deviation.push_back(dev);
  }
  out.strictly_decreasing = true;
  for (std::size_t i = 1; i < out.max_deviation.size(); ++i)
    out.strictly_decreasing = out.strictly_decreasing && out.max_deviation[i] < out.max_deviation[i - 1];
  if (finest) *finest = runs[fine];
  return out;
}

// --- dispatch --------------------------------------------------------------

ScenarioResult run_scenario(const ScenarioSpec& spec) {
  if (!is_registered(spec.name)) {
    std::string names;
    for (const auto& n : registry()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("unknown scenario '" + spec.name + "'; registered: " + names);
  }
  ScenarioResult res;
  res.name = spec.name;
  res.seed = spec.seed;
  const LogBase base = spec.log_base;
  json& s = res.summary;
  s["scenario"] = spec.name;
  s["seed"] = spec.seed;
  s["log_base"] = base == LogBase::bits ? "2" : "e";

  if (spec.name == "thermalization") {
    const auto p = parse_thermalization(spec.overrides);
    s["parameters"] = {{"omega", p.omega},         {"beta", p.beta},
                       {"theta", p.theta},         {"n_steps", p.n_steps},
                       {"init_bloch", p.init_bloch}, {"erasure_lambda", p.erasure_lambda},
                       {"backend", engine::to_string(p.backend)},
                       {"full_qubit_cap", p.full_qubit_cap}};
    res.primary = engine::run(thermalization_config(p, spec.seed, base));
    const auto sum = summarize_thermalization(p, res.primary);
    s["final_distance"] = sum.final_distance;
    s["max_increase"] = sum.max_increase;
    s["monotone"] = sum.monotone;
  } else if (spec.name == "nonmarkov_sweep") {
    const auto p = parse_nonmarkov(spec.overrides);
    json modes = json::array();
    for (const auto m : p.modes) modes.push_back(engine::to_string(m));
    s["parameters"] = {{"omega", p.omega},       {"beta", p.beta},
                       {"theta", p.theta},       {"aa_theta", p.aa_theta},
                       {"p_grid", p.p_grid},     {"modes", modes},
                       {"n_steps", p.n_steps},   {"metric", engine::to_string(p.metric)},
                       {"full_qubit_cap", p.full_qubit_cap}};
    auto points = run_nonmarkov_sweep(p, spec.seed, base);
    json out = json::array();
    for (const auto& pt : points) {
      out.push_back({{"mode", engine::to_string(pt.mode)},
                     {"p", pt.p},
                     {"blp", pt.blp},
                     {"first_revival", optional_json(pt.first_revival)},
                     {"dominant_bound", pt.dominant_bound ? to_json(*pt.dominant_bound) : json(nullptr)},
                     {"min_slack", optional_json(pt.min_slack)},
                     {"series", pt.series}});
    }
    s["points"] = out;
    // The CSV carries the strongest-memory point: first mode, largest p.
    const std::size_t best = static_cast<std::size_t>(
        std::max_element(p.p_grid.begin(), p.p_grid.end()) - p.p_grid.begin());
    s["primary"] = {{"mode", engine::to_string(points[best].mode)}, {"p", points[best].p}};
    res.primary = std::move(points[best].trajectory);
  } else if (spec.name == "battery") {
    const auto p = parse_battery(spec.overrides);
    s["parameters"] = {{"omega", p.omega}, {"beta", p.beta},       {"g", p.g},
                       {"tau", p.tau},     {"n_steps", p.n_steps}, {"window", p.window},
                       {"coupling", p.coupling == BatteryCoupling::inverting ? "inverting" : "thermalizing"}};
    res.primary = engine::run(battery_config(p, spec.seed, base));
    const auto sum = summarize_battery(p, res.primary);
    s["p_ground"] = sum.p_ground;
    s["p_excited"] = sum.p_excited;
    s["population_inverted"] = sum.population_inverted;
    s["distance_to_inverted"] = sum.distance_to_inverted;
    s["distance_to_thermal"] = sum.distance_to_thermal;
    s["ergotropy"] = sum.ergotropy;
    s["non_passive"] = sum.ergotropy > 0.0;
    s["max_transient_work"] = sum.max_transient_work;
    s["fluxes"] = to_json(sum.fluxes);
  } else if (spec.name == "two_qubit_local_global") {
    const auto p = parse_two_qubit(spec.overrides);
    s["parameters"] = {{"omega", p.omega},   {"kappa", p.kappa},
                       {"internal_coupling", p.internal == InternalCoupling::xx ? "xx" : "exchange"},
                       {"beta_1", p.beta_1}, {"beta_2", p.beta_2},
                       {"g", p.g},           {"tau", p.tau},
                       {"n_steps", p.n_steps}, {"window", p.window},
                       {"backend", engine::to_string(p.backend)},
                       {"full_qubit_cap", p.full_qubit_cap}};
    res.primary = engine::run(two_qubit_config(p, spec.seed, base));
    const auto sum = summarize_two_qubit(p, res.primary);
    s["heat_current"] = sum.heat_current;
    s["work_rate"] = sum.work_rate;
    s["total_work"] = sum.total_work;
    s["max_abs_work"] = sum.max_abs_work;
    s["max_first_law_residual"] = sum.max_first_law_residual;
    s["cumulative_sigma"] = sum.cumulative_sigma;
    s["global_commutator"] = sum.global_commutator;
    s["current_sign_consistent"] = sum.current_sign_consistent;
    s["fluxes"] = to_json(sum.fluxes);
  } else if (spec.name == "landauer") {
    const auto p = parse_landauer(spec.overrides);
    s["parameters"] = {{"omega", p.omega}, {"g", p.g}, {"tau", p.tau}, {"theta", p.theta},
                       {"coupling", p.coupling == LandauerCoupling::xx ? "xx" : "partial_swap"},
                       {"beta_grid", p.beta_grid}, {"n_steps", p.n_steps}, {"window", p.window}};
    const auto points = run_landauer(p, spec.seed, base, &res.primary);
    json out = json::array();
    for (const auto& pt : points) {
      json r = to_json(pt.report);
      r["beta"] = pt.beta;
      r["anc_form_gap"] = pt.anc_form_gap;
      out.push_back(r);
    }
    s["points"] = out;
    s["primary"] = {{"beta", p.beta_grid.front()}};
  } else {
    const auto p = parse_continuous_limit(spec.overrides);
    s["parameters"] = {{"gamma", p.gamma}, {"total_time", p.total_time}, {"tau_grid", p.tau_grid}};
    const auto sum = run_continuous_limit(p, spec.seed, base, &res.primary);
    s["fitted_rate"] = sum.fitted_rate;
    s["max_deviation"] = sum.max_deviation;
    s["strictly_decreasing"] = sum.strictly_decreasing;
    s["primary"] = {{"tau", *std::min_element(p.tau_grid.begin(), p.tau_grid.end())}};
  }
  return res;
}

}  // namespace collisim::scenarios
