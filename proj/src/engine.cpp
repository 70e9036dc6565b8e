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

#include "collisim/engine.hpp"

#include <cmath>
#include <sstream>

#include "collisim/errors.hpp"
#include "collisim/thermo.hpp"

namespace collisim::engine {

namespace {

// Eigenvalues of an evolved state below this abort the run.
constexpr double kEigenFloor = -1e-8;

std::size_t ceil_log2(std::size_t d) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < d) ++q;
  return q;
}

void require_hermitian(const ComplexMatrix& m, std::size_t dim, const std::string& what) {
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
    std::ostringstream os;
    os << what << " must be " << dim << "x" << dim << ", got " << m.rows() << "x" << m.cols();
    throw ConfigError(os.str());
  }
  if (!linalg::is_hermitian(m)) throw ConfigError(what + " is not Hermitian");
}

// Hermitize, renormalize, and check the spectrum of an evolved state.
ComplexMatrix sanitize(const ComplexMatrix& m, const ComplexMatrix* spectrum_probe = nullptr) {
  ComplexMatrix out = linalg::hermitize(m);
  const double tr = out.trace().real();
  if (!std::isfinite(tr) || tr <= 0.0)
    throw NumericalIntegrityError("state trace collapsed during a collision");
  out /= tr;
  const ComplexMatrix& probe = spectrum_probe ? *spectrum_probe : out;
  const double min_eig = linalg::herm_eigenvalues(linalg::hermitize(probe)).minCoeff();
  if (min_eig < kEigenFloor) {
    std::ostringstream os;
    os << "state lost positivity (min eigenvalue " << min_eig << ")";
    throw NumericalIntegrityError(os.str());
  }
  return out;
}

}  // namespace

std::string to_string(AaMode mode) {
  switch (mode) {
    case AaMode::off: return "off";
    case AaMode::coherent: return "coherent";
    case AaMode::incoherent: return "incoherent";
  }
  return "?";
}

std::string to_string(Backend backend) {
  return backend == Backend::full ? "full" : "windowed";
}

std::string to_string(Metric metric) {
  return metric == Metric::trace ? "trace" : "jensen-shannon";
}

double distance(Metric metric, const DensityMatrix& a, const DensityMatrix& b, LogBase base) {
  return metric == Metric::trace ? qstate::trace_distance(a, b)
                                 : qstate::js_distance(a, b, base);
}

AncillaStreamSpec AncillaStreamSpec::thermal(ComplexMatrix h, double beta, StreamRole role) {
  AncillaStreamSpec s;
  s.dim = static_cast<std::size_t>(h.rows());
  s.init_state = qstate::thermal_state(h, beta);
  s.hamiltonian = std::move(h);
  s.role = role;
  s.beta = beta;
  return s;
}

AncillaStreamSpec AncillaStreamSpec::prepared(ComplexMatrix h, DensityMatrix init,
                                              StreamRole role) {
  AncillaStreamSpec s;
  s.dim = static_cast<std::size_t>(h.rows());
  s.hamiltonian = std::move(h);
  s.init_state = std::move(init);
  s.role = role;
  return s;
}

double CoinSource::next() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

void CollisionConfig::validate() const {
  if (system_dim < 2) throw ConfigError("system_dim must be at least 2");
  require_hermitian(system_hamiltonian, system_dim, "system Hamiltonian");
  if (system_init.dim() != system_dim)
    throw ConfigError("system initial state dimension differs from system_dim");
  if (streams.empty()) throw ConfigError("at least one ancilla stream is required");
  for (std::size_t k = 0; k < streams.size(); ++k) {
    const auto& s = streams[k];
    const std::string name = "stream " + std::to_string(k);
    if (s.dim < 2) throw ConfigError(name + ": dimension must be at least 2");
    require_hermitian(s.hamiltonian, s.dim, name + " Hamiltonian");
    if (s.init_state.dim() != s.dim)
      throw ConfigError(name + ": initial state dimension differs from declared dim");
    if (s.beta) {
      if (!std::isfinite(*s.beta) || *s.beta < 0.0)
        throw ConfigError(name + ": beta must be finite and >= 0");
      const auto th = qstate::thermal_state(s.hamiltonian, *s.beta);
      if (linalg::max_abs(th.matrix() - s.init_state.matrix()) > 1e-10)
        throw ConfigError(name + ": initial state is not the thermal state at beta");
    }
    if (s.role == StreamRole::bath && !s.beta)
      throw ConfigError(name + ": a bath stream must be thermal (beta required)");
  }
  if (partial_swap_theta) {
    if (!std::isfinite(*partial_swap_theta)) throw ConfigError("partial_swap_theta not finite");
    for (const auto& s : streams)
      if (s.dim != system_dim)
        throw ConfigError("partial SWAP collisions need ancillas of the system dimension");
  } else {
    if (interactions.size() != streams.size())
      throw ConfigError("one interaction per stream is required");
    for (std::size_t k = 0; k < streams.size(); ++k)
      require_hermitian(interactions[k], system_dim * streams[k].dim,
                        "interaction " + std::to_string(k));
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive");
  if (!std::isfinite(coupling)) throw ConfigError("coupling must be finite");
  if (n_steps < 1) throw ConfigError("n_steps must be at least 1");
  if (!(aa_swap_prob >= 0.0 && aa_swap_prob <= 1.0))
    throw ConfigError("aa_swap_prob must lie in [0, 1]");
  if (!(erasure_lambda >= 0.0 && erasure_lambda <= 1.0))
    throw ConfigError("erasure_lambda must lie in [0, 1]");
  if (!std::isfinite(aa_theta)) throw ConfigError("aa_theta must be finite");
  if (aa_mode != AaMode::off) {
    if (streams.size() != 1)
      throw ConfigError("ancilla-ancilla collisions need exactly one ancilla stream");
    if (streams.front().role == StreamRole::bath)
      throw ConfigError("ancilla-ancilla collisions give the stream memory; use a resource stream");
  }
  if (backend == Backend::full && full_backend_qubits() > full_qubit_cap) {
    std::ostringstream os;
    os << "full backend needs " << full_backend_qubits()
       << " qubits (joint dimension 2^" << full_backend_qubits() << ") but the cap is "
       << full_qubit_cap;
    throw ConfigError(os.str());
  }
}

std::size_t CollisionConfig::stream_for_step(std::size_t step) const {
  return (step - 1) % streams.size();
}

std::size_t CollisionConfig::full_backend_qubits() const {
  std::size_t q = ceil_log2(system_dim);
  for (std::size_t step = 1; step <= n_steps; ++step)
    q += ceil_log2(streams[stream_for_step(step)].dim);
  return q;
}

ComplexMatrix partial_swap_unitary(std::size_t dim, double theta) {
  if (dim < 2) throw ConfigError("partial_swap_unitary: dim must be at least 2");
  return std::cos(theta) * linalg::identity(dim * dim) +
         Complex(0.0, std::sin(theta)) * linalg::swap_operator(dim);
}

ComplexMatrix collision_unitary(const CollisionConfig& cfg, std::size_t stream) {
  const auto& s = cfg.streams.at(stream);
  if (cfg.partial_swap_theta) {
    if (s.dim != cfg.system_dim)
      throw ConfigError("partial SWAP collisions need ancillas of the system dimension");
    return partial_swap_unitary(s.dim, *cfg.partial_swap_theta);
  }
  const auto& v = cfg.interactions.at(stream);
  const auto d = cfg.system_dim * s.dim;
  if (static_cast<std::size_t>(v.rows()) != d || static_cast<std::size_t>(v.cols()) != d)
    throw ConfigError("interaction dimension does not match system ⊗ ancilla");
  const ComplexMatrix h_tot = linalg::kron(cfg.system_hamiltonian, linalg::identity(s.dim)) +
                              linalg::kron(linalg::identity(cfg.system_dim), s.hamiltonian) +
                              cfg.coupling * v;
  return linalg::unitary_from_hamiltonian(h_tot, cfg.tau);
}

ComplexMatrix erase_correlations(const ComplexMatrix& joint,
                                 const linalg::HilbertFactorization& f, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw ConfigError("erase_correlations: lambda must lie in [0, 1]");
  if (f.size() < 2) throw ConfigError("erase_correlations: need system and environment factors");
  if (lambda == 1.0) return joint;
  const std::array<std::size_t, 1> system{0};
  std::vector<std::size_t> env;
  for (std::size_t i = 1; i < f.size(); ++i) env.push_back(i);
  const ComplexMatrix product = linalg::kron(linalg::partial_trace(joint, f, system),
                                             linalg::partial_trace(joint, f, env));
  return lambda * joint + (1.0 - lambda) * product;
}

ComplexMatrix apply_aa_collision(const ComplexMatrix& joint,
                                 const linalg::HilbertFactorization& f,
                                 std::array<std::size_t, 2> pair, double p, AaMode mode,
                                 double theta_aa, CoinSource& coins) {
  if (mode == AaMode::off) return joint;
  if (pair[0] >= f.size() || pair[1] >= f.size() || pair[0] == pair[1])
    throw ConfigError("apply_aa_collision: invalid ancilla pair");
  if (f.dims[pair[0]] != f.dims[pair[1]])
    throw ConfigError("apply_aa_collision: ancillas must have equal dimension");
  const ComplexMatrix u = partial_swap_unitary(f.dims[pair[0]], theta_aa);
  if (mode == AaMode::incoherent) {
    const double coin = coins.next();
    return coin < p ? linalg::conjugate_local(joint, f, pair, u) : joint;
  }
  if (p == 0.0) return joint;
  const ComplexMatrix swapped = linalg::conjugate_local(joint, f, pair, u);
  if (p == 1.0) return swapped;
  return p * swapped + (1.0 - p) * joint;
}

Collider::Collider(CollisionConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  for (std::size_t k = 0; k < cfg_.streams.size(); ++k) {
    unitaries_.push_back(collision_unitary(cfg_, k));
    const auto& s = cfg_.streams[k];
    if (s.beta)
      thermal_refs_.emplace_back(qstate::thermal_state(s.hamiltonian, *s.beta));
    else
      thermal_refs_.emplace_back(std::nullopt);
  }
}

WindowState Collider::initial_window(const DensityMatrix& system) const {
  if (system.dim() != cfg_.system_dim)
    throw ConfigError("initial system state has the wrong dimension");
  return {system.matrix(), linalg::HilbertFactorization{{cfg_.system_dim}}};
}

CollisionRecord Collider::make_record(const ComplexMatrix& pair_before,
                                      const ComplexMatrix& pair_after, std::size_t step,
                                      std::size_t stream) const {
  const auto& s = cfg_.streams[stream];
  const auto& ref = thermal_refs_[stream];
  const auto acc = thermo::account_collision(
      pair_before, pair_after, cfg_.system_dim, s.dim, cfg_.system_hamiltonian, s.hamiltonian,
      ref ? &*ref : nullptr,
      s.role == StreamRole::bath ? s.beta : std::optional<double>{}, cfg_.log_base);
  CollisionRecord r;
  r.step = step;
  r.stream = stream;
  r.role = s.role;
  r.bath_beta = s.role == StreamRole::bath ? s.beta : std::optional<double>{};
  r.E_S_before = acc.E_S_before;
  r.E_S_after = acc.E_S_after;
  r.E_anc_before = acc.E_anc_before;
  r.E_anc_after = acc.E_anc_after;
  r.Q = acc.Q;
  r.W = acc.W;
  r.S_S_before = acc.S_S_before;
  r.S_S_after = acc.S_S_after;
  r.S_anc_before = acc.S_anc_before;
  r.S_anc_after = acc.S_anc_after;
  r.I_before = acc.I_before;
  r.I_SE = acc.I_after;
  r.D_relent = acc.D_relent;
  r.Sigma = acc.Sigma;
  return r;
}

StepResult Collider::step_windowed(const WindowState& state, std::size_t step,
                                   CoinSource& coins) const {
  const std::size_t k = cfg_.stream_for_step(step);
  const auto& stream = cfg_.streams[k];

  WindowState w;
  w.factors = state.factors;
  w.factors.dims.push_back(stream.dim);
  w.joint = linalg::kron(state.joint, stream.init_state.matrix());
  const std::size_t fresh = w.factors.size() - 1;

  if (cfg_.aa_mode != AaMode::off) {
    if (fresh >= 2) {
      w.joint = apply_aa_collision(w.joint, w.factors, {fresh - 1, fresh}, cfg_.aa_swap_prob,
                                   cfg_.aa_mode, cfg_.aa_theta, coins);
    } else if (cfg_.aa_mode == AaMode::incoherent) {
      coins.next();  // one coin per step, even with nothing to swap yet
    }
  }

  const std::array<std::size_t, 2> pair{0, fresh};
  const ComplexMatrix before = linalg::partial_trace(w.joint, w.factors, pair);
  w.joint = linalg::conjugate_local(w.joint, w.factors, pair, unitaries_[k]);
  const ComplexMatrix after = linalg::partial_trace(w.joint, w.factors, pair);
  CollisionRecord record = make_record(before, after, step, k);

  w.joint = sanitize(erase_correlations(w.joint, w.factors, cfg_.erasure_lambda));

  WindowState next;
  if (cfg_.aa_mode == AaMode::off) {
    const std::array<std::size_t, 1> keep{0};
    next.joint = linalg::partial_trace(w.joint, w.factors, keep);
    next.factors.dims = {cfg_.system_dim};
  } else {
    next.joint = linalg::partial_trace(w.joint, w.factors, pair);
    next.factors.dims = {cfg_.system_dim, stream.dim};
  }
  return {std::move(next), std::move(record)};
}

Trajectory Collider::run() const {
  return run(cfg_.system_init);
}

Trajectory Collider::run(const DensityMatrix& system_init) const {
  if (cfg_.backend == Backend::full) return run_full(system_init, false).trajectory;
  return run_windowed(system_init);
}

Trajectory Collider::run_windowed(const DensityMatrix& system_init) const {
  Trajectory traj;
  traj.records.reserve(cfg_.n_steps);
  CoinSource coins(cfg_.rng_seed);
  WindowState state = initial_window(system_init);
  const std::array<std::size_t, 1> system{0};
  if (cfg_.keep_snapshots) traj.snapshots.push_back(system_init);
  for (std::size_t step = 1; step <= cfg_.n_steps; ++step) {
    auto result = step_windowed(state, step, coins);
    state = std::move(result.state);
    traj.records.push_back(std::move(result.record));
    if (cfg_.keep_snapshots)
      traj.snapshots.push_back(
          DensityMatrix::trusted(linalg::partial_trace(state.joint, state.factors, system)));
  }
  return traj;
}

FullRun Collider::run_full(const DensityMatrix& system_init, bool keep_joints) const {
  if (cfg_.full_backend_qubits() > cfg_.full_qubit_cap) {
    std::ostringstream os;
    os << "full backend needs " << cfg_.full_backend_qubits() << " qubits but the cap is "
       << cfg_.full_qubit_cap;
    throw ConfigError(os.str());
  }
  if (system_init.dim() != cfg_.system_dim)
    throw ConfigError("initial system state has the wrong dimension");
  FullRun out;
  auto& traj = out.trajectory;
  CoinSource coins(cfg_.rng_seed);
  ComplexMatrix joint = system_init.matrix();
  linalg::HilbertFactorization f{{cfg_.system_dim}};
  const std::array<std::size_t, 1> system{0};
  if (cfg_.keep_snapshots) traj.snapshots.push_back(system_init);
  if (keep_joints) {
    out.joints.push_back(joint);
    out.factors.push_back(f);
  }
  for (std::size_t step = 1; step <= cfg_.n_steps; ++step) {
    const std::size_t k = cfg_.stream_for_step(step);
    const auto& stream = cfg_.streams[k];
    joint = linalg::kron(joint, stream.init_state.matrix());
    f.dims.push_back(stream.dim);
    const std::size_t fresh = f.size() - 1;
    if (cfg_.aa_mode != AaMode::off) {
      if (fresh >= 2) {
        joint = apply_aa_collision(joint, f, {fresh - 1, fresh}, cfg_.aa_swap_prob,
                                   cfg_.aa_mode, cfg_.aa_theta, coins);
      } else if (cfg_.aa_mode == AaMode::incoherent) {
        coins.next();
      }
    }
    const std::array<std::size_t, 2> pair{0, fresh};
    const ComplexMatrix before = linalg::partial_trace(joint, f, pair);
    joint = linalg::conjugate_local(joint, f, pair, unitaries_[k]);
    const ComplexMatrix after = linalg::partial_trace(joint, f, pair);
    traj.records.push_back(make_record(before, after, step, k));

    joint = erase_correlations(joint, f, cfg_.erasure_lambda);
    // The joint space is too large to diagonalize every step; positivity is
    // probed on the collision pair instead.
    const ComplexMatrix probe = linalg::partial_trace(joint, f, pair);
    joint = sanitize(joint, &probe);

    if (cfg_.keep_snapshots)
      traj.snapshots.push_back(DensityMatrix::trusted(linalg::partial_trace(joint, f, system)));
    if (keep_joints) {
      out.joints.push_back(joint);
      out.factors.push_back(f);
    }
  }
  traj.final_joint = DensityMatrix::trusted(joint);
  traj.final_factors = f;
  return out;
}

std::pair<Trajectory, Trajectory> Collider::run_paired(const DensityMatrix& a,
                                                       const DensityMatrix& b) const {
  Collider with_snapshots = *this;
  with_snapshots.cfg_.keep_snapshots = true;
  Trajectory ta = with_snapshots.run(a);
  Trajectory tb = with_snapshots.run(b);
  for (std::size_t n = 0; n < ta.records.size(); ++n) {
    const double d = distance(cfg_.pair_metric, ta.snapshots[n + 1], tb.snapshots[n + 1],
                              cfg_.log_base);
    ta.records[n].D_pair = d;
    tb.records[n].D_pair = d;
  }
  return {std::move(ta), std::move(tb)};
}

Trajectory run(const CollisionConfig& cfg) {
  return Collider(cfg).run();
}

std::pair<Trajectory, Trajectory> run_paired(const CollisionConfig& cfg,
                                             const DensityMatrix& init_a,
                                             const DensityMatrix& init_b) {
  return Collider(cfg).run_paired(init_a, init_b);
}

}  // namespace collisim::engine
