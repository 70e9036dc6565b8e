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

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "collisim/linalg.hpp"
#include "collisim/qstate.hpp"

namespace collisim::engine {

enum class AaMode { off, coherent, incoherent };
enum class Backend { windowed, full };
enum class StreamRole { resource, bath };
enum class Metric { trace, jensen_shannon };

std::string to_string(AaMode mode);
std::string to_string(Backend backend);
std::string to_string(Metric metric);

double distance(Metric metric, const DensityMatrix& a, const DensityMatrix& b, LogBase base);

/// One stream of identical ancillas.
///
/// A bath stream is a memoryless thermal reservoir: it must carry `beta`, and
/// its entropy enters the entropy production through β·Q. A resource stream
/// is accounted through the von Neumann entropy change of each unit.
struct AncillaStreamSpec {
  std::size_t dim = 2;
  ComplexMatrix hamiltonian;
  DensityMatrix init_state;
  StreamRole role = StreamRole::resource;
  std::optional<double> beta;

  static AncillaStreamSpec thermal(ComplexMatrix h, double beta,
                                   StreamRole role = StreamRole::bath);
  static AncillaStreamSpec prepared(ComplexMatrix h, DensityMatrix init,
                                    StreamRole role = StreamRole::resource);
};

struct CollisionConfig {
  std::size_t system_dim = 2;
  ComplexMatrix system_hamiltonian;
  DensityMatrix system_init;
  // Streams are visited strictly in turn: step n collides with stream
  // (n - 1) mod streams.size().
  std::vector<AncillaStreamSpec> streams;
  // V for each stream, on system ⊗ ancilla. Ignored when partial_swap_theta is
  // set.
  std::vector<ComplexMatrix> interactions;
  double tau = 1.0;
  double coupling = 1.0;
  // Use cos θ·1 + i sin θ·SWAP directly instead of exp(-i(H_S + H_E + gV)τ).
  std::optional<double> partial_swap_theta;
  std::size_t n_steps = 1;
  double aa_swap_prob = 0.0;
  AaMode aa_mode = AaMode::off;
  double aa_theta = std::numbers::pi / 2;
  double erasure_lambda = 1.0;
  std::uint64_t rng_seed = 0;
  Backend backend = Backend::windowed;
  std::size_t full_qubit_cap = 10;
  LogBase log_base = LogBase::bits;
  Metric pair_metric = Metric::trace;
  bool keep_snapshots = true;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
  std::size_t stream_for_step(std::size_t step) const;
  /// Qubit-equivalent size (Σ ceil(log2 d)) of the joint space after n_steps.
  std::size_t full_backend_qubits() const;
};

struct CollisionRecord {
  std::size_t step = 0;  // 1-based
  std::size_t stream = 0;
  StreamRole role = StreamRole::resource;
  std::optional<double> bath_beta;
  double E_S_before = 0, E_S_after = 0;
  double E_anc_before = 0, E_anc_after = 0;
  double Q = 0;
  double W = 0;
  double S_S_before = 0, S_S_after = 0;
  double S_anc_before = 0, S_anc_after = 0;
  double I_before = 0;
  double I_SE = 0;
  std::optional<double> D_relent;
  double Sigma = 0;
  std::optional<double> D_pair;

  double Q_resource() const { return role == StreamRole::resource ? Q : 0.0; }
  double Q_bath() const { return role == StreamRole::bath ? Q : 0.0; }
  double first_law_residual() const { return (E_S_after - E_S_before) - (W - Q); }
};

struct Trajectory {
  std::vector<CollisionRecord> records;
  std::vector<DensityMatrix> snapshots;  // system marginal, index 0 = initial
  std::optional<DensityMatrix> final_joint;
  std::optional<linalg::HilbertFactorization> final_factors;
};

/// Live state of the windowed backend: the system alone, or the system plus
/// the most recent ancilla when ancilla-ancilla collisions are enabled.
struct WindowState {
  ComplexMatrix joint;
  linalg::HilbertFactorization factors;
};

struct StepResult {
  WindowState state;
  CollisionRecord record;
};

/// Seedable coin source. Coins are built from the raw 64-bit mt19937_64
/// output so the sequence is identical on every standard library.
class CoinSource {
 public:
  explicit CoinSource(std::uint64_t seed) : gen_(seed) {}
  double next();

 private:
  std::mt19937_64 gen_;
};

ComplexMatrix partial_swap_unitary(std::size_t dim, double theta);
ComplexMatrix collision_unitary(const CollisionConfig& cfg, std::size_t stream);

/// λ·ρ + (1-λ)·ρ_S⊗ρ_E, with S = factor 0 and E = every other factor.
ComplexMatrix erase_correlations(const ComplexMatrix& joint,
                                 const linalg::HilbertFactorization& f, double lambda);

/// Stochastic SWAP between two ancilla factors. Incoherent mode draws exactly
/// one coin; coherent mode applies p·SρS† + (1-p)·ρ.
ComplexMatrix apply_aa_collision(const ComplexMatrix& joint,
                                 const linalg::HilbertFactorization& f,
                                 std::array<std::size_t, 2> pair, double p, AaMode mode,
                                 double theta_aa, CoinSource& coins);

/// Joint states of a full-backend run, index s = 0 .. n_steps.
struct FullRun {
  Trajectory trajectory;
  std::vector<ComplexMatrix> joints;
  std::vector<linalg::HilbertFactorization> factors;
};

/// Precomputes the collision unitaries of a validated config and runs it.
class Collider {
 public:
  explicit Collider(CollisionConfig cfg);

  const CollisionConfig& config() const { return cfg_; }
  const ComplexMatrix& unitary(std::size_t stream) const { return unitaries_[stream]; }

  WindowState initial_window(const DensityMatrix& system) const;
  StepResult step_windowed(const WindowState& state, std::size_t step,
                           CoinSource& coins) const;

  Trajectory run() const;
  Trajectory run(const DensityMatrix& system_init) const;
  FullRun run_full(const DensityMatrix& system_init, bool keep_joints) const;
  std::pair<Trajectory, Trajectory> run_paired(const DensityMatrix& a,
                                               const DensityMatrix& b) const;

 private:
  Trajectory run_windowed(const DensityMatrix& system_init) const;
  CollisionRecord make_record(const ComplexMatrix& pair_before,
                              const ComplexMatrix& pair_after, std::size_t step,
                              std::size_t stream) const;

  CollisionConfig cfg_;
  std::vector<ComplexMatrix> unitaries_;
  std::vector<std::optional<DensityMatrix>> thermal_refs_;
  ComplexMatrix aa_unitary_;
};

Trajectory run(const CollisionConfig& cfg);
std::pair<Trajectory, Trajectory> run_paired(const CollisionConfig& cfg,
                                             const DensityMatrix& init_a,
                                             const DensityMatrix& init_b);

}  // namespace collisim::engine
