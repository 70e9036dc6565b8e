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

#include "collisim/linalg.hpp"
#include "collisim/qstate.hpp"

// Per-collision energetics and entropy bookkeeping on a system⊗ancilla pair.
//
// Sign conventions, used everywhere in the library:
//   Q > 0  heat flows into the ancilla (dissipated by the system side),
//   W > 0  work injected into S+E by switching the coupling on and off,
// so the system energy balance reads ΔE_S = W - Q.
namespace collisim::thermo {

/// Tr[h_anc (ρ'_E - ρ_E)] for a two-factor S⊗E joint state.
double heat_to_ancilla(const ComplexMatrix& joint_before, const ComplexMatrix& joint_after,
                       const linalg::HilbertFactorization& f, const ComplexMatrix& h_anc);

/// Tr[(h_S⊗1 + 1⊗h_anc)(ρ'_SE - ρ_SE)]. The coupling is constant during a
/// collision and jumps at its boundaries, so the work done by switching it
/// equals the change of the bare energy of S+E across the collision.
double switching_work(const ComplexMatrix& joint_before, const ComplexMatrix& joint_after,
                      const linalg::HilbertFactorization& f, const ComplexMatrix& h_S,
                      const ComplexMatrix& h_anc);

/// Σ = ΔS_S + ΔS_res + β·Q_bath + I_in.
///
/// `dS_resource` is the entropy change of a non-thermal (resource) unit and is
/// zero for bath collisions; a thermal bath unit enters through β·Q_bath
/// instead, with Q_bath the heat it absorbs (in energy units; converted to the
/// entropy base here). `initial_correlation` is the S:E mutual information the
/// unit carried into the collision, zero for fresh units.
double entropy_production(double dS_S, double dS_resource, double Q_bath, double beta_bath,
                          LogBase base, double initial_correlation = 0.0);

struct DetailedBalance {
  double local = 0.0;     // ‖[H_S + H_E, V]‖
  double inverted = 0.0;  // ‖[H_S - H_E, V]‖
  std::optional<double> global;  // ‖[H_I, V]‖ when an internal coupling is given
};

DetailedBalance detailed_balance_report(const ComplexMatrix& h_S, const ComplexMatrix& h_anc,
                                        const ComplexMatrix& v,
                                        const std::optional<ComplexMatrix>& h_internal = {});

struct CollisionAccount {
  double E_S_before = 0, E_S_after = 0;
  double E_anc_before = 0, E_anc_after = 0;
  double Q = 0, W = 0;
  double S_S_before = 0, S_S_after = 0;
  double S_anc_before = 0, S_anc_after = 0;
  double I_before = 0, I_after = 0;
  std::optional<double> D_relent;  // S(ρ'_E ‖ ρ_E^th) for thermal units
  double Sigma = 0;
};

/// Everything a collision record needs, from the S⊗E state just before and
/// just after the collision unitary. `thermal_reference` enables the relative
/// entropy term; `bath_beta` marks the unit as a thermal bath unit.
CollisionAccount account_collision(const ComplexMatrix& joint_before,
                                   const ComplexMatrix& joint_after, std::size_t dim_s,
                                   std::size_t dim_e, const ComplexMatrix& h_S,
                                   const ComplexMatrix& h_anc,
                                   const DensityMatrix* thermal_reference,
                                   std::optional<double> bath_beta, LogBase base);

/// Tr[ρH] minus the energy of the passive state with ρ's spectrum; > 0 iff
/// a unitary can extract work from ρ.
double ergotropy(const DensityMatrix& rho, const ComplexMatrix& h);

}  // namespace collisim::thermo
