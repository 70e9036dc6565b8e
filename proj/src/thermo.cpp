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

#include "collisim/thermo.hpp"

#include <array>

#include "collisim/errors.hpp"

namespace collisim::thermo {

namespace {

constexpr std::array<std::size_t, 1> kSystem{0};
constexpr std::array<std::size_t, 1> kAncilla{1};

void require_pair(const ComplexMatrix& before, const ComplexMatrix& after,
                  const linalg::HilbertFactorization& f) {
  if (f.size() != 2) throw ConfigError("expected a system⊗ancilla factorization");
  const auto d = static_cast<Eigen::Index>(f.total());
  if (before.rows() != d || after.rows() != d || before.cols() != d || after.cols() != d)
    throw ConfigError("joint state dimension does not match factorization");
}

double energy(const ComplexMatrix& h, const ComplexMatrix& rho) {
  if (h.rows() != rho.rows()) throw ConfigError("Hamiltonian/state dimension mismatch");
  return (h * rho).trace().real();
}

}  // namespace

double heat_to_ancilla(const ComplexMatrix& joint_before, const ComplexMatrix& joint_after,
                       const linalg::HilbertFactorization& f, const ComplexMatrix& h_anc) {
  require_pair(joint_before, joint_after, f);
  const ComplexMatrix diff = joint_after - joint_before;
  return energy(h_anc, linalg::partial_trace(diff, f, kAncilla));
}

double switching_work(const ComplexMatrix& joint_before, const ComplexMatrix& joint_after,
                      const linalg::HilbertFactorization& f, const ComplexMatrix& h_S,
                      const ComplexMatrix& h_anc) {
  require_pair(joint_before, joint_after, f);
  const ComplexMatrix bare = linalg::kron(h_S, linalg::identity(f.dims[1])) +
                             linalg::kron(linalg::identity(f.dims[0]), h_anc);
  return energy(bare, joint_after - joint_before);
}

double entropy_production(double dS_S, double dS_resource, double Q_bath, double beta_bath,
                          LogBase base, double initial_correlation) {
  return dS_S + dS_resource + beta_bath * Q_bath * from_nats(base) + initial_correlation;
}

DetailedBalance detailed_balance_report(const ComplexMatrix& h_S, const ComplexMatrix& h_anc,
                                        const ComplexMatrix& v,
                                        const std::optional<ComplexMatrix>& h_internal) {
  const auto ds = static_cast<std::size_t>(h_S.rows());
  const auto de = static_cast<std::size_t>(h_anc.rows());
  const ComplexMatrix hs = linalg::kron(h_S, linalg::identity(de));
  const ComplexMatrix he = linalg::kron(linalg::identity(ds), h_anc);
  DetailedBalance out;
  out.local = linalg::commutator_norm(hs + he, v);
  out.inverted = linalg::commutator_norm(hs - he, v);
  if (h_internal) {
    if (h_internal->rows() != h_S.rows())
      throw ConfigError("internal coupling must act on the system space");
    out.global = linalg::commutator_norm(linalg::kron(*h_internal, linalg::identity(de)), v);
  }
  return out;
}

CollisionAccount account_collision(const ComplexMatrix& joint_before,
                                   const ComplexMatrix& joint_after, std::size_t dim_s,
                                   std::size_t dim_e, const ComplexMatrix& h_S,
                                   const ComplexMatrix& h_anc,
                                   const DensityMatrix* thermal_reference,
                                   std::optional<double> bath_beta, LogBase base) {
  const linalg::HilbertFactorization f{{dim_s, dim_e}};
  require_pair(joint_before, joint_after, f);
  const ComplexMatrix s_before = linalg::partial_trace(joint_before, f, kSystem);
  const ComplexMatrix s_after = linalg::partial_trace(joint_after, f, kSystem);
  const ComplexMatrix e_before = linalg::partial_trace(joint_before, f, kAncilla);
  const ComplexMatrix e_after = linalg::partial_trace(joint_after, f, kAncilla);

  CollisionAccount a;
  a.E_S_before = energy(h_S, s_before);
  a.E_S_after = energy(h_S, s_after);
  a.E_anc_before = energy(h_anc, e_before);
  a.E_anc_after = energy(h_anc, e_after);
  a.Q = heat_to_ancilla(joint_before, joint_after, f, h_anc);
  a.W = switching_work(joint_before, joint_after, f, h_S, h_anc);

  a.S_S_before = qstate::von_neumann_entropy(s_before, base);
  a.S_S_after = qstate::von_neumann_entropy(s_after, base);
  a.S_anc_before = qstate::von_neumann_entropy(e_before, base);
  a.S_anc_after = qstate::von_neumann_entropy(e_after, base);
  const double joint_s = qstate::von_neumann_entropy(joint_before, base);
  const double joint_s_after = qstate::von_neumann_entropy(joint_after, base);
  a.I_before = a.S_S_before + a.S_anc_before - joint_s;
  a.I_after = a.S_S_after + a.S_anc_after - joint_s_after;

  if (thermal_reference) {
    const auto rel = qstate::relative_entropy(DensityMatrix::trusted(e_after),
                                              *thermal_reference, base);
    a.D_relent = rel.value;
  }
  const double dS_S = a.S_S_after - a.S_S_before;
  if (bath_beta) {
    a.Sigma = entropy_production(dS_S, 0.0, a.Q, *bath_beta, base, a.I_before);
  } else {
    a.Sigma = entropy_production(dS_S, a.S_anc_after - a.S_anc_before, 0.0, 0.0, base,
                                 a.I_before);
  }
  return a;
}

double ergotropy(const DensityMatrix& rho, const ComplexMatrix& h) {
  if (h.rows() != static_cast<Eigen::Index>(rho.dim()))
    throw ConfigError("ergotropy: Hamiltonian/state dimension mismatch");
  RealVector p = linalg::herm_eigenvalues(rho.matrix());
  const RealVector e = linalg::herm_eigenvalues(h);
  // Both ascending; the passive state puts the largest weight on the lowest level.
  double passive = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) passive += p(p.size() - 1 - i) * e(i);
  return energy(h, rho.matrix()) - passive;
}

}  // namespace collisim::thermo
