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

#include "collisim/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "collisim/errors.hpp"

namespace collisim {

double from_nats(LogBase base) {
  return base == LogBase::bits ? 1.0 / std::numbers::ln2 : 1.0;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  qstate::validate_state(m);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
#ifdef COLLISIM_DEBUG_STATES
  qstate::validate_state(m);
#endif
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw PreconditionError("pure state vector has zero norm");
  const Eigen::VectorXcd v = psi / norm;
  return from_matrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw PreconditionError("basis index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(linalg::identity(dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::bloch(double x, double y, double z) {
  ComplexMatrix m = 0.5 * (linalg::identity(2) + x * linalg::pauli_x() +
                           y * linalg::pauli_y() + z * linalg::pauli_z());
  return from_matrix(std::move(m));
}

namespace qstate {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw ConfigError(os.str());
  }
}

double entropy_nats(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const double lambda = eigenvalues(k);
    if (lambda < -kEigenClamp) {
      std::ostringstream os;
      os << "negative eigenvalue " << lambda << " below clamp window";
      throw NumericalIntegrityError(os.str());
    }
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

}  // namespace

void validate_state(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw PreconditionError("density matrix must be square and non-empty");
  if (!m.allFinite()) throw PreconditionError("density matrix has non-finite entries");
  const double defect = linalg::hermiticity_defect(m);
  if (defect > tol) {
    std::ostringstream os;
    os << "density matrix not Hermitian (defect " << defect << ")";
    throw PreconditionError(os.str());
  }
  const double trace_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_err > tol) {
    std::ostringstream os;
    os << "density matrix trace differs from 1 by " << trace_err;
    throw PreconditionError(os.str());
  }
  const double min_eig = linalg::herm_eigenvalues(m).minCoeff();
  if (min_eig < -tol) {
    std::ostringstream os;
    os << "density matrix not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw PreconditionError(os.str());
  }
}

DensityMatrix thermal_state(const ComplexMatrix& h, double beta) {
  if (!std::isfinite(beta) || beta < 0.0)
    throw PreconditionError("thermal_state: beta must be finite and >= 0");
  const auto eig = linalg::herm_eig(h);
  const double ground = eig.values.minCoeff();
  RealVector weights(eig.values.size());
  for (Eigen::Index k = 0; k < weights.size(); ++k)
    weights(k) = std::exp(-beta * (eig.values(k) - ground));
  weights /= weights.sum();
  ComplexMatrix rho = eig.vectors * weights.cast<Complex>().asDiagonal() *
                      eig.vectors.adjoint();
  return DensityMatrix::trusted(linalg::hermitize(rho));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  const RealVector ev =
      linalg::herm_eigenvalues(linalg::hermitize(rho.matrix() - sigma.matrix()));
  return 0.5 * ev.cwiseAbs().sum();
}

RelativeEntropy relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 LogBase base) {
  require_same_dim(rho, sigma, "relative_entropy");
  const double neg_entropy = -entropy_nats(linalg::herm_eigenvalues(rho.matrix()));
  const auto eig = linalg::herm_eig(sigma.matrix());
  const ComplexMatrix rotated = eig.vectors.adjoint() * rho.matrix() * eig.vectors;
  double cross = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double weight = rotated(k, k).real();
    const double mu = eig.values(k);
    if (mu < kSupportCutoff) {
      if (weight > kSupportCutoff)
        return {std::numeric_limits<double>::infinity(), true};
      continue;
    }
    cross += weight * std::log(mu);
  }
  return {(neg_entropy - cross) * from_nats(base), false};
}

double js_distance(const DensityMatrix& rho, const DensityMatrix& sigma, LogBase base) {
  require_same_dim(rho, sigma, "js_distance");
  // S(ρ‖m) + S(σ‖m) = 2 S(m) - S(ρ) - S(σ): m dominates both supports, so the
  // spectral form is exact and needs no eigenvectors.
  const ComplexMatrix mid = 0.5 * (rho.matrix() + sigma.matrix());
  const double s_mid = entropy_nats(linalg::herm_eigenvalues(mid));
  const double s_rho = entropy_nats(linalg::herm_eigenvalues(rho.matrix()));
  const double s_sigma = entropy_nats(linalg::herm_eigenvalues(sigma.matrix()));
  const double divergence = (s_mid - 0.5 * (s_rho + s_sigma)) * from_nats(base);
  return std::sqrt(std::max(0.0, divergence));
}

double entropy_of_spectrum(const RealVector& eigenvalues, LogBase base) {
  return entropy_nats(eigenvalues) * from_nats(base);
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
  return von_neumann_entropy(rho.matrix(), base);
}

double von_neumann_entropy(const ComplexMatrix& rho, LogBase base) {
  return entropy_of_spectrum(linalg::herm_eigenvalues(rho), base);
}

double mutual_information(const DensityMatrix& rho_ab,
                          const linalg::HilbertFactorization& f,
                          std::span<const std::size_t> part_a, LogBase base) {
  if (part_a.empty() || part_a.size() >= f.size())
    throw ConfigError("mutual_information: bipartition must leave both sides non-empty");
  std::vector<std::size_t> part_b;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::find(part_a.begin(), part_a.end(), i) == part_a.end()) part_b.push_back(i);
  if (part_b.size() + part_a.size() != f.size())
    throw ConfigError("mutual_information: invalid bipartition");
  const ComplexMatrix rho_a = linalg::partial_trace(rho_ab.matrix(), f, part_a);
  const ComplexMatrix rho_b = linalg::partial_trace(rho_ab.matrix(), f, part_b);
  return von_neumann_entropy(rho_a, base) + von_neumann_entropy(rho_b, base) -
         von_neumann_entropy(rho_ab.matrix(), base);
}

DensityMatrix reduce(const DensityMatrix& rho, const linalg::HilbertFactorization& f,
                     std::span<const std::size_t> keep) {
  return DensityMatrix::trusted(linalg::partial_trace(rho.matrix(), f, keep));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(linalg::kron(a.matrix(), b.matrix()));
}

}  // namespace qstate
}  // namespace collisim
