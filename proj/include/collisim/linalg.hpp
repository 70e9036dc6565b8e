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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace collisim {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;

namespace linalg {

/// Max-entry tolerance for treating a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

/// Ordered subsystem dimensions of a tensor-product space. Factor 0 is the
/// system; ancillas follow in the order they were appended.
struct HilbertFactorization {
  std::vector<std::size_t> dims;

  std::size_t total() const;
  std::size_t size() const { return dims.size(); }
  /// Throws ConfigError if any factor is smaller than 2.
  void check() const;
};

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are eigenvectors
};

ComplexMatrix identity(std::size_t dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// Exchange operator on C^dim ⊗ C^dim.
ComplexMatrix swap_operator(std::size_t dim);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

ComplexMatrix dagger(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
/// (m + m†)/2
ComplexMatrix hermitize(const ComplexMatrix& m);

/// Reduces `m` onto the factors listed in `keep` (any order; the result is
/// laid out in ascending factor order).
ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertFactorization& f,
                            std::span<const std::size_t> keep);

/// Hermitian eigendecomposition. Throws PreconditionError for non-Hermitian
/// input.
EigenDecomposition herm_eig(const ComplexMatrix& h);
/// Eigenvalues only, ascending.
RealVector herm_eigenvalues(const ComplexMatrix& h);

/// exp(-i h t)
ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t);

/// Max-entry modulus of ab - ba.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Lifts an operator acting on the factors `targets` (in the operator's own
/// factor order) to the whole space.
ComplexMatrix embed(const ComplexMatrix& op, const HilbertFactorization& f,
                    std::span<const std::size_t> targets);

/// u·rho·u† where u acts only on `targets`. Cost is O(D² · d_local) instead of
/// the O(D³) of building the embedded operator.
ComplexMatrix conjugate_local(const ComplexMatrix& rho,
                              const HilbertFactorization& f,
                              std::span<const std::size_t> targets,
                              const ComplexMatrix& u);

}  // namespace linalg
}  // namespace collisim
