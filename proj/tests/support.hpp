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

#include <cstdint>
#include <random>

#include <Eigen/QR>

#include "collisim/linalg.hpp"
#include "collisim/qstate.hpp"

namespace collisim::testing {

inline ComplexMatrix random_complex(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

// Haar-distributed via QR of a Ginibre matrix with the phase fix.
inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = random_complex(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_complex(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

// Full-rank mixed state G G† / Tr.
inline DensityMatrix random_state(std::size_t dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_complex(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(linalg::hermitize(rho));
}

inline DensityMatrix random_pure(std::size_t dim, std::mt19937_64& rng) {
  Eigen::VectorXcd psi = random_complex(dim, 1, rng);
  return DensityMatrix::pure(psi.normalized());
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return linalg::max_abs(a - b);
}

}  // namespace collisim::testing
