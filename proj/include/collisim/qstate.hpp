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

#include <cstddef>
#include <span>

#include "collisim/linalg.hpp"

namespace collisim {

/// Base used for every entropy-like quantity of a run. Bits keep the
/// Jensen-Shannon distance inside [0, 1].
enum class LogBase { bits, nats };

/// Multiplier turning a natural-log quantity into the given base.
double from_nats(LogBase base);

/// Hermitian, unit-trace, positive-semidefinite operator. Validated once on
/// construction; `trusted` skips the check for states produced inside the
/// engine (unless built with COLLISIM_DEBUG_STATES).
class DensityMatrix {
 public:
  /// Maximally mixed qubit.
  DensityMatrix() : m_(linalg::identity(2) * 0.5) {}

  static DensityMatrix from_matrix(ComplexMatrix m);
  static DensityMatrix trusted(ComplexMatrix m);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix basis(std::size_t dim, std::size_t index);
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// Qubit state with Bloch vector (x, y, z), |r| <= 1, in the σz eigenbasis
  /// ordering |0⟩ = (1, 0).
  static DensityMatrix bloch(double x, double y, double z);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

namespace qstate {

inline constexpr double kStateTol = 1e-10;
/// Eigenvalues in [-kEigenClamp, 0) are treated as rounding and set to zero.
inline constexpr double kEigenClamp = 1e-10;
/// Eigenvalues of the second argument of a relative entropy below this count
/// as outside the support.
inline constexpr double kSupportCutoff = 1e-12;

/// Throws PreconditionError describing the first violated state invariant.
void validate_state(const ComplexMatrix& m, double tol = kStateTol);

DensityMatrix thermal_state(const ComplexMatrix& h, double beta);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct RelativeEntropy {
  double value = 0.0;              // +inf when support_violation is set
  bool support_violation = false;  // supp(rho) ⊄ supp(sigma)
  bool finite() const { return !support_violation; }
};

RelativeEntropy relative_entropy(const DensityMatrix& rho,
                                 const DensityMatrix& sigma,
                                 LogBase base = LogBase::bits);

/// Square root of the quantum Jensen-Shannon divergence,
/// sqrt( (S(ρ‖m) + S(σ‖m)) / 2 ) with m the midpoint.
double js_distance(const DensityMatrix& rho, const DensityMatrix& sigma,
                   LogBase base = LogBase::bits);

/// -Σ λ log λ with the clamp window applied. Throws NumericalIntegrityError
/// for eigenvalues below -kEigenClamp.
double entropy_of_spectrum(const RealVector& eigenvalues,
                           LogBase base = LogBase::bits);
double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::bits);
double von_neumann_entropy(const ComplexMatrix& rho, LogBase base = LogBase::bits);

/// S(A) + S(B) - S(AB), where A is the set of factors in `part_a` and B its
/// complement.
double mutual_information(const DensityMatrix& rho_ab,
                          const linalg::HilbertFactorization& f,
                          std::span<const std::size_t> part_a,
                          LogBase base = LogBase::bits);

DensityMatrix reduce(const DensityMatrix& rho, const linalg::HilbertFactorization& f,
                     std::span<const std::size_t> keep);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qstate
}  // namespace collisim
