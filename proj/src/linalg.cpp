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

#include "collisim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "collisim/errors.hpp"

namespace collisim::linalg {

namespace {

// Splits every basis index of a factorized space into (local, rest) parts,
// where `local` enumerates the target factors in the caller's order and `rest`
// enumerates the remaining factors in ascending order.
class IndexSplit {
 public:
  IndexSplit(const HilbertFactorization& f, std::span<const std::size_t> targets) {
    const std::size_t n = f.size();
    std::vector<bool> is_target(n, false);
    for (auto t : targets) {
      if (t >= n) {
        std::ostringstream os;
        os << "subsystem index " << t << " out of range for " << n << " factors";
        throw ConfigError(os.str());
      }
      if (is_target[t]) throw ConfigError("duplicate subsystem index");
      is_target[t] = true;
    }
    local_dim_ = 1;
    for (auto t : targets) local_dim_ *= f.dims[t];
    const std::size_t total = f.total();
    rest_dim_ = total / local_dim_;

    std::vector<std::size_t> stride(n, 1);
    for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * f.dims[i];

    std::vector<std::size_t> local_stride(targets.size(), 1);
    for (std::size_t k = targets.size(); k-- > 1;)
      local_stride[k - 1] = local_stride[k] * f.dims[targets[k]];
    std::vector<std::size_t> rest_stride(n, 0);
    std::size_t acc = 1;
    for (std::size_t i = n; i-- > 0;) {
      if (!is_target[i]) {
        rest_stride[i] = acc;
        acc *= f.dims[i];
      }
    }

    compose_.assign(total, 0);
    for (std::size_t r = 0; r < total; ++r) {
      std::size_t local = 0;
      std::size_t rest = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t digit = (r / stride[i]) % f.dims[i];
        if (!is_target[i]) rest += digit * rest_stride[i];
      }
      for (std::size_t k = 0; k < targets.size(); ++k)
        local += ((r / stride[targets[k]]) % f.dims[targets[k]]) * local_stride[k];
      compose_[rest * local_dim_ + local] = r;
    }
  }

  std::size_t local_dim() const { return local_dim_; }
  std::size_t rest_dim() const { return rest_dim_; }
  std::size_t compose(std::size_t rest, std::size_t local) const {
    return compose_[rest * local_dim_ + local];
  }

 private:
  std::size_t local_dim_ = 1;
  std::size_t rest_dim_ = 1;
  std::vector<std::size_t> compose_;
};

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw ConfigError(os.str());
  }
}

void require_factorizes(const ComplexMatrix& m, const HilbertFactorization& f,
                        const char* what) {
  require_square(m, what);
  f.check();
  if (static_cast<std::size_t>(m.rows()) != f.total()) {
    std::ostringstream os;
    os << what << ": matrix dimension " << m.rows()
       << " does not match factorization product " << f.total();
    throw ConfigError(os.str());
  }
}

}  // namespace

std::size_t HilbertFactorization::total() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

void HilbertFactorization::check() const {
  if (dims.empty()) throw ConfigError("empty Hilbert factorization");
  for (auto d : dims)
    if (d < 2) throw ConfigError("subsystem dimensions must be at least 2");
}

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                 static_cast<Eigen::Index>(dim));
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix swap_operator(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return identity(1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return hermiticity_defect(m) <= tol;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertFactorization& f,
                            std::span<const std::size_t> keep) {
  require_factorizes(m, f, "partial_trace");
  if (keep.empty()) throw ConfigError("partial_trace: keep set is empty");
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  const IndexSplit split(f, sorted);
  const auto dk = static_cast<Eigen::Index>(split.local_dim());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (std::size_t t = 0; t < split.rest_dim(); ++t)
    for (Eigen::Index a = 0; a < dk; ++a) {
      const auto row = static_cast<Eigen::Index>(split.compose(t, a));
      for (Eigen::Index b = 0; b < dk; ++b)
        out(a, b) += m(row, static_cast<Eigen::Index>(split.compose(t, b)));
    }
  return out;
}

EigenDecomposition herm_eig(const ComplexMatrix& h) {
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTol)) {
    std::ostringstream os;
    os << "herm_eig: matrix is not Hermitian (max |h - h^dagger| = " << defect << ")";
    throw PreconditionError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(hermitize(h)), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericalIntegrityError("herm_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector herm_eigenvalues(const ComplexMatrix& h) {
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTol)) {
    std::ostringstream os;
    os << "herm_eigenvalues: matrix is not Hermitian (defect " << defect << ")";
    throw PreconditionError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(hermitize(h)), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalIntegrityError("herm_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t) {
  if (!std::isfinite(t)) throw PreconditionError("unitary_from_hamiltonian: t not finite");
  const auto eig = herm_eig(h);
  Eigen::VectorXcd phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -eig.values(k) * t));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator_norm");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ConfigError("commutator_norm: dimension mismatch");
  return max_abs(a * b - b * a);
}

ComplexMatrix embed(const ComplexMatrix& op, const HilbertFactorization& f,
                    std::span<const std::size_t> targets) {
  f.check();
  const IndexSplit split(f, targets);
  if (static_cast<std::size_t>(op.rows()) != split.local_dim() ||
      op.rows() != op.cols())
    throw ConfigError("embed: operator dimension does not match target factors");
  const auto total = static_cast<Eigen::Index>(f.total());
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (std::size_t e = 0; e < split.rest_dim(); ++e)
    for (std::size_t a = 0; a < split.local_dim(); ++a)
      for (std::size_t b = 0; b < split.local_dim(); ++b)
        out(static_cast<Eigen::Index>(split.compose(e, a)),
            static_cast<Eigen::Index>(split.compose(e, b))) =
            op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  return out;
}

ComplexMatrix conjugate_local(const ComplexMatrix& rho,
                              const HilbertFactorization& f,
                              std::span<const std::size_t> targets,
                              const ComplexMatrix& u) {
  require_factorizes(rho, f, "conjugate_local");
  const IndexSplit split(f, targets);
  const auto dl = static_cast<Eigen::Index>(split.local_dim());
  if (u.rows() != dl || u.cols() != dl)
    throw ConfigError("conjugate_local: operator dimension does not match targets");
  const Eigen::Index total = rho.rows();

  // left: tmp = U rho
  ComplexMatrix tmp(total, total);
  Eigen::VectorXcd gathered(dl);
  for (std::size_t e = 0; e < split.rest_dim(); ++e) {
    for (Eigen::Index c = 0; c < total; ++c) {
      for (Eigen::Index l = 0; l < dl; ++l)
        gathered(l) = rho(static_cast<Eigen::Index>(split.compose(e, l)), c);
      for (Eigen::Index lp = 0; lp < dl; ++lp) {
        Complex acc = 0.0;
        for (Eigen::Index l = 0; l < dl; ++l) acc += u(lp, l) * gathered(l);
        tmp(static_cast<Eigen::Index>(split.compose(e, lp)), c) = acc;
      }
    }
  }
  // right: out = tmp U†
  ComplexMatrix out(total, total);
  const ComplexMatrix uc = u.conjugate();
  for (std::size_t e = 0; e < split.rest_dim(); ++e) {
    for (Eigen::Index r = 0; r < total; ++r) {
      for (Eigen::Index l = 0; l < dl; ++l)
        gathered(l) = tmp(r, static_cast<Eigen::Index>(split.compose(e, l)));
      for (Eigen::Index lp = 0; lp < dl; ++lp) {
        Complex acc = 0.0;
        for (Eigen::Index l = 0; l < dl; ++l) acc += gathered(l) * uc(lp, l);
        out(r, static_cast<Eigen::Index>(split.compose(e, lp))) = acc;
      }
    }
  }
  return out;
}

}  // namespace collisim::linalg
