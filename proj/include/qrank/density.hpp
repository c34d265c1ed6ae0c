#ifndef QRANK_DENSITY_HPP
#define QRANK_DENSITY_HPP

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qrank/errors.hpp"
#include "qrank/types.hpp"

namespace qrank {

/// max_ij |m_ij - conj(m_ji)|
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
typename Derived::RealScalar trace_defect(const Eigen::MatrixBase<Derived>& m) {
  return std::abs(m.trace() - typename Derived::Scalar(1));
}

/// Smallest eigenvalue of the Hermitian part of m.
template <typename Derived>
typename Derived::RealScalar min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  const Plain hermitian = (m + m.adjoint()) / typename Derived::RealScalar(2);
  Eigen::SelfAdjointEigenSolver<Plain> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// Walker state: Hermitian, unit trace, populations on the diagonal.
/// Positivity is checked by tests, not on construction.
template <typename Scalar = double>
class DensityMatrix {
 public:
  using MatrixType = ComplexMatrix<Scalar>;

  static constexpr double kHermiticityTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-10;

  DensityMatrix() = default;

  explicit DensityMatrix(MatrixType rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) throw PreconditionError("density matrix must be square");
    if (rho_.size() == 0) throw PreconditionError("density matrix must be non-empty");
    if (hermiticity_defect(rho_) > kHermiticityTolerance) throw PreconditionError("density matrix is not Hermitian");
    if (trace_defect(rho_) > kTraceTolerance) throw PreconditionError("density matrix trace differs from 1");
    for (Index i = 0; i < rho_.rows(); ++i) {
      const double p = static_cast<double>(rho_(i, i).real());
      if (p < -kTraceTolerance || p > 1.0 + kTraceTolerance)
        throw PreconditionError("population " + std::to_string(i) + " outside [0,1]");
    }
  }

  /// I / n, the uniform initial state.
  static DensityMatrix maximally_mixed(Index n) {
    if (n <= 0) throw PreconditionError("dimension must be positive");
    return DensityMatrix(MatrixType::Identity(n, n) / Scalar(n));
  }

  Index size() const noexcept { return rho_.rows(); }
  const MatrixType& matrix() const noexcept { return rho_; }
  Complex<Scalar> operator()(Index i, Index j) const { return rho_(i, j); }

  Vector<Scalar> populations() const { return rho_.diagonal().real(); }

 private:
  MatrixType rho_;
};

}  // namespace qrank

#endif  // QRANK_DENSITY_HPP
