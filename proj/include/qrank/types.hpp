#ifndef QRANK_TYPES_HPP
#define QRANK_TYPES_HPP

#include <complex>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace qrank {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using ComplexMatrix = Matrix<Complex<Scalar>>;

template <typename Scalar>
using ComplexVector = Vector<Complex<Scalar>>;

template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor, Index>;

}  // namespace qrank

#endif  // QRANK_TYPES_HPP
