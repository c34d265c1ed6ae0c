#ifndef QRANK_STOCHASTIC_HPP
#define QRANK_STOCHASTIC_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qrank/errors.hpp"
#include "qrank/graph.hpp"
#include "qrank/types.hpp"

namespace qrank {

/// Column-stochastic matrix: entry (i, j) is the probability of a hop j -> i,
/// so a distribution p evolves as p <- M p.
template <typename Scalar = double>
class StochasticMatrix {
 public:
  using MatrixType = Matrix<Scalar>;

  static constexpr double kColumnTolerance = 1e-12;

  StochasticMatrix() = default;

  explicit StochasticMatrix(MatrixType entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw PreconditionError("stochastic matrix must be square");
    for (Index j = 0; j < entries_.cols(); ++j) {
      for (Index i = 0; i < entries_.rows(); ++i) {
        const Scalar v = entries_(i, j);
        if (!(v >= Scalar(0) && v <= Scalar(1)))
          throw PreconditionError("stochastic entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") outside [0,1]");
      }
      const Scalar sum = entries_.col(j).sum();
      const double tolerance =
          std::max(kColumnTolerance, 64.0 * static_cast<double>(std::numeric_limits<Scalar>::epsilon()));
      if (std::abs(static_cast<double>(sum) - 1.0) > tolerance)
        throw PreconditionError("column " + std::to_string(j) + " does not sum to 1");
    }
  }

  Index size() const noexcept { return entries_.rows(); }
  const MatrixType& matrix() const noexcept { return entries_; }
  Scalar operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  MatrixType entries_;
};

/// Random-walk matrix of g. Dangling columns (out-degree 0) become uniform
/// over the other n - 1 nodes.
template <typename Scalar = double>
StochasticMatrix<Scalar> transition_matrix(const DirectedGraph& g) {
  const Index n = g.size();
  if (n == 0) throw PreconditionError("transition matrix of an empty graph");
  Matrix<Scalar> pi = Matrix<Scalar>::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const auto& out = g.out_neighbors(j);
    if (out.empty()) {
      if (n == 1) {
        pi(0, 0) = Scalar(1);
        continue;
      }
      pi.col(j).setConstant(Scalar(1) / Scalar(n - 1));
      pi(j, j) = Scalar(0);
    } else {
      const Scalar w = Scalar(1) / Scalar(out.size());
      for (Index i : out) pi(i, j) = w;
    }
  }
  return StochasticMatrix<Scalar>(std::move(pi));
}

/// Uniform long-hop matrix F: 1/(n-1) off the diagonal, zero on it.
template <typename Scalar = double>
Matrix<Scalar> long_hop_matrix(Index n) {
  if (n < 2) throw PreconditionError("long-hop matrix needs n >= 2");
  Matrix<Scalar> f = Matrix<Scalar>::Constant(n, n, Scalar(1) / Scalar(n - 1));
  f.diagonal().setZero();
  return f;
}

/// G = q Pi + (1 - q) F.
template <typename Scalar>
StochasticMatrix<Scalar> google_matrix(const StochasticMatrix<Scalar>& pi, Scalar q = Scalar(0.9)) {
  if (!(q >= Scalar(0) && q <= Scalar(1))) throw PreconditionError("damping q must lie in [0, 1]");
  if (q == Scalar(1)) return pi;
  Matrix<Scalar> g = q * pi.matrix() + (Scalar(1) - q) * long_hop_matrix<Scalar>(pi.size());
  return StochasticMatrix<Scalar>(std::move(g));
}

/// (I + M) / 2: same stationary vector, aperiodic.
template <typename Scalar>
StochasticMatrix<Scalar> lazy(const StochasticMatrix<Scalar>& m) {
  Matrix<Scalar> l = Scalar(0.5) * m.matrix();
  l.diagonal().array() += Scalar(0.5);
  return StochasticMatrix<Scalar>(std::move(l));
}

}  // namespace qrank

#endif  // QRANK_STOCHASTIC_HPP
