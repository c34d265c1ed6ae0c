#ifndef QRANK_LINDBLAD_HPP
#define QRANK_LINDBLAD_HPP

#include <string>
#include <vector>

#include "qrank/density.hpp"
#include "qrank/errors.hpp"
#include "qrank/graph.hpp"
#include "qrank/stochastic.hpp"
#include "qrank/types.hpp"

namespace qrank {

/// Real symmetric 0/1 coupling matrix with zero diagonal, stored sparse.
template <typename Scalar = double>
class Hamiltonian {
 public:
  using SparseType = SparseMatrix<Scalar>;

  Hamiltonian() = default;

  explicit Hamiltonian(SparseType h) : h_(std::move(h)) {
    h_.makeCompressed();
    if (h_.rows() != h_.cols()) throw PreconditionError("Hamiltonian must be square");
    for (Index j = 0; j < h_.outerSize(); ++j) {
      for (typename SparseType::InnerIterator it(h_, j); it; ++it) {
        if (it.row() == it.col()) throw PreconditionError("Hamiltonian diagonal must be zero");
        if (it.value() != Scalar(1)) throw PreconditionError("Hamiltonian entries must be 0 or 1");
        if (h_.coeff(it.col(), it.row()) != it.value()) throw PreconditionError("Hamiltonian must be symmetric");
      }
    }
    complex_ = h_.template cast<Complex<Scalar>>();
  }

  Index size() const noexcept { return h_.rows(); }
  const SparseType& sparse() const noexcept { return h_; }
  const SparseMatrix<Complex<Scalar>>& sparse_complex() const noexcept { return complex_; }
  Matrix<Scalar> dense() const { return Matrix<Scalar>(h_); }

  /// out = rho * H, one column at a time: column j of the product is the sum
  /// of the columns of rho indexed by the neighbours of j.
  template <typename In, typename Out>
  void right_multiply(const Eigen::MatrixBase<In>& rho, Eigen::MatrixBase<Out>& out) const {
    for (Index j = 0; j < h_.outerSize(); ++j) {
      auto col = out.col(j);
      col.setZero();
      for (typename SparseType::InnerIterator it(h_, j); it; ++it) col += it.value() * rho.col(it.row());
    }
  }

 private:
  SparseType h_;
  SparseMatrix<Complex<Scalar>> complex_;
};

/// H_ij = 1 when i -> j or j -> i is an edge.
template <typename Scalar = double>
Hamiltonian<Scalar> hamiltonian_from_graph(const DirectedGraph& g) {
  if (g.empty()) throw PreconditionError("Hamiltonian of an empty graph");
  std::vector<Eigen::Triplet<Scalar, Index>> triplets;
  for (Index i = 0; i < g.size(); ++i)
    for (Index j : g.adjacent(i)) triplets.emplace_back(i, j, Scalar(1));
  SparseMatrix<Scalar> h(g.size(), g.size());
  h.setFromTriplets(triplets.begin(), triplets.end());
  return Hamiltonian<Scalar>(std::move(h));
}

/// drho/dt = -i(1 - alpha)[H, rho]
///           + alpha sum_(i,j) G_ij (L rho L^+ - {L^+ L, rho}/2),  L = |i><j|.
template <typename Scalar = double>
class LindbladGenerator {
 public:
  LindbladGenerator(Hamiltonian<Scalar> h, StochasticMatrix<Scalar> rates, Scalar alpha)
      : h_(std::move(h)), rates_(std::move(rates)), alpha_(alpha) {
    if (h_.size() != rates_.size()) throw PreconditionError("Hamiltonian and rate matrix sizes differ");
    if (!(alpha_ >= Scalar(0) && alpha_ <= Scalar(1))) throw PreconditionError("alpha must lie in [0, 1]");
  }

  Index size() const noexcept { return h_.size(); }
  const Hamiltonian<Scalar>& hamiltonian() const noexcept { return h_; }
  const StochasticMatrix<Scalar>& rates() const noexcept { return rates_; }
  Scalar alpha() const noexcept { return alpha_; }

 private:
  Hamiltonian<Scalar> h_;
  StochasticMatrix<Scalar> rates_;
  Scalar alpha_;
};

/// Generator for graph g with rates given by its Google matrix.
template <typename Scalar = double>
LindbladGenerator<Scalar> make_generator(const DirectedGraph& g, Scalar alpha, Scalar q = Scalar(0.9)) {
  return LindbladGenerator<Scalar>(hamiltonian_from_graph<Scalar>(g), google_matrix(transition_matrix<Scalar>(g), q),
                                   alpha);
}

namespace detail {

template <typename Scalar>
void check_dimensions(const LindbladGenerator<Scalar>& gen, Index rows, Index cols) {
  if (rows != gen.size() || cols != gen.size())
    throw PreconditionError("state is " + std::to_string(rows) + "x" + std::to_string(cols) + ", generator is " +
                            std::to_string(gen.size()));
}

}  // namespace detail

/// Action of the generator on an arbitrary (not necessarily Hermitian) matrix.
///
/// Because L^+ L = |j><j| and every column of G sums to one, the dissipator
/// reduces to alpha (diag(G d) - rho) with d = diag(rho).
template <typename Scalar, typename Derived>
ComplexMatrix<Scalar> lindblad_apply(const LindbladGenerator<Scalar>& gen, const Eigen::MatrixBase<Derived>& rho) {
  detail::check_dimensions(gen, rho.rows(), rho.cols());
  using C = Complex<Scalar>;
  const Scalar alpha = gen.alpha();
  const auto& h = gen.hamiltonian().sparse_complex();
  const ComplexMatrix<Scalar> r = rho;

  ComplexMatrix<Scalar> out = C(0, -(Scalar(1) - alpha)) * (h * r - r * h);
  const ComplexVector<Scalar> d = r.diagonal();
  const Matrix<Scalar>& g = gen.rates().matrix();
  const ComplexVector<Scalar> gain = (g * d.real()).template cast<C>() + C(0, 1) * (g * d.imag()).template cast<C>();
  out -= alpha * r;
  out.diagonal() += alpha * gain;
  return out;
}

template <typename Scalar>
ComplexMatrix<Scalar> lindblad_apply(const LindbladGenerator<Scalar>& gen, const DensityMatrix<Scalar>& rho) {
  return lindblad_apply(gen, rho.matrix());
}

/// Fast path for Hermitian rho used by the integrators. Uses H rho = (rho H)^+
/// so only one sparse product is formed; the result is Hermitian by
/// construction. `scratch` receives rho H.
template <typename Scalar>
void lindblad_apply_hermitian(const LindbladGenerator<Scalar>& gen, const ComplexMatrix<Scalar>& rho,
                              ComplexMatrix<Scalar>& out, ComplexMatrix<Scalar>& scratch) {
  using C = Complex<Scalar>;
  const Scalar alpha = gen.alpha();
  const Index n = gen.size();
  out.resize(n, n);
  if (alpha < Scalar(1)) {
    scratch.resize(n, n);
    gen.hamiltonian().right_multiply(rho, scratch);
    out.noalias() = scratch.adjoint();
    out -= scratch;
    out *= C(0, -(Scalar(1) - alpha));
    out -= alpha * rho;
  } else {
    out.noalias() = -alpha * rho;
  }
  const Vector<Scalar> gain = gen.rates().matrix() * rho.diagonal().real();
  out.diagonal().real() += alpha * gain;
}

/// Generator as an n^2 x n^2 matrix on column-major vec(rho).
template <typename Scalar = double>
struct DenseLiouvillian {
  Index n = 0;
  ComplexMatrix<Scalar> matrix;
};

inline constexpr Index kDefaultDenseCap = 64;

template <typename Scalar>
DenseLiouvillian<Scalar> dense_liouvillian(const LindbladGenerator<Scalar>& gen, Index cap = kDefaultDenseCap) {
  const Index n = gen.size();
  if (n > cap)
    throw PreconditionError("dense Liouvillian for n = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(cap) + " (memory grows as n^4)");
  DenseLiouvillian<Scalar> dl{n, ComplexMatrix<Scalar>::Zero(n * n, n * n)};
  ComplexMatrix<Scalar> basis = ComplexMatrix<Scalar>::Zero(n, n);
  for (Index l = 0; l < n; ++l) {
    for (Index k = 0; k < n; ++k) {
      basis(k, l) = Scalar(1);
      const ComplexMatrix<Scalar> image = lindblad_apply(gen, basis);
      dl.matrix.col(k + l * n) = image.reshaped();
      basis(k, l) = Scalar(0);
    }
  }
  return dl;
}

}  // namespace qrank

#endif  // QRANK_LINDBLAD_HPP
