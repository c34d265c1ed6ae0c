#ifndef QRANK_TESTS_SUPPORT_HPP
#define QRANK_TESTS_SUPPORT_HPP

#include <complex>
#include <random>
#include <string>

#include "qrank/graph.hpp"
#include "qrank/stochastic.hpp"
#include "qrank/types.hpp"

namespace qrank::test {

using Cplx = std::complex<double>;
using CMat = ComplexMatrix<double>;
using RMat = Matrix<double>;

inline std::string data_path(const std::string& name) { return std::string(QRANK_DATA_DIR) + "/" + name; }

inline CMat random_complex(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMat a(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) a(i, j) = Cplx(normal(rng), normal(rng));
  return a;
}

/// A A^+ / tr(A A^+): positive definite, Hermitian, unit trace.
inline CMat random_density(Index n, std::mt19937_64& rng) {
  const CMat a = random_complex(n, rng);
  CMat rho = a * a.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

/// Hermitian with unit trace but not necessarily positive.
inline CMat random_hermitian_trace_one(Index n, std::mt19937_64& rng) {
  const CMat a = random_complex(n, rng);
  CMat h = (a + a.adjoint()) / 2.0;
  h.diagonal().array() += (1.0 - h.trace().real()) / static_cast<double>(n);
  return h;
}

/// Literal master equation: -i(1-a)[H, rho] + a sum_ij G_ij (L rho L^+ - {L^+ L, rho}/2)
/// with L = |i><j| formed explicitly for every ordered pair.
inline CMat brute_force_generator(const RMat& h, const RMat& g, double alpha, const CMat& rho) {
  const Index n = h.rows();
  const CMat hc = h.cast<Cplx>();
  CMat out = Cplx(0, -(1.0 - alpha)) * (hc * rho - rho * hc);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      CMat l = CMat::Zero(n, n);
      l(i, j) = 1.0;
      const CMat ldl = l.adjoint() * l;
      out += alpha * g(i, j) * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
  }
  return out;
}

/// Small random directed graph: each ordered pair linked with probability p,
/// plus a ring so no node is isolated.
inline DirectedGraph random_digraph(Index n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j && j != (i + 1) % n && coin(rng)) edges.push_back({i, j});
  return DirectedGraph(n, std::move(edges));
}

}  // namespace qrank::test

#endif  // QRANK_TESTS_SUPPORT_HPP
