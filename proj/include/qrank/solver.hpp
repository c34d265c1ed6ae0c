#ifndef QRANK_SOLVER_HPP
#define QRANK_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qrank/density.hpp"
#include "qrank/errors.hpp"
#include "qrank/lindblad.hpp"
#include "qrank/stochastic.hpp"
#include "qrank/types.hpp"

namespace qrank {

struct IntegrationConfig {
  double dt = 0.01;
  /// Convergence radius in the population norm sqrt(sum_i (p_i - p*_i)^2).
  double epsilon = 1e-8;
  double max_time = 1e6;
  /// Steps between convergence checks; also the checkpoint spacing.
  Index check_stride = 10;
  /// The run stops once the extrapolated distance to the fixed point falls
  /// below settle_factor * epsilon.
  double settle_factor = 1e-2;

  void validate() const {
    if (!(dt > 0)) throw PreconditionError("dt must be positive");
    if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
    if (!(max_time > dt)) throw PreconditionError("max_time must exceed dt");
    if (check_stride < 1) throw PreconditionError("check_stride must be >= 1");
    if (!(settle_factor > 0 && settle_factor <= 1)) throw PreconditionError("settle_factor must lie in (0, 1]");
  }
};

/// Populations recorded at every convergence check of a run.
struct ConvergenceTrace {
  std::vector<double> times;
  /// Population-norm distance of each checkpoint from the final state.
  std::vector<double> distances;
};

template <typename Scalar = double>
struct StationaryResult {
  DensityMatrix<Scalar> rho_star;
  double tau = 0.0;
  Index steps = 0;
  bool converged = false;
  double max_trace_drift = 0.0;
  double max_hermiticity_defect = 0.0;
  ConvergenceTrace trace;
};

template <typename Scalar = double>
struct ClassicalResult {
  Vector<Scalar> p_star;
  double tau = 0.0;
  Index steps = 0;
  bool converged = false;
  ConvergenceTrace trace;
};

/// Called at every checkpoint with the current time and state.
template <typename Scalar>
using TrajectoryObserver = std::function<void(double, const ComplexMatrix<Scalar>&)>;

namespace detail {

inline constexpr double kMaxTraceDrift = 1e-6;

template <typename State>
class Rk4 {
 public:
  template <typename Rhs>
  void step(State& x, Rhs&& rhs, double h) {
    using Real = typename Eigen::NumTraits<typename State::Scalar>::Real;
    const Real half = static_cast<Real>(h / 2);
    const Real full = static_cast<Real>(h);
    const Real sixth = static_cast<Real>(h / 6);
    rhs(x, k1_);
    tmp_ = x + half * k1_;
    rhs(tmp_, k2_);
    tmp_ = x + half * k2_;
    rhs(tmp_, k3_);
    tmp_ = x + full * k3_;
    rhs(tmp_, k4_);
    x += sixth * (k1_ + Real(2) * k2_ + Real(2) * k3_ + k4_);
  }

 private:
  State k1_, k2_, k3_, k4_, tmp_;
};

struct SettleOutcome {
  Index steps = 0;
  bool converged = false;
  double tau = 0.0;
  ConvergenceTrace trace;
};

// Geometric tail of the successive checkpoint differences: with ratio r the
// remaining path length is diff * r / (1 - r).
inline bool settled(const std::vector<double>& diffs, double window, double floor, const IntegrationConfig& cfg) {
  const std::size_t k = diffs.size();
  if (k < 4) return false;
  const double diff = diffs.back();
  if (diff >= cfg.epsilon * window) return false;
  if (diffs[k - 1] <= floor && diffs[k - 2] <= floor && diffs[k - 3] <= floor) return true;
  double ratio = 0.0;
  for (std::size_t i = k - 3; i < k; ++i) {
    if (diffs[i - 1] <= 0.0) return diffs[i] <= 0.0;
    ratio = std::max(ratio, diffs[i] / diffs[i - 1]);
  }
  if (ratio >= 1.0) return false;
  return diff * ratio / (1.0 - ratio) < cfg.settle_factor * cfg.epsilon;
}

// Earliest time after which every checkpoint stays inside the epsilon ball
// around the final state, interpolated log-linearly inside the last window.
inline double first_passage(const ConvergenceTrace& trace, double epsilon) {
  const auto& d = trace.distances;
  std::size_t last_out = d.size();
  for (std::size_t k = d.size(); k-- > 0;) {
    if (d[k] >= epsilon) {
      last_out = k;
      break;
    }
  }
  if (last_out == d.size()) return trace.times.front();
  if (last_out + 1 >= d.size()) return trace.times.back();
  const double t0 = trace.times[last_out];
  const double t1 = trace.times[last_out + 1];
  const double d0 = d[last_out];
  const double d1 = d[last_out + 1];
  if (d1 <= 0.0) return t0;
  const double fraction = std::log(d0 / epsilon) / std::log(d0 / d1);
  return t0 + (t1 - t0) * std::clamp(fraction, 0.0, 1.0);
}

/// Integrates x' = rhs(x) with fixed-step RK4 until the populations settle.
/// `check(t, x)` runs at every checkpoint and may throw.
template <typename State, typename Rhs, typename Populations, typename Check>
SettleOutcome settle(State& x, Rhs&& rhs, Populations&& populations, Check&& check, const IntegrationConfig& cfg) {
  cfg.validate();
  using PopVector = std::decay_t<decltype(populations(x))>;
  Rk4<State> rk;
  SettleOutcome out;
  std::vector<PopVector> checkpoints;
  std::vector<double> diffs;
  checkpoints.push_back(populations(x));
  out.trace.times.push_back(0.0);
  const double window = cfg.dt * static_cast<double>(cfg.check_stride);

  while (true) {
    for (Index s = 0; s < cfg.check_stride; ++s) rk.step(x, rhs, cfg.dt);
    out.steps += cfg.check_stride;
    const double t = static_cast<double>(out.steps) * cfg.dt;
    check(t, x);
    PopVector p = populations(x);
    if (!p.allFinite()) throw InstabilityError("non-finite state at t = " + std::to_string(t) + "; reduce dt");
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * static_cast<double>(p.norm());
    diffs.push_back(static_cast<double>((p - checkpoints.back()).norm()));
    checkpoints.push_back(std::move(p));
    out.trace.times.push_back(t);
    if (settled(diffs, window, floor, cfg)) {
      out.converged = true;
      break;
    }
    if (t >= cfg.max_time) break;
  }

  const PopVector& final_state = checkpoints.back();
  out.trace.distances.reserve(checkpoints.size());
  for (const auto& c : checkpoints) out.trace.distances.push_back(static_cast<double>((c - final_state).norm()));
  out.tau = first_passage(out.trace, cfg.epsilon);
  return out;
}

}  // namespace detail

/// Evolves rho from `initial` until the populations reach their fixed point.
/// tau is the first time the population distance to the final state drops
/// below epsilon for good.
template <typename Scalar>
StationaryResult<Scalar> integrate_to_stationary(const LindbladGenerator<Scalar>& gen, const IntegrationConfig& cfg,
                                                 const DensityMatrix<Scalar>& initial,
                                                 const TrajectoryObserver<Scalar>& observer = {}) {
  detail::check_dimensions(gen, initial.size(), initial.size());
  using State = ComplexMatrix<Scalar>;
  State rho = initial.matrix();
  State scratch;
  StationaryResult<Scalar> result;

  auto rhs = [&](const State& x, State& dx) { lindblad_apply_hermitian(gen, x, dx, scratch); };
  auto populations = [](const State& x) -> Vector<Scalar> { return x.diagonal().real(); };
  auto check = [&](double t, const State& x) {
    const double drift = static_cast<double>(trace_defect(x));
    result.max_trace_drift = std::max(result.max_trace_drift, drift);
    result.max_hermiticity_defect = std::max(result.max_hermiticity_defect, static_cast<double>(hermiticity_defect(x)));
    if (!(drift <= detail::kMaxTraceDrift))
      throw InstabilityError("trace drifted by " + std::to_string(drift) + " at t = " + std::to_string(t) +
                             "; use a smaller dt");
    if (observer) observer(t, x);
  };

  auto outcome = detail::settle(rho, rhs, populations, check, cfg);
  // Remove the O(eps_machine) anti-Hermitian residue before validation.
  State hermitian = (rho + rho.adjoint()) / Scalar(2);
  result.rho_star = DensityMatrix<Scalar>(std::move(hermitian));
  result.tau = outcome.tau;
  result.steps = outcome.steps;
  result.converged = outcome.converged;
  result.trace = std::move(outcome.trace);
  return result;
}

template <typename Scalar>
StationaryResult<Scalar> integrate_to_stationary(const LindbladGenerator<Scalar>& gen, const IntegrationConfig& cfg,
                                                 const TrajectoryObserver<Scalar>& observer = {}) {
  return integrate_to_stationary(gen, cfg, DensityMatrix<Scalar>::maximally_mixed(gen.size()), observer);
}

/// dp/dt = (G - I) p from the uniform vector, with the same stepping and
/// stopping rule as integrate_to_stationary.
template <typename Scalar>
ClassicalResult<Scalar> classical_convergence_time(const StochasticMatrix<Scalar>& g, const IntegrationConfig& cfg) {
  using State = Vector<Scalar>;
  const Index n = g.size();
  State p = State::Constant(n, Scalar(1) / Scalar(n));
  auto rhs = [&](const State& x, State& dx) {
    dx.noalias() = g.matrix() * x;
    dx -= x;
  };
  auto populations = [](const State& x) -> State { return x; };
  auto check = [](double t, const State& x) {
    const double drift = std::abs(static_cast<double>(x.sum()) - 1.0);
    if (!(drift <= detail::kMaxTraceDrift))
      throw InstabilityError("probability drifted by " + std::to_string(drift) + " at t = " + std::to_string(t));
  };
  auto outcome = detail::settle(p, rhs, populations, check, cfg);
  ClassicalResult<Scalar> result;
  result.p_star = std::move(p);
  result.tau = outcome.tau;
  result.steps = outcome.steps;
  result.converged = outcome.converged;
  result.trace = std::move(outcome.trace);
  return result;
}

inline constexpr Index kDefaultPowerIterations = 1'000'000;

/// Fixed point of p <- G p by power iteration from the uniform vector; stops
/// when the L1 change of one iteration drops below epsilon.
template <typename Scalar>
Vector<Scalar> classical_stationary(const StochasticMatrix<Scalar>& g, double epsilon = 1e-14,
                                    Index max_iterations = kDefaultPowerIterations) {
  const Index n = g.size();
  if (n == 0) throw PreconditionError("empty transition matrix");
  Vector<Scalar> p = Vector<Scalar>::Constant(n, Scalar(1) / Scalar(n));
  Vector<Scalar> next(n);
  for (Index it = 0; it < max_iterations; ++it) {
    next.noalias() = g.matrix() * p;
    next /= next.sum();
    const double change = static_cast<double>((next - p).template lpNorm<1>());
    p.swap(next);
    if (change < epsilon) return p;
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iterations) + " iterations");
}

inline constexpr double kZeroEigenvalueTolerance = 1e-9;

template <typename Scalar>
ComplexVector<Scalar> liouvillian_spectrum(const DenseLiouvillian<Scalar>& dl) {
  Eigen::ComplexEigenSolver<ComplexMatrix<Scalar>> solver(dl.matrix, false);
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition of the Liouvillian failed");
  return solver.eigenvalues();
}

/// Slowest nonzero eigenvalue lambda_1 of the generator and the bound 1/|Re lambda_1|.
template <typename Scalar>
struct SpectralGap {
  Complex<Scalar> lambda1;
  double tau = 0.0;
};

template <typename Scalar>
SpectralGap<Scalar> spectral_gap(const ComplexVector<Scalar>& spectrum) {
  Index zeros = 0;
  bool found = false;
  Complex<Scalar> slowest;
  for (Index k = 0; k < spectrum.size(); ++k) {
    const auto lambda = spectrum[k];
    if (std::abs(lambda) < kZeroEigenvalueTolerance) {
      ++zeros;
      continue;
    }
    if (!found || lambda.real() > slowest.real()) {
      slowest = lambda;
      found = true;
    }
  }
  if (zeros != 1)
    throw DegeneracyError("expected exactly one zero eigenvalue, found " + std::to_string(zeros) +
                          " (stationary state not unique)");
  if (!found) throw Error("spectrum has no nonzero eigenvalue");
  return {slowest, 1.0 / std::abs(static_cast<double>(slowest.real()))};
}

template <typename Scalar>
double spectral_tau(const DenseLiouvillian<Scalar>& dl) {
  return spectral_gap(liouvillian_spectrum(dl)).tau;
}

}  // namespace qrank

#endif  // QRANK_SOLVER_HPP
