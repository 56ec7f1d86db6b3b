#include "dnmpc/terminal.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace dnmpc {

namespace {

double spectral_radius(const StateMatrix& A) {
  return Eigen::EigenSolver<StateMatrix>(A, false).eigenvalues().cwiseAbs().maxCoeff();
}

double max_symmetric_eigenvalue(const StateMatrix& M) {
  const StateMatrix sym = 0.5 * (M + M.transpose());
  return Eigen::SelfAdjointEigenSolver<StateMatrix>(sym).eigenvalues().maxCoeff();
}

StateMatrix lyapunov_residual(const TerminalDesign& d, const StateMatrix& A, const InputMatrix& B,
                              const StateMatrix& Q, const InputWeight& R, const StateMatrix& S,
                              int n_agents) {
  const StateMatrix Ac = A + B * d.K;
  return Ac.transpose() * d.Qf * Ac - d.Qf + Q + d.K.transpose() * R * d.K +
         static_cast<double>(n_agents - 1) * S;
}

}  // namespace

GainMatrix dlqr_gain(const StateMatrix& A, const InputMatrix& B, const StateMatrix& Q,
                     const InputWeight& R) {
  StateMatrix P = Q;
  constexpr int kMaxIters = 20000;
  for (int i = 0; i < kMaxIters; ++i) {
    const InputWeight G = R + B.transpose() * P * B;
    const GainMatrix Klqr = G.ldlt().solve(B.transpose() * P * A);
    const StateMatrix Pn =
        A.transpose() * P * A - A.transpose() * P * B * Klqr + Q;
    const double delta = (Pn - P).cwiseAbs().maxCoeff();
    P = 0.5 * (Pn + Pn.transpose());
    if (delta < 1e-13 * (1.0 + P.cwiseAbs().maxCoeff())) break;
    if (!P.allFinite()) throw SynthesisError("Riccati iteration diverged");
  }
  const InputWeight G = R + B.transpose() * P * B;
  const GainMatrix K = -G.ldlt().solve(B.transpose() * P * A);
  if (spectral_radius(A + B * K) >= 1.0) {
    throw SynthesisError("no stabilizing gain found: (A,B) not stabilizable for given weights");
  }
  return K;
}

StateMatrix solve_discrete_lyapunov(const StateMatrix& Ac, const StateMatrix& Rhs) {
  constexpr int n = kStateDim;
  const StateMatrix At = Ac.transpose();
  Eigen::Matrix<double, n * n, n * n> M = Eigen::Matrix<double, n * n, n * n>::Identity();
  // vec(Ac' X Ac) = (Ac' (x) Ac') vec(X); subtract the Kronecker product.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      M.block<n, n>(i * n, j * n) -= At(i, j) * At;
    }
  }
  Eigen::Matrix<double, n * n, 1> rhs;
  for (int col = 0; col < n; ++col) rhs.segment<n>(col * n) = Rhs.col(col);
  const Eigen::Matrix<double, n * n, 1> x = M.partialPivLu().solve(rhs);
  StateMatrix X;
  for (int col = 0; col < n; ++col) X.col(col) = x.segment<n>(col * n);
  return 0.5 * (X + X.transpose());
}

TerminalDesign synthesize(const StateMatrix& A, const InputMatrix& B, const StateMatrix& Q,
                          const InputWeight& R, const StateMatrix& S, int n_agents,
                          const ConstraintSets& constraints, const SynthesisOptions& opts) {
  const StateMatrix Qlqr = Q + static_cast<double>(n_agents - 1) * S;
  TerminalDesign d;
  d.K = dlqr_gain(A, B, Qlqr, R);

  const StateMatrix M =
      Qlqr + d.K.transpose() * R * d.K + opts.lyapunov_epsilon * StateMatrix::Identity();
  d.Qf = solve_discrete_lyapunov(A + B * d.K, M);

  Eigen::SelfAdjointEigenSolver<StateMatrix> es(d.Qf);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw SynthesisError("terminal weight not positive definite");
  }
  const StateMatrix Qf_inv = es.operatorInverseSqrt() * es.operatorInverseSqrt();

  // Constraint rows c'z <= b over the ellipsoid z'Qf z <= a: the support
  // function gives a <= b^2 / (c' Qf^{-1} c) per row.
  struct Row {
    State c;
    double bound;
  };
  std::vector<Row> rows;
  for (int i = 0; i < kInputDim; ++i) {
    const double capacity = constraints.input_abs_max - std::abs(d.u_eq[i]);
    if (capacity <= 0.0) throw SynthesisError("equilibrium input leaves no control capacity");
    rows.push_back({d.K.row(i).transpose(), capacity});
  }
  State heading_rate_row = State::Zero();
  heading_rate_row[idx::kThetaDot] = 1.0;
  rows.push_back({heading_rate_row, constraints.heading_rate_max});

  double a_max = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    const double quad = row.c.dot(Qf_inv * row.c);
    if (quad > 0.0) a_max = std::min(a_max, row.bound * row.bound / quad);
  }
  if (!std::isfinite(a_max)) a_max = 1.0;

  const auto contained = [&](double a) {
    for (const auto& row : rows) {
      const double support = std::sqrt(a * row.c.dot(Qf_inv * row.c));
      if (support > row.bound) return false;
    }
    return true;
  };

  double lo = 0.0, hi = a_max;
  for (int i = 0; i < opts.level_bisection_iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (contained(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  d.level = lo;
  d.margin = verify(d, A, B, Q, R, S, n_agents);
  return d;
}

double verify(const TerminalDesign& d, const StateMatrix& A, const InputMatrix& B,
              const StateMatrix& Q, const InputWeight& R, const StateMatrix& S, int n_agents) {
  return max_symmetric_eigenvalue(lyapunov_residual(d, A, B, Q, R, S, n_agents));
}

bool in_terminal_set(const State& z, const TerminalDesign& d) {
  return z.dot(d.Qf * z) <= d.level;
}

bool validate_nonlinear_invariance(const TerminalDesign& d, const VehicleParams& params,
                                   const ConstraintSets& constraints, const StateMatrix& Q,
                                   const InputWeight& R, const StateMatrix& S, int n_agents,
                                   const InvarianceCheck& check) {
  if (d.level <= 0.0) return false;
  Eigen::SelfAdjointEigenSolver<StateMatrix> es(d.Qf);
  const StateMatrix shape = es.operatorInverseSqrt();  // maps unit ball to {z'Qf z <= 1}

  std::mt19937 rng(check.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const StateMatrix Scaled = static_cast<double>(n_agents - 1) * S;

  for (int s = 0; s < check.samples; ++s) {
    State dir;
    for (int i = 0; i < kStateDim; ++i) dir[i] = gauss(rng);
    dir.normalize();
    const double radius = std::sqrt(d.level) * std::pow(unif(rng), 1.0 / kStateDim);
    State z = shape * dir * radius;

    for (int t = 0; t < check.horizon_steps; ++t) {
      const Input u_fb = d.u_eq + d.K * z;
      const Input u = u_fb.cwiseMax(-constraints.input_abs_max).cwiseMin(constraints.input_abs_max);
      if (!check_constraints(z, u, constraints)) return false;
      const State z_next = step(z, u, params);
      const double v_now = z.dot(d.Qf * z);
      const double v_next = z_next.dot(d.Qf * z_next);
      const double stage = z.dot(Q * z) + u_fb.dot(R * u_fb) + z.dot(Scaled * z);
      if (v_next > d.level) return false;
      if (v_next - v_now > -stage + check.decrease_slack) return false;
      z = z_next;
    }
  }
  return true;
}

TerminalDesign shrink_to_invariance(TerminalDesign d, const VehicleParams& params,
                                    const ConstraintSets& constraints, const StateMatrix& Q,
                                    const InputWeight& R, const StateMatrix& S, int n_agents,
                                    const InvarianceCheck& check) {
  for (int i = 0; i < 80; ++i) {
    if (validate_nonlinear_invariance(d, params, constraints, Q, R, S, n_agents, check)) {
      return d;
    }
    d.level *= 0.5;
  }
  throw SynthesisError("terminal level could not be certified invariant for the nonlinear model");
}

}  // namespace dnmpc
