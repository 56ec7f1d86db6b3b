#pragma once

#include "dnmpc/dynamics.hpp"
#include "dnmpc/types.hpp"

#include <stdexcept>

namespace dnmpc {

struct SynthesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Offline terminal ingredients: auxiliary gain K, terminal weight Q_f and
// level a defining the terminal set {z : z' Q_f z <= a}, all in error
// coordinates around the linearization point.
struct TerminalDesign {
  GainMatrix K = GainMatrix::Zero();
  StateMatrix Qf = StateMatrix::Identity();
  double level = 0.0;
  double margin = 0.0;  // most-positive eigenvalue of the Lyapunov residual
  Input u_eq = Input::Zero();  // equilibrium input at the linearization point
};

struct SynthesisOptions {
  double lyapunov_epsilon = 1e-6;  // strictness added to the Lyapunov RHS
  int level_bisection_iters = 40;
};

// Discrete-time LQR gain K (convention A + B K stable) via Riccati iteration.
GainMatrix dlqr_gain(const StateMatrix& A, const InputMatrix& B, const StateMatrix& Q,
                     const InputWeight& R);

// Solves X - Ac' X Ac = Rhs for symmetric X (Ac Schur stable).
StateMatrix solve_discrete_lyapunov(const StateMatrix& Ac, const StateMatrix& Rhs);

// K from LQR on (Q + (n_agents-1) S, R), Q_f from the discrete Lyapunov
// equation, level a maximized by bisection under the constraint-containment
// check. Throws SynthesisError if no stabilizing gain is found.
TerminalDesign synthesize(const StateMatrix& A, const InputMatrix& B, const StateMatrix& Q,
                          const InputWeight& R, const StateMatrix& S, int n_agents,
                          const ConstraintSets& constraints,
                          const SynthesisOptions& opts = {});

// Max eigenvalue of Ac' Qf Ac - Qf + Q + K'RK + (n_agents-1) S; <= 0 is valid.
double verify(const TerminalDesign& d, const StateMatrix& A, const InputMatrix& B,
              const StateMatrix& Q, const InputWeight& R, const StateMatrix& S, int n_agents);

bool in_terminal_set(const State& z, const TerminalDesign& d);

// Simulates the nonlinear closed loop x+ = f(x, u_eq + clamp(K z)) from
// sampled states inside the terminal set; true if every trajectory stays in
// the set, respects constraints, and obeys the terminal-cost decrease
// z'Qf z drop >= stage cost, within `decrease_slack`.
struct InvarianceCheck {
  int samples = 100;
  int horizon_steps = 50;
  unsigned seed = 1234;
  double decrease_slack = 1e-8;
};
bool validate_nonlinear_invariance(const TerminalDesign& d, const VehicleParams& params,
                                   const ConstraintSets& constraints, const StateMatrix& Q,
                                   const InputWeight& R, const StateMatrix& S, int n_agents,
                                   const InvarianceCheck& check = {});

// Shrinks the level geometrically until validate_nonlinear_invariance passes.
TerminalDesign shrink_to_invariance(TerminalDesign d, const VehicleParams& params,
                                    const ConstraintSets& constraints, const StateMatrix& Q,
                                    const InputWeight& R, const StateMatrix& S, int n_agents,
                                    const InvarianceCheck& check = {});

}  // namespace dnmpc
