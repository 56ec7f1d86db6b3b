#pragma once

#include "dnmpc/types.hpp"

#include <optional>

namespace dnmpc {

enum class TorqueMode {
  Differential,  // torque = (u_R - u_L) * r_v
  Summed,        // torque = (u_R + u_L) * r_v
};

struct VehicleParams {
  double mass = 10.0;      // [kg]
  double inertia = 1.0;    // [kg m^2]
  double mu1 = 1.0;        // translational drag
  double mu2 = 1.0;        // rotational drag
  double r_v = 0.5;        // thruster moment arm [m]
  double sample_time = 0.1;  // [s]
  TorqueMode torque_mode = TorqueMode::Differential;
};

struct Box2 {
  Eigen::Vector2d lo;
  Eigen::Vector2d hi;
};

struct ConstraintSets {
  double input_abs_max = 6.0;     // |u_R|, |u_L| <= bound
  double heading_rate_max = 1.0;  // |thetadot| <= bound [rad/s]
  std::optional<Box2> position_box;
};

// One sample-time advance of the RK4-discretized continuous model.
State step(const State& s, const Input& u, const VehicleParams& p);

// Time derivative of the continuous-time model.
State continuous_dynamics(const State& s, const Input& u, const VehicleParams& p);

// Jacobians of the discrete-time map at (s, u), exact for the RK4 composition.
struct Linearization {
  StateMatrix A;
  InputMatrix B;
};
Linearization linearize(const State& s, const Input& u, const VehicleParams& p);

bool check_constraints(const State& s, const Input& u, const ConstraintSets& c);
bool check_state_constraints(const State& s, const ConstraintSets& c);
bool check_input_constraints(const Input& u, const ConstraintSets& c);

}  // namespace dnmpc
