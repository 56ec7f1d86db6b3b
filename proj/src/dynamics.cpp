#include "dnmpc/dynamics.hpp"

#include <cmath>

namespace dnmpc {

State continuous_dynamics(const State& s, const Input& u, const VehicleParams& p) {
  const double vx = s[idx::kVx];
  const double vy = s[idx::kVy];
  const double theta = s[idx::kTheta];
  const double omega = s[idx::kThetaDot];
  const double thrust = u[0] + u[1];
  const double torque =
      (p.torque_mode == TorqueMode::Differential ? (u[0] - u[1]) : (u[0] + u[1])) * p.r_v;

  State ds;
  ds[idx::kX] = vx;
  ds[idx::kY] = vy;
  ds[idx::kVx] = (-p.mu1 * vx + thrust * std::cos(theta)) / p.mass;
  ds[idx::kVy] = (-p.mu1 * vy + thrust * std::sin(theta)) / p.mass;
  ds[idx::kTheta] = omega;
  ds[idx::kThetaDot] = (-p.mu2 * omega + torque) / p.inertia;
  return ds;
}

namespace {

struct ContinuousJacobians {
  StateMatrix A;
  InputMatrix B;
};

ContinuousJacobians continuous_jacobians(const State& s, const Input& u, const VehicleParams& p) {
  const double theta = s[idx::kTheta];
  const double thrust = u[0] + u[1];
  const double torque_sign = (p.torque_mode == TorqueMode::Differential) ? -1.0 : 1.0;

  ContinuousJacobians j;
  j.A.setZero();
  j.B.setZero();

  j.A(idx::kX, idx::kVx) = 1.0;
  j.A(idx::kY, idx::kVy) = 1.0;
  j.A(idx::kVx, idx::kVx) = -p.mu1 / p.mass;
  j.A(idx::kVx, idx::kTheta) = -thrust * std::sin(theta) / p.mass;
  j.A(idx::kVy, idx::kVy) = -p.mu1 / p.mass;
  j.A(idx::kVy, idx::kTheta) = thrust * std::cos(theta) / p.mass;
  j.A(idx::kTheta, idx::kThetaDot) = 1.0;
  j.A(idx::kThetaDot, idx::kThetaDot) = -p.mu2 / p.inertia;

  j.B(idx::kVx, 0) = std::cos(theta) / p.mass;
  j.B(idx::kVx, 1) = std::cos(theta) / p.mass;
  j.B(idx::kVy, 0) = std::sin(theta) / p.mass;
  j.B(idx::kVy, 1) = std::sin(theta) / p.mass;
  j.B(idx::kThetaDot, 0) = p.r_v / p.inertia;
  j.B(idx::kThetaDot, 1) = torque_sign * p.r_v / p.inertia;
  return j;
}

}  // namespace

State step(const State& s, const Input& u, const VehicleParams& p) {
  const double h = p.sample_time;
  const State k1 = continuous_dynamics(s, u, p);
  const State k2 = continuous_dynamics(s + 0.5 * h * k1, u, p);
  const State k3 = continuous_dynamics(s + 0.5 * h * k2, u, p);
  const State k4 = continuous_dynamics(s + h * k3, u, p);
  return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Linearization linearize(const State& s, const Input& u, const VehicleParams& p) {
  const double h = p.sample_time;

  const State k1 = continuous_dynamics(s, u, p);
  const State s2 = s + 0.5 * h * k1;
  const State k2 = continuous_dynamics(s2, u, p);
  const State s3 = s + 0.5 * h * k2;
  const State k3 = continuous_dynamics(s3, u, p);
  const State s4 = s + h * k3;

  const auto j1 = continuous_jacobians(s, u, p);
  const auto j2 = continuous_jacobians(s2, u, p);
  const auto j3 = continuous_jacobians(s3, u, p);
  const auto j4 = continuous_jacobians(s4, u, p);

  const StateMatrix I = StateMatrix::Identity();
  const StateMatrix dk1 = j1.A;
  const StateMatrix dk2 = j2.A * (I + 0.5 * h * dk1);
  const StateMatrix dk3 = j3.A * (I + 0.5 * h * dk2);
  const StateMatrix dk4 = j4.A * (I + h * dk3);

  const InputMatrix bk1 = j1.B;
  const InputMatrix bk2 = j2.A * (0.5 * h * bk1) + j2.B;
  const InputMatrix bk3 = j3.A * (0.5 * h * bk2) + j3.B;
  const InputMatrix bk4 = j4.A * (h * bk3) + j4.B;

  Linearization lin;
  lin.A = I + (h / 6.0) * (dk1 + 2.0 * dk2 + 2.0 * dk3 + dk4);
  lin.B = (h / 6.0) * (bk1 + 2.0 * bk2 + 2.0 * bk3 + bk4);
  return lin;
}

bool check_input_constraints(const Input& u, const ConstraintSets& c) {
  return std::abs(u[0]) <= c.input_abs_max && std::abs(u[1]) <= c.input_abs_max;
}

bool check_state_constraints(const State& s, const ConstraintSets& c) {
  if (std::abs(s[idx::kThetaDot]) > c.heading_rate_max) return false;
  if (c.position_box) {
    const auto pos = position_of(s);
    if ((pos.array() < c.position_box->lo.array()).any() ||
        (pos.array() > c.position_box->hi.array()).any()) {
      return false;
    }
  }
  return true;
}

bool check_constraints(const State& s, const Input& u, const ConstraintSets& c) {
  return check_input_constraints(u, c) && check_state_constraints(s, c);
}

}  // namespace dnmpc
