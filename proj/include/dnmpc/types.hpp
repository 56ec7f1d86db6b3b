#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dnmpc {

// Planar twin-thruster vehicle: 6 states, 2 inputs.
inline constexpr int kStateDim = 6;
inline constexpr int kInputDim = 2;

using State = Eigen::Matrix<double, kStateDim, 1>;  // [x, y, vx, vy, theta, thetadot]
using Input = Eigen::Matrix<double, kInputDim, 1>;  // [u_R, u_L]

using StateMatrix = Eigen::Matrix<double, kStateDim, kStateDim>;
using InputMatrix = Eigen::Matrix<double, kStateDim, kInputDim>;
using GainMatrix = Eigen::Matrix<double, kInputDim, kStateDim>;
using InputWeight = Eigen::Matrix<double, kInputDim, kInputDim>;

// Time-indexed sequence of states over a prediction horizon (N_p+1 points).
using StateTrajectory = std::vector<State>;

// Time-indexed control inputs over a control horizon (N_c points).
using ControlSequence = std::vector<Input>;

// Named accessors for the state layout.
namespace idx {
inline constexpr int kX = 0;
inline constexpr int kY = 1;
inline constexpr int kVx = 2;
inline constexpr int kVy = 3;
inline constexpr int kTheta = 4;
inline constexpr int kThetaDot = 5;
}  // namespace idx

inline Eigen::Vector2d position_of(const State& s) { return s.head<2>(); }

}  // namespace dnmpc
