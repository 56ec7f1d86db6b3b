#pragma once

#include "dnmpc/types.hpp"

#include <cstdint>
#include <vector>

namespace dnmpc {

// Fixed per-channel affine normalization derived from agent-advertised state
// bounds; shared via configuration, never transmitted.
struct ChannelScaling {
  Eigen::Matrix<double, kStateDim, 1> offset = Eigen::Matrix<double, kStateDim, 1>::Zero();
  Eigen::Matrix<double, kStateDim, 1> scale = Eigen::Matrix<double, kStateDim, 1>::Ones();

  static ChannelScaling from_bounds(const State& lo, const State& hi);
  Eigen::Matrix<double, kStateDim, 1> normalize(const State& x) const;
  State denormalize(const Eigen::Matrix<double, kStateDim, 1>& y) const;
};

// One-hidden-layer tanh network mapping normalized time (replicated
// input_dim times) to the normalized state channels.
struct NnModel {
  int input_dim = 1;  // 1 or kStateDim (time replicated)
  int hidden = 6;
  Eigen::MatrixXd w1;  // hidden x input_dim
  Eigen::VectorXd b1;  // hidden
  Eigen::MatrixXd w2;  // kStateDim x hidden
  Eigen::VectorXd b2;  // kStateDim

  // Max-abs reconstruction error per channel over the training grid, in
  // physical units, measured after float32 quantization of the weights.
  Eigen::Matrix<double, kStateDim, 1> xi_hat = Eigen::Matrix<double, kStateDim, 1>::Zero();

  int parameter_count() const {
    return hidden * (input_dim + 1) + kStateDim * (hidden + 1);
  }

  Eigen::Matrix<double, kStateDim, 1> eval_normalized(double tau) const;
};

inline int nn_parameter_count(int hidden, int input_dim, int output_dim) {
  return hidden * (input_dim + 1) + output_dim * (hidden + 1);
}

struct TrainOptions {
  int max_epochs = 2000;
  double learning_rate = 0.2;
  double momentum = 0.9;
  double stop_tol = 1e-4;  // on max-abs normalized residual
  unsigned seed = 1;
  int input_dim = 1;
};

// Deterministic full-batch gradient-descent fit of the trajectory sampled at
// sample_time spacing. Throws on divergence (non-finite loss).
NnModel train(const StateTrajectory& traj, int hidden, const ChannelScaling& scaling,
              const TrainOptions& opts);

// The only thing on the wire. Little-endian layout:
//   u16 agent id | f64 timestamp | f32 sample time | u16 N_p | u8 H_L |
//   u8 input-mode | q x f32 parameters
struct TrajectoryPacket {
  std::uint16_t agent_id = 0;
  double timestamp = 0.0;    // T_s [s]
  float sample_time = 0.0f;  // T [s]
  std::uint16_t horizon = 0;  // N_p [steps]; trained support spans N_p * T
  std::uint8_t hidden = 0;
  std::uint8_t input_mode = 1;
  std::vector<float> params;
};

inline constexpr int kPacketOverheadSlots = 6;

struct CompressionReport {
  int raw_count = 0;     // n * N_p
  int packet_count = 0;  // q + overhead slots
  double factor = 0.0;   // 1 - packet_count / raw_count
  double factor_params_only = 0.0;  // 1 - q / raw_count
};

struct EncodedTrajectory {
  TrajectoryPacket packet;
  CompressionReport report;
};

EncodedTrajectory encode(const NnModel& model, std::uint16_t agent_id, double timestamp,
                         double sample_time, int horizon);

NnModel decode(const TrajectoryPacket& packet);

std::vector<std::uint8_t> serialize(const TrajectoryPacket& packet);
TrajectoryPacket deserialize(const std::vector<std::uint8_t>& bytes);

// Evaluates the packet's network on the receiver grid delay + k * rx_sample
// for k = 0..rx_points-1 (times relative to the packet timestamp). Times
// beyond the trained support are extrapolated up to extrapolation_limit
// seconds, then clamped.
StateTrajectory reconstruct(const TrajectoryPacket& packet, double rx_sample_time, int rx_points,
                            double delay, const ChannelScaling& scaling,
                            double extrapolation_limit);

struct DelayEstimate {
  double delay = 0.0;
  bool clock_skew = false;  // packet stamped in the local future
};

DelayEstimate estimate_delay(double packet_timestamp, double local_clock);

}  // namespace dnmpc
