#pragma once

#include <cstddef>
#include <vector>

namespace dnmpc {

// Positive filter weights attached to horizon steps, largest weight on the
// smallest predicted separation.
struct SpatialFilter {
  std::vector<double> lambda_seq;  // per-horizon-step weights
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double lambda_sum = 0.0;
};

// Geometric-progression ladder lambda_l = lambda_max * r^l, l = 0..count-1,
// with r = (b_bar * a_bar)^(-1/(count-1)).
struct GpFilterDesign {
  std::vector<double> ladder;  // descending weights
  double ratio_r = 0.0;        // common ratio actually used
  double weight_ratio = 0.0;   // lambda_max / lambda_min
  bool degenerate = false;     // bound vacuous (r>=1 clamped) or ratio >= a_bar
};

bool on_collision_course(const std::vector<double>& d_seq, double r_min);

// Weighted average separation sum(lambda_k d_k) / sum(lambda_k).
double weighted_avg_distance(const std::vector<double>& d_seq, const SpatialFilter& f);

// Repelling potential over triggered neighbors:
//   sum_j lambda_sum * r_min / sum_k lambda_k d_k.
// Each entry of filters/d_seqs corresponds to one neighbor; lengths must
// match pairwise. Throws on a triggered neighbor whose weighted separation
// sum is below `degenerate_eps` (coinciding trajectories).
double potential(const std::vector<std::vector<double>>& d_seqs,
                 const std::vector<SpatialFilter>& filters, double r_min,
                 double degenerate_eps = 1e-9);

double modified_cost(double base_cost, double phi);

// Filter-ratio bound a_bar of the weight-selection condition:
//   r_floor / ({Np Rmin + Np(Np-1) vmax} * {(Np-1)(Lhx+Lqx) + Lhf}).
double ratio_bound(double r_floor, int horizon, double r_min, double v_max, double l_hx,
                   double l_qx, double l_hf);

GpFilterDesign design_filter_gp(double a_bar, double b_bar, double lambda_max, int count);

// Attaches ladder weights to horizon steps by separation rank: smallest
// distance takes the largest weight, ties broken by earlier time index.
SpatialFilter assign_by_distance(const std::vector<double>& ladder,
                                 const std::vector<double>& d_seq);

// Successful-avoidance check: weighted separation sum grows strictly
// between consecutive windows evaluated with the instant's filter.
bool expansion_success(double weighted_sum_prev_window, double weighted_sum_next_window);

}  // namespace dnmpc
