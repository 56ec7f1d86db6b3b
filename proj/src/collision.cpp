#include "dnmpc/collision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dnmpc {

bool on_collision_course(const std::vector<double>& d_seq, double r_min) {
  if (d_seq.empty()) throw std::invalid_argument("empty separation sequence");
  return std::any_of(d_seq.begin(), d_seq.end(), [&](double d) { return r_min - d > 0.0; });
}

double weighted_avg_distance(const std::vector<double>& d_seq, const SpatialFilter& f) {
  if (d_seq.size() != f.lambda_seq.size()) {
    throw std::invalid_argument("separation/filter length mismatch");
  }
  double num = 0.0;
  for (std::size_t k = 0; k < d_seq.size(); ++k) num += f.lambda_seq[k] * d_seq[k];
  return num / f.lambda_sum;
}

double potential(const std::vector<std::vector<double>>& d_seqs,
                 const std::vector<SpatialFilter>& filters, double r_min, double degenerate_eps) {
  if (d_seqs.size() != filters.size()) {
    throw std::invalid_argument("one filter per neighbor required");
  }
  double phi = 0.0;
  for (std::size_t j = 0; j < d_seqs.size(); ++j) {
    if (!on_collision_course(d_seqs[j], r_min)) continue;
    const auto& f = filters[j];
    if (d_seqs[j].size() != f.lambda_seq.size()) {
      throw std::invalid_argument("separation/filter length mismatch");
    }
    double weighted_sum = 0.0;
    for (std::size_t k = 0; k < d_seqs[j].size(); ++k) {
      weighted_sum += f.lambda_seq[k] * d_seqs[j][k];
    }
    if (weighted_sum < degenerate_eps) {
      throw std::domain_error("degenerate separation: trajectories coincide");
    }
    phi += f.lambda_sum * r_min / weighted_sum;
  }
  return phi;
}

double modified_cost(double base_cost, double phi) { return base_cost * (1.0 + phi); }

double ratio_bound(double r_floor, int horizon, double r_min, double v_max, double l_hx,
                   double l_qx, double l_hf) {
  if (horizon < 2) throw std::invalid_argument("ratio_bound requires horizon >= 2");
  const double np = static_cast<double>(horizon);
  const double reach = np * r_min + np * (np - 1.0) * v_max;
  const double grad = (np - 1.0) * (l_hx + l_qx) + l_hf;
  return r_floor / (reach * grad);
}

GpFilterDesign design_filter_gp(double a_bar, double b_bar, double lambda_max, int count) {
  if (count < 2) throw std::invalid_argument("filter needs at least two weights");
  if (b_bar <= 1.0) throw std::invalid_argument("b_bar must exceed 1");
  if (lambda_max <= 0.0) throw std::invalid_argument("lambda_max must be positive");

  GpFilterDesign out;
  const double product = b_bar * a_bar;
  if (product <= 1.0) {
    out.degenerate = true;
    out.ratio_r = 1.0 - 1e-6;
  } else {
    out.ratio_r = std::pow(product, -1.0 / static_cast<double>(count - 1));
    if (out.ratio_r >= 1.0) {
      out.degenerate = true;
      out.ratio_r = 1.0 - 1e-6;
    }
  }

  out.ladder.resize(count);
  double w = lambda_max;
  for (int l = 0; l < count; ++l) {
    out.ladder[l] = w;
    w *= out.ratio_r;
  }
  out.weight_ratio = out.ladder.front() / out.ladder.back();
  if (!(out.weight_ratio < a_bar)) out.degenerate = true;
  return out;
}

SpatialFilter assign_by_distance(const std::vector<double>& ladder,
                                 const std::vector<double>& d_seq) {
  if (ladder.size() != d_seq.size()) {
    throw std::invalid_argument("ladder/separation length mismatch");
  }
  std::vector<std::size_t> order(d_seq.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d_seq[a] < d_seq[b]; });

  SpatialFilter f;
  f.lambda_seq.resize(d_seq.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    f.lambda_seq[order[rank]] = ladder[rank];
  }
  f.lambda_max = *std::max_element(ladder.begin(), ladder.end());
  f.lambda_min = *std::min_element(ladder.begin(), ladder.end());
  f.lambda_sum = std::accumulate(ladder.begin(), ladder.end(), 0.0);
  return f;
}

bool expansion_success(double weighted_sum_prev_window, double weighted_sum_next_window) {
  return weighted_sum_prev_window < weighted_sum_next_window;
}

}  // namespace dnmpc
