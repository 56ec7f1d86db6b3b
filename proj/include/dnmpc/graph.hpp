#pragma once

#include <Eigen/Dense>

#include <set>
#include <vector>

namespace dnmpc {

// Directed inter-agent communication graph with non-negative edge weights.
// Entry (i, j) > 0 means agent i uses information transmitted by agent j;
// the same container doubles as the gain matrix of the stability monitor.
class ConnectivityMatrix {
 public:
  explicit ConnectivityMatrix(int n) : entries_(Eigen::MatrixXd::Zero(n, n)) {}
  explicit ConnectivityMatrix(Eigen::MatrixXd entries);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }

  // Adds (or overwrites) the directed dependency i <- j with given weight.
  void set_edge(int i, int j, double weight = 1.0);

  const Eigen::MatrixXd& entries() const { return entries_; }

  // Agents whose information i consumes: {j : entry(i,j) > 0}.
  std::vector<int> in_neighbors(int i) const;
  // Agents that consume i's information: {j : entry(j,i) > 0}.
  std::vector<int> out_neighbors(int i) const;

 private:
  Eigen::MatrixXd entries_;
};

struct Neighborhood {
  int agent = -1;
  std::set<int> members;  // {j : entry(i,j)>0 or entry(j,i)>0}, i excluded
};

enum class Connectivity { StronglyConnected, WeaklyConnected, Disconnected };

Neighborhood neighborhood(const ConnectivityMatrix& gamma, int i);

Connectivity classify_connectivity(const ConnectivityMatrix& gamma);

// Permutation p such that the reindexed matrix M'(a,b) = M(p[a], p[b]) is
// upper block-triangular with each diagonal block either 0 or irreducible.
// p[k] is the original index of the node placed at position k.
std::vector<int> block_triangular_order(const ConnectivityMatrix& gamma);

// Strongly connected components, one sorted vector per component, listed in
// the order used by block_triangular_order.
std::vector<std::vector<int>> strongly_connected_components(const ConnectivityMatrix& gamma);

}  // namespace dnmpc
