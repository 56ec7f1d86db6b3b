#include "dnmpc/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace dnmpc {

ConnectivityMatrix::ConnectivityMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("connectivity matrix must be square");
  }
  if ((entries_.array() < 0.0).any()) {
    throw std::invalid_argument("connectivity weights must be non-negative");
  }
  entries_.diagonal().setZero();
}

void ConnectivityMatrix::set_edge(int i, int j, double weight) {
  if (i < 0 || j < 0 || i >= size() || j >= size()) {
    throw std::out_of_range("edge index out of range");
  }
  if (i == j) {
    throw std::invalid_argument("self edges are not representable");
  }
  if (weight <= 0.0) {
    throw std::invalid_argument("edge weight must be positive");
  }
  entries_(i, j) = weight;
}

std::vector<int> ConnectivityMatrix::in_neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j) {
    if (entries_(i, j) > 0.0) out.push_back(j);
  }
  return out;
}

std::vector<int> ConnectivityMatrix::out_neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j) {
    if (entries_(j, i) > 0.0) out.push_back(j);
  }
  return out;
}

Neighborhood neighborhood(const ConnectivityMatrix& gamma, int i) {
  if (i < 0 || i >= gamma.size()) {
    throw std::out_of_range("agent index out of range");
  }
  Neighborhood nb;
  nb.agent = i;
  for (int j = 0; j < gamma.size(); ++j) {
    if (j == i) continue;
    if (gamma(i, j) > 0.0 || gamma(j, i) > 0.0) nb.members.insert(j);
  }
  return nb;
}

namespace {

// Iterative Tarjan. Emits components sinks-first in the digraph
// v -> w iff entry(v,w) > 0.
std::vector<std::vector<int>> tarjan_sccs(const ConnectivityMatrix& gamma) {
  const int n = gamma.size();
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      if (gamma(v, w) > 0.0) adj[v].push_back(w);
    }
  }

  std::vector<int> index(n, -1), lowlink(n, 0), edge_pos(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack, call_stack;
  std::vector<std::vector<int>> sccs;
  int next_index = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call_stack.push_back(root);
    while (!call_stack.empty()) {
      int v = call_stack.back();
      if (index[v] == -1) {
        index[v] = lowlink[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      while (edge_pos[v] < static_cast<int>(adj[v].size())) {
        int w = adj[v][edge_pos[v]++];
        if (index[w] == -1) {
          call_stack.push_back(w);
          descended = true;
          break;
        }
        if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
      }
      if (descended) continue;
      call_stack.pop_back();
      if (!call_stack.empty()) {
        int parent = call_stack.back();
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
      if (lowlink[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        sccs.push_back(std::move(comp));
      }
    }
  }
  return sccs;
}

bool undirected_closure_connected(const ConnectivityMatrix& gamma) {
  const int n = gamma.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> frontier{0};
  seen[0] = 1;
  int count = 1;
  while (!frontier.empty()) {
    int v = frontier.back();
    frontier.pop_back();
    for (int w = 0; w < n; ++w) {
      if (!seen[w] && (gamma(v, w) > 0.0 || gamma(w, v) > 0.0)) {
        seen[w] = 1;
        ++count;
        frontier.push_back(w);
      }
    }
  }
  return count == n;
}

}  // namespace

Connectivity classify_connectivity(const ConnectivityMatrix& gamma) {
  if (tarjan_sccs(gamma).size() == 1) return Connectivity::StronglyConnected;
  if (undirected_closure_connected(gamma)) return Connectivity::WeaklyConnected;
  return Connectivity::Disconnected;
}

std::vector<std::vector<int>> strongly_connected_components(const ConnectivityMatrix& gamma) {
  // Tarjan finishes sink components first; reversing yields a topological
  // order of the condensation, so dependencies land above the diagonal.
  auto sccs = tarjan_sccs(gamma);
  std::reverse(sccs.begin(), sccs.end());
  return sccs;
}

std::vector<int> block_triangular_order(const ConnectivityMatrix& gamma) {
  std::vector<int> order;
  order.reserve(gamma.size());
  for (const auto& comp : strongly_connected_components(gamma)) {
    order.insert(order.end(), comp.begin(), comp.end());
  }
  return order;
}

}  // namespace dnmpc
