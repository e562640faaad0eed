#include "qonet/observer_graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "qonet/errors.hpp"

namespace qonet {

namespace {

std::string edge_name(int i, int j) {
  return "{" + std::to_string(i) + ", " + std::to_string(j) + "}";
}

}  // namespace

ObserverGraph::ObserverGraph(int observer_count)
    : observer_count_(observer_count) {
  if (observer_count < 1) {
    throw GraphError(GraphError::Kind::bad_node,
                     "graph needs at least one observer node, got " +
                         std::to_string(observer_count));
  }
}

void ObserverGraph::add_edge(int i, int j, double mu) {
  if (i == j) {
    throw GraphError(GraphError::Kind::self_loop,
                     "self-loop at node " + std::to_string(i));
  }
  const int a = std::min(i, j);
  const int b = std::max(i, j);
  if (a < 0 || b > observer_count_) {
    throw GraphError(GraphError::Kind::bad_node,
                     "edge " + edge_name(i, j) + " outside nodes 0.." +
                         std::to_string(observer_count_));
  }
  if (!(mu > 0.0)) {
    throw GraphError(GraphError::Kind::nonpositive_weight,
                     "edge " + edge_name(i, j) + " has nonpositive weight " +
                         std::to_string(mu));
  }
  if (edges_.count({a, b})) {
    throw GraphError(GraphError::Kind::bad_node,
                     "duplicate edge " + edge_name(i, j));
  }
  edges_[{a, b}] = mu;
}

bool ObserverGraph::has_edge(int i, int j) const {
  return edges_.count({std::min(i, j), std::max(i, j)}) > 0;
}

double ObserverGraph::weight(int i, int j) const {
  auto it = edges_.find({std::min(i, j), std::max(i, j)});
  if (it == edges_.end()) {
    throw GraphError(GraphError::Kind::bad_node,
                     "no edge " + edge_name(i, j));
  }
  return it->second;
}

void validate_graph(const ObserverGraph& g) {
  // Self-loops and nonpositive weights cannot be represented, but re-check
  // the stored weights so hand-edited maps cannot slip through.
  const int n = g.node_count();
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& [key, mu] : g.edges()) {
    if (!(mu > 0.0)) {
      throw GraphError(GraphError::Kind::nonpositive_weight,
                       "edge " + edge_name(key.first, key.second) +
                           " has nonpositive weight");
    }
    adjacency[key.first].push_back(key.second);
    adjacency[key.second].push_back(key.first);
  }

  // Breadth-first traversal from the plant node.
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  if (reached != n) {
    throw GraphError(GraphError::Kind::disconnected,
                     "graph is disconnected: reached " +
                         std::to_string(reached) + " of " + std::to_string(n) +
                         " nodes from the plant node");
  }
}

ReducedGraph reduce(const ObserverGraph& g, double alpha1_norm_sq) {
  validate_graph(g);
  ReducedGraph rg;
  rg.observer_count = g.observer_count();
  for (const auto& [key, mu] : g.edges()) {
    const double scaled = mu * alpha1_norm_sq;
    if (key.first == 0) {
      rg.plant_attached[key.second] = scaled;
    } else {
      rg.weights[key] = scaled;
    }
  }
  return rg;
}

Eigen::MatrixXd weighted_laplacian(const ReducedGraph& rg) {
  const int n = rg.observer_count;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [key, w] : rg.weights) {
    const int i = key.first - 1;
    const int j = key.second - 1;
    lap(i, i) += w;
    lap(j, j) += w;
    lap(i, j) -= w;
    lap(j, i) -= w;
  }
  return lap;
}

Eigen::MatrixXd plant_attachment_diag(const ReducedGraph& rg) {
  const int n = rg.observer_count;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [node, w] : rg.plant_attached) {
    d(node - 1, node - 1) = w;
  }
  return d;
}

ComponentPartition connected_components(const ReducedGraph& rg) {
  const int n = rg.observer_count;
  std::vector<std::vector<int>> adjacency(n + 1);
  for (const auto& [key, w] : rg.weights) {
    (void)w;
    adjacency[key.first].push_back(key.second);
    adjacency[key.second].push_back(key.first);
  }

  ComponentPartition part;
  std::vector<char> seen(n + 1, 0);
  for (int start = 1; start <= n; ++start) {
    if (seen[start]) continue;
    std::vector<int> component;
    std::queue<int> frontier;
    frontier.push(start);
    seen[start] = 1;
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      component.push_back(u);
      for (int v : adjacency[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          frontier.push(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    Eigen::VectorXd indicator = Eigen::VectorXd::Zero(n);
    for (int node : component) indicator(node - 1) = 1.0;
    part.components.push_back(std::move(component));
    part.indicators.push_back(std::move(indicator));
  }
  return part;
}

int laplacian_nullity(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() == 0) return 0;
  const double max_diag = laplacian.diagonal().cwiseAbs().maxCoeff();
  if (max_diag == 0.0) return static_cast<int>(laplacian.rows());
  const double threshold = 1e-9 * max_diag;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  int nullity = 0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (std::abs(solver.eigenvalues()(k)) < threshold) ++nullity;
  }
  return nullity;
}

}  // namespace qonet
