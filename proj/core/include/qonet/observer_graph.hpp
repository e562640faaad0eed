#pragma once

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qonet {

/// Plant-observer coupling graph. Node 0 is the plant; nodes 1..N are the
/// observer oscillators. Edges are unordered pairs stored under a canonical
/// (min, max) key, so the symmetry mu_ij = mu_ji holds by representation.
class ObserverGraph {
 public:
  using EdgeKey = std::pair<int, int>;
  using EdgeMap = std::map<EdgeKey, double>;

  /// A graph with `observer_count` observer nodes and no edges yet.
  explicit ObserverGraph(int observer_count);

  /// Adds the undirected edge {i, j} with coupling weight mu > 0.
  /// Throws GraphError on self-loops, out-of-range nodes, nonpositive or
  /// duplicate weights. A weight of exactly zero is rejected rather than
  /// treated as an absent edge.
  void add_edge(int i, int j, double mu);

  int observer_count() const { return observer_count_; }
  int node_count() const { return observer_count_ + 1; }
  const EdgeMap& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  double weight(int i, int j) const;

 private:
  int observer_count_;
  EdgeMap edges_;
};

/// Checks the hypotheses required of the full (N+1)-node graph: positive
/// weights, no self-loops (both structural here), and connectivity.
/// Throws GraphError::Kind::disconnected when the graph has no spanning path.
void validate_graph(const ObserverGraph& g);

/// Observer-only graph left after deleting the plant node, with edge weights
/// scaled to mu~_ij = mu_ij * ||alpha1||^2, plus the set of observers that
/// were attached to the plant (with their scaled weights mu~_0j).
struct ReducedGraph {
  int observer_count = 0;
  /// Observer-observer edges, canonical (min, max) keys over 1..N.
  std::map<std::pair<int, int>, double> weights;
  /// j -> mu~_0j for every observer j that had a plant edge.
  std::map<int, double> plant_attached;
};

/// Derives the reduced graph. Requires validate_graph(g) to pass.
ReducedGraph reduce(const ObserverGraph& g, double alpha1_norm_sq);

/// Weighted Laplacian of the reduced observer graph: weighted degrees on the
/// diagonal, -mu~_ij off-diagonal on edges. Symmetric positive semidefinite
/// with zero row sums.
Eigen::MatrixXd weighted_laplacian(const ReducedGraph& rg);

/// Diagonal plant-attachment matrix: mu~_0j at attached nodes, 0 elsewhere.
Eigen::MatrixXd plant_attachment_diag(const ReducedGraph& rg);

struct ComponentPartition {
  /// Connected components of the reduced graph, each a sorted list of
  /// observer node labels in 1..N.
  std::vector<std::vector<int>> components;
  /// 0/1 indicator vector (length N) per component. These span the null
  /// space of the weighted Laplacian.
  std::vector<Eigen::VectorXd> indicators;
};

ComponentPartition connected_components(const ReducedGraph& rg);

/// Number of eigenvalues of the (symmetric) Laplacian below the scale-aware
/// threshold 1e-9 * max(diagonal). Equals the component count.
int laplacian_nullity(const Eigen::MatrixXd& laplacian);

}  // namespace qonet
