#include "qonet/graph_generator.hpp"

#include <random>
#include <set>
#include <vector>

#include "qonet/errors.hpp"

namespace qonet {

namespace {

// Engine-backed draws with fixed reduction rules, so generated graphs do not
// depend on the standard library's distribution internals.
double draw_uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

int draw_index(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

// Decodes a uniformly random Pruefer sequence into a spanning tree on
// `nodes` labels; uniform over all labelled trees.
std::vector<std::pair<int, int>> random_spanning_tree(int nodes,
                                                      std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> tree;
  if (nodes == 2) {
    tree.emplace_back(0, 1);
    return tree;
  }
  std::vector<int> seq(nodes - 2);
  std::vector<int> degree(nodes, 1);
  for (int& s : seq) {
    s = draw_index(rng, nodes);
    ++degree[s];
  }
  std::set<int> leaves;
  for (int v = 0; v < nodes; ++v) {
    if (degree[v] == 1) leaves.insert(v);
  }
  for (int s : seq) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    tree.emplace_back(std::min(leaf, s), std::max(leaf, s));
    if (--degree[s] == 1) leaves.insert(s);
  }
  const int u = *leaves.begin();
  const int v = *std::next(leaves.begin());
  tree.emplace_back(std::min(u, v), std::max(u, v));
  return tree;
}

}  // namespace

ObserverGraph make_complete(int observer_count, double weight) {
  ObserverGraph g(observer_count);
  for (int i = 0; i <= observer_count; ++i) {
    for (int j = i + 1; j <= observer_count; ++j) {
      g.add_edge(i, j, weight);
    }
  }
  return g;
}

ObserverGraph make_path(int observer_count, double weight) {
  ObserverGraph g(observer_count);
  for (int i = 0; i < observer_count; ++i) {
    g.add_edge(i, i + 1, weight);
  }
  return g;
}

ObserverGraph make_star(int observer_count, double weight) {
  ObserverGraph g(observer_count);
  for (int j = 1; j <= observer_count; ++j) {
    g.add_edge(0, j, weight);
  }
  return g;
}

ObserverGraph make_random_connected(int observer_count, std::uint64_t seed,
                                    double weight_min, double weight_max) {
  if (!(weight_min > 0.0) || !(weight_max >= weight_min)) {
    throw ConfigError(ConfigError::Kind::validation,
                      "random graph weights need 0 < weight_min <= weight_max");
  }
  std::mt19937_64 rng(seed);
  const int nodes = observer_count + 1;
  ObserverGraph g(observer_count);

  for (const auto& [i, j] : random_spanning_tree(nodes, rng)) {
    g.add_edge(i, j, draw_uniform(rng, weight_min, weight_max));
  }
  for (int i = 0; i < nodes; ++i) {
    for (int j = i + 1; j < nodes; ++j) {
      if (!g.has_edge(i, j) && draw_uniform(rng, 0.0, 1.0) < 0.3) {
        g.add_edge(i, j, draw_uniform(rng, weight_min, weight_max));
      }
    }
  }
  return g;
}

}  // namespace qonet
