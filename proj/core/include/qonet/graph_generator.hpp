#pragma once

#include <cstdint>

#include "qonet/observer_graph.hpp"

namespace qonet {

enum class GraphKind { complete, path, star, random_connected };

/// Complete graph on nodes 0..N, every edge weighted `weight`.
ObserverGraph make_complete(int observer_count, double weight);

/// Path 0-1-2-...-N, every edge weighted `weight`.
ObserverGraph make_path(int observer_count, double weight);

/// Star with the plant at the hub: edges (0, j) for all observers.
ObserverGraph make_star(int observer_count, double weight);

/// Connected random graph: a spanning tree drawn uniformly over all trees
/// on nodes 0..N (Pruefer decoding), then each remaining pair added with
/// probability 0.3. Weights are uniform in [weight_min, weight_max]. The
/// same seed always yields the same graph.
ObserverGraph make_random_connected(int observer_count, std::uint64_t seed,
                                    double weight_min, double weight_max);

}  // namespace qonet
