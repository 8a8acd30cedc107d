#pragma once

#include <limits>
#include <vector>

#include "cndp/model.hpp"

namespace cndp {

/// Edge weights over an instance; infinite weights mark unusable edges
/// (strict edges with zero capacity). Weights are plain doubles here with
/// an explicit usable mask so that no large sentinel ever enters the
/// frontier arithmetic.
struct WeightedView {
    const Instance* instance = nullptr;
    std::vector<double> weights;  // valid where usable[e]
    std::vector<char> usable;

    static WeightedView make(const Instance& inst, std::vector<double> w, std::vector<char> use);
};

struct ShortestPathResult {
    std::vector<int> path;  // edge indices, empty when unreachable
    double dist = 0.0;
    bool reachable = false;
};

struct ShortestPathTree {
    std::vector<int> tree_edge;  // per node: edge towards the sink, -1 at sink/unreached
    std::vector<double> dist;    // distance to the sink, valid where reached[n]
    std::vector<char> reached;
};

/// Minimum-weight directed source->sink path. Ties between equal-weight
/// paths are broken towards the lexicographically smallest edge-id path.
ShortestPathResult shortest_path(const WeightedView& view, int source, int sink);

/// Distances from every node into the sink (reverse shortest path tree).
ShortestPathTree shortest_path_tree(const WeightedView& view, int sink);

/// Distance labels from a single source to all nodes (forward Dijkstra);
/// shared by the equilibrium gap computation.
std::vector<double> shortest_distances(const WeightedView& view, int source,
                                       std::vector<char>* reached = nullptr);

}  // namespace cndp
