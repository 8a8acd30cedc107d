#include "cndp/paths.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "cndp/errors.hpp"

namespace cndp {

namespace {

struct QueueItem {
    double dist;
    int node;
    bool operator>(const QueueItem& other) const {
        return std::tie(dist, node) > std::tie(other.dist, other.node);
    }
};

// Dijkstra with predecessor edges. Ties on distance prefer the incoming
// edge with the smaller id, which yields the lexicographically smallest
// equal-weight path when labels settle from the source outwards.
struct Labels {
    std::vector<double> dist;
    std::vector<int> pred_edge;
    std::vector<char> reached;
};

Labels dijkstra(const WeightedView& view, int start, bool forward) {
    const Instance& inst = *view.instance;
    if (start < 0 || start >= inst.num_nodes()) {
        throw BadNode("shortest path query with an out-of-range node");
    }
    size_t n = static_cast<size_t>(inst.num_nodes());
    Labels lab{std::vector<double>(n, 0.0), std::vector<int>(n, -1), std::vector<char>(n, 0)};
    std::vector<char> settled(n, 0);
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> frontier;
    lab.reached[static_cast<size_t>(start)] = 1;
    frontier.push({0.0, start});
    while (!frontier.empty()) {
        auto [d, node] = frontier.top();
        frontier.pop();
        if (settled[static_cast<size_t>(node)]) {
            continue;
        }
        settled[static_cast<size_t>(node)] = 1;
        const auto& edges = forward ? inst.out_edges(node) : inst.in_edges(node);
        for (int e : edges) {
            if (!view.usable[static_cast<size_t>(e)]) {
                continue;
            }
            const Edge& edge = inst.edges()[static_cast<size_t>(e)];
            int next = forward ? edge.head : edge.tail;
            size_t ni = static_cast<size_t>(next);
            double nd = d + view.weights[static_cast<size_t>(e)];
            if (!lab.reached[ni] || nd < lab.dist[ni]) {
                lab.reached[ni] = 1;
                lab.dist[ni] = nd;
                lab.pred_edge[ni] = e;
                frontier.push({nd, next});
            } else if (nd == lab.dist[ni] && !settled[ni] && lab.pred_edge[ni] >= 0 &&
                       edge.id < inst.edges()[static_cast<size_t>(lab.pred_edge[ni])].id) {
                lab.pred_edge[ni] = e;
            }
        }
    }
    return lab;
}

}  // namespace

WeightedView WeightedView::make(const Instance& inst, std::vector<double> w, std::vector<char> use) {
    for (size_t e = 0; e < w.size(); ++e) {
        if (use[e] && !(w[e] >= 0.0)) {
            throw DomainError("negative edge weight on " + inst.edges()[e].id);
        }
    }
    return WeightedView{&inst, std::move(w), std::move(use)};
}

ShortestPathResult shortest_path(const WeightedView& view, int source, int sink) {
    const Instance& inst = *view.instance;
    if (sink < 0 || sink >= inst.num_nodes()) {
        throw BadNode("shortest path query with an out-of-range sink");
    }
    Labels lab = dijkstra(view, source, /*forward=*/true);
    ShortestPathResult result;
    if (!lab.reached[static_cast<size_t>(sink)]) {
        return result;
    }
    result.reachable = true;
    result.dist = lab.dist[static_cast<size_t>(sink)];
    int node = sink;
    while (node != source) {
        int e = lab.pred_edge[static_cast<size_t>(node)];
        result.path.push_back(e);
        node = inst.edges()[static_cast<size_t>(e)].tail;
    }
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

ShortestPathTree shortest_path_tree(const WeightedView& view, int sink) {
    Labels lab = dijkstra(view, sink, /*forward=*/false);
    return ShortestPathTree{std::move(lab.pred_edge), std::move(lab.dist), std::move(lab.reached)};
}

std::vector<double> shortest_distances(const WeightedView& view, int source,
                                       std::vector<char>* reached) {
    Labels lab = dijkstra(view, source, /*forward=*/true);
    if (reached) {
        *reached = std::move(lab.reached);
    }
    return std::move(lab.dist);
}

}  // namespace cndp
