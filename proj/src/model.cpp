#include "cndp/model.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "cndp/errors.hpp"

namespace cndp {

namespace {

bool reachable(const Instance& inst, int source, int sink) {
    std::vector<char> seen(static_cast<size_t>(inst.num_nodes()), 0);
    std::deque<int> queue{source};
    seen[static_cast<size_t>(source)] = 1;
    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        if (node == sink) {
            return true;
        }
        for (int e : inst.out_edges(node)) {
            int head = inst.edges()[static_cast<size_t>(e)].head;
            if (!seen[static_cast<size_t>(head)]) {
                seen[static_cast<size_t>(head)] = 1;
                queue.push_back(head);
            }
        }
    }
    return false;
}

}  // namespace

Instance::Instance(std::vector<std::string> nodes, std::vector<Edge> edges,
                   std::vector<Commodity> commodities, std::optional<double> budget)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      commodities_(std::move(commodities)),
      budget_(budget) {
    for (int i = 0; i < num_nodes(); ++i) {
        if (!node_by_id_.emplace(nodes_[static_cast<size_t>(i)], i).second) {
            throw DomainError("duplicate node id: " + nodes_[static_cast<size_t>(i)]);
        }
    }
    out_edges_.resize(nodes_.size());
    in_edges_.resize(nodes_.size());
    for (int i = 0; i < num_edges(); ++i) {
        const Edge& e = edges_[static_cast<size_t>(i)];
        if (!edge_by_id_.emplace(e.id, i).second) {
            throw DomainError("duplicate edge id: " + e.id);
        }
        if (e.tail < 0 || e.tail >= num_nodes() || e.head < 0 || e.head >= num_nodes()) {
            throw BadNode("edge " + e.id + " references an unknown node");
        }
        if (e.tail == e.head) {
            throw DomainError("self-loop rejected: edge " + e.id);
        }
        if (!(e.price >= 0.0)) {
            throw DomainError("negative price on edge " + e.id);
        }
        if (e.latency.is_strict() && !(e.price > 0.0)) {
            throw DomainError("strict-latency edge " + e.id + " must have price > 0");
        }
        out_edges_[static_cast<size_t>(e.tail)].push_back(i);
        in_edges_[static_cast<size_t>(e.head)].push_back(i);
    }
    for (size_t k = 0; k < commodities_.size(); ++k) {
        const Commodity& c = commodities_[k];
        if (c.source < 0 || c.source >= num_nodes() || c.sink < 0 || c.sink >= num_nodes()) {
            throw BadNode("commodity " + std::to_string(k) + " references an unknown node");
        }
        if (c.source == c.sink) {
            throw DomainError("commodity " + std::to_string(k) + " has source == sink");
        }
        if (!(c.demand > 0.0)) {
            throw DomainError("commodity " + std::to_string(k) + " needs a positive demand");
        }
        if (!reachable(*this, c.source, c.sink)) {
            throw DomainError("commodity " + std::to_string(k) + " has no directed path");
        }
    }
    if (budget_ && !(*budget_ > 0.0)) {
        throw DomainError("budget must be positive");
    }
}

int Instance::node_index(const std::string& id) const {
    auto it = node_by_id_.find(id);
    if (it == node_by_id_.end()) {
        throw BadNode("unknown node id: " + id);
    }
    return it->second;
}

int Instance::edge_index(const std::string& id) const {
    auto it = edge_by_id_.find(id);
    if (it == edge_by_id_.end()) {
        throw DomainError("unknown edge id: " + id);
    }
    return it->second;
}

int Instance::max_strict_degree() const {
    int deg = 0;
    for (const Edge& e : edges_) {
        if (e.latency.is_strict()) {
            deg = std::max(deg, e.latency.degree());
        }
    }
    return deg;
}

FlowAssignment FlowAssignment::zeros(int num_commodities, int num_edges) {
    FlowAssignment flow;
    flow.per_commodity.assign(static_cast<size_t>(num_commodities),
                              std::vector<double>(static_cast<size_t>(num_edges), 0.0));
    return flow;
}

std::vector<double> FlowAssignment::aggregate() const {
    if (per_commodity.empty()) {
        return {};
    }
    std::vector<double> agg(per_commodity.front().size(), 0.0);
    for (const auto& vk : per_commodity) {
        for (size_t e = 0; e < vk.size(); ++e) {
            agg[e] += vk[e];
        }
    }
    return agg;
}

std::vector<FlowViolation> validate_flow(const Instance& inst, const FlowAssignment& flow) {
    std::vector<FlowViolation> violations;
    if (static_cast<int>(flow.per_commodity.size()) != inst.num_commodities()) {
        violations.push_back({-1, -1, 0.0, "flow has wrong number of commodities"});
        return violations;
    }
    for (int k = 0; k < inst.num_commodities(); ++k) {
        const Commodity& com = inst.commodities()[static_cast<size_t>(k)];
        const auto& vk = flow.per_commodity[static_cast<size_t>(k)];
        if (static_cast<int>(vk.size()) != inst.num_edges()) {
            violations.push_back({k, -1, 0.0, "flow vector has wrong edge count"});
            continue;
        }
        double tol = 1e-8 * std::max(1.0, com.demand);
        for (int n = 0; n < inst.num_nodes(); ++n) {
            double net = 0.0;
            for (int e : inst.out_edges(n)) {
                net += vk[static_cast<size_t>(e)];
            }
            for (int e : inst.in_edges(n)) {
                net -= vk[static_cast<size_t>(e)];
            }
            double want = 0.0;
            if (n == com.source) {
                want = com.demand;
            } else if (n == com.sink) {
                want = -com.demand;
            }
            if (std::abs(net - want) > tol) {
                violations.push_back({k, n, net - want,
                                      "commodity " + std::to_string(k) + " imbalance at node " +
                                          inst.nodes()[static_cast<size_t>(n)]});
            }
        }
        for (size_t e = 0; e < vk.size(); ++e) {
            if (vk[e] < -tol) {
                violations.push_back({k, -1, vk[e],
                                      "commodity " + std::to_string(k) + " negative flow on edge " +
                                          inst.edges()[e].id});
            }
        }
    }
    return violations;
}

Cost routing_cost(const Instance& inst, const FlowAssignment& flow, const CapacityVector& caps) {
    if (!validate_flow(inst, flow).empty()) {
        throw FlowInfeasible("routing_cost called with an infeasible flow");
    }
    std::vector<double> agg = flow.aggregate();
    Cost cost;
    for (int i = 0; i < inst.num_edges(); ++i) {
        const Edge& e = inst.edges()[static_cast<size_t>(i)];
        double v = agg[static_cast<size_t>(i)];
        double z = caps[static_cast<size_t>(i)];
        if (v <= 0.0) {
            continue;
        }
        if (e.latency.is_strict()) {
            if (z <= 0.0) {
                return Cost::inf();
            }
            cost += e.latency.eval(v / z) * v;
        } else {
            cost += e.latency.eval(0.0) * v;  // constant latency, capacity irrelevant
        }
    }
    return cost;
}

double capacity_cost(const Instance& inst, const CapacityVector& caps) {
    double cost = 0.0;
    for (int i = 0; i < inst.num_edges(); ++i) {
        cost += caps[static_cast<size_t>(i)] * inst.edges()[static_cast<size_t>(i)].price;
    }
    return cost;
}

Cost total_cost(const Instance& inst, const FlowAssignment& flow, const CapacityVector& caps) {
    Cost c = routing_cost(inst, flow, caps);
    c += capacity_cost(inst, caps);
    return c;
}

}  // namespace cndp
