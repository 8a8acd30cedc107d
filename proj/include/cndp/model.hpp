#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cndp/latency.hpp"

namespace cndp {

/// Non-negative cost that may be infinite. z_e = 0 on a strict edge is a
/// legitimate state, so infinity is an explicit variant rather than a
/// sentinel float.
struct Cost {
    double value = 0.0;
    bool infinite = false;

    static Cost inf() { return Cost{0.0, true}; }
    Cost& operator+=(const Cost& other) {
        infinite = infinite || other.infinite;
        value += other.value;
        return *this;
    }
    Cost& operator+=(double v) {
        value += v;
        return *this;
    }
    bool finite() const { return !infinite; }
};

struct Edge {
    std::string id;
    int tail = -1;
    int head = -1;
    LatencyFunction latency;
    double price = 0.0;  // per-unit construction cost l_e
};

struct Commodity {
    int source = -1;
    int sink = -1;
    double demand = 0.0;
};

class Instance {
public:
    Instance(std::vector<std::string> nodes, std::vector<Edge> edges,
             std::vector<Commodity> commodities, std::optional<double> budget = std::nullopt);

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Commodity>& commodities() const { return commodities_; }
    const std::optional<double>& budget() const { return budget_; }

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_commodities() const { return static_cast<int>(commodities_.size()); }

    int node_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
    const std::vector<int>& out_edges(int node) const { return out_edges_[static_cast<size_t>(node)]; }
    const std::vector<int>& in_edges(int node) const { return in_edges_[static_cast<size_t>(node)]; }

    /// Largest polynomial degree among strict edges (0 if none).
    int max_strict_degree() const;

private:
    std::vector<std::string> nodes_;
    std::vector<Edge> edges_;
    std::vector<Commodity> commodities_;
    std::optional<double> budget_;
    std::unordered_map<std::string, int> node_by_id_;
    std::unordered_map<std::string, int> edge_by_id_;
    std::vector<std::vector<int>> out_edges_;
    std::vector<std::vector<int>> in_edges_;
};

using CapacityVector = std::vector<double>;  // indexed like Instance::edges()

struct FlowAssignment {
    /// per_commodity[k][e] = flow of commodity k on edge e.
    std::vector<std::vector<double>> per_commodity;

    static FlowAssignment zeros(int num_commodities, int num_edges);
    std::vector<double> aggregate() const;
};

struct FlowViolation {
    int commodity;
    int node;
    double imbalance;
    std::string message;
};

/// Conservation and demand checks; empty result means feasible.
/// Tolerance scales with the commodity demand, tol = 1e-8 * max(1, d_k).
std::vector<FlowViolation> validate_flow(const Instance& inst, const FlowAssignment& flow);

Cost routing_cost(const Instance& inst, const FlowAssignment& flow, const CapacityVector& caps);
double capacity_cost(const Instance& inst, const CapacityVector& caps);
Cost total_cost(const Instance& inst, const FlowAssignment& flow, const CapacityVector& caps);

struct Certificate {
    double relaxation_cost = 0.0;
    double routing_cost = 0.0;   // C^R of the returned solution
    double capacity_cost = 0.0;  // C^Z of the returned solution
    double total = 0.0;
    double ratio = 1.0;  // total / relaxation_cost
    double guarantee = 1.0;
    std::string algorithm;
    double p = 0.0;  // routing fraction of the relaxation
    double equilibrium_gap = 0.0;
    bool low_p_flag = false;      // p < 0.01, see ScaleUniformly
    bool slack_warning = false;   // budgeted relaxation could not meet the budget
    std::optional<double> lambda;
    std::optional<double> p_star;
};

}  // namespace cndp
