#include "cndp/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cndp/errors.hpp"

namespace cndp {

namespace {

WeightedView all_usable(const Instance& inst, std::vector<double> weights) {
    std::vector<char> usable(static_cast<size_t>(inst.num_edges()), 1);
    return WeightedView::make(inst, std::move(weights), std::move(usable));
}

RelaxationResult finish_relaxation(const Instance& inst, const RelaxedWeights& rw,
                                   FlowAssignment flow) {
    RelaxationResult result;
    result.flow = std::move(flow);
    result.caps.assign(static_cast<size_t>(inst.num_edges()), 0.0);
    std::vector<double> agg = result.flow.aggregate();
    for (int i = 0; i < inst.num_edges(); ++i) {
        size_t e = static_cast<size_t>(i);
        const Edge& edge = inst.edges()[e];
        if (agg[e] <= 0.0) {
            continue;
        }
        if (edge.latency.is_strict()) {
            result.caps[e] = agg[e] / rw.ratio_u[e];
            result.routing_cost += edge.latency.eval(rw.ratio_u[e]) * agg[e];
            result.capacity_cost += edge.price * result.caps[e];
        } else {
            result.routing_cost += edge.latency.eval(0.0) * agg[e];
        }
    }
    result.cost = result.routing_cost + result.capacity_cost;
    return result;
}

}  // namespace

RelaxedWeights relaxed_weights(const Instance& inst) {
    RelaxedWeights rw;
    rw.weights.assign(static_cast<size_t>(inst.num_edges()), 0.0);
    rw.ratio_u.assign(static_cast<size_t>(inst.num_edges()), 0.0);
    for (int i = 0; i < inst.num_edges(); ++i) {
        size_t e = static_cast<size_t>(i);
        const Edge& edge = inst.edges()[e];
        if (edge.latency.is_strict()) {
            double u = edge.latency.solve_u(edge.price);
            rw.ratio_u[e] = u;
            rw.weights[e] = edge.latency.eval(u) + edge.price / u;
        } else {
            rw.weights[e] = edge.latency.eval(0.0);
        }
    }
    return rw;
}

RelaxationResult solve_relaxation(const Instance& inst) {
    RelaxedWeights rw = relaxed_weights(inst);
    WeightedView view = all_usable(inst, rw.weights);
    FlowAssignment flow = FlowAssignment::zeros(inst.num_commodities(), inst.num_edges());
    for (int k = 0; k < inst.num_commodities(); ++k) {
        const Commodity& com = inst.commodities()[static_cast<size_t>(k)];
        ShortestPathResult sp = shortest_path(view, com.source, com.sink);
        if (!sp.reachable) {
            throw NoFinitePath(k, "commodity " + std::to_string(k) + " is disconnected");
        }
        for (int e : sp.path) {
            flow.per_commodity[static_cast<size_t>(k)][static_cast<size_t>(e)] = com.demand;
        }
    }
    return finish_relaxation(inst, rw, std::move(flow));
}

RelaxationResult solve_single_sink(const Instance& inst) {
    if (inst.num_commodities() == 0) {
        throw WrongShape("single-sink solver needs at least one commodity");
    }
    int sink = inst.commodities().front().sink;
    for (const Commodity& com : inst.commodities()) {
        if (com.sink != sink) {
            throw WrongShape("single-sink solver called on a multi-sink instance");
        }
    }
    RelaxedWeights rw = relaxed_weights(inst);
    WeightedView view = all_usable(inst, rw.weights);
    ShortestPathTree tree = shortest_path_tree(view, sink);
    FlowAssignment flow = FlowAssignment::zeros(inst.num_commodities(), inst.num_edges());
    for (int k = 0; k < inst.num_commodities(); ++k) {
        const Commodity& com = inst.commodities()[static_cast<size_t>(k)];
        if (!tree.reached[static_cast<size_t>(com.source)]) {
            throw NoFinitePath(k, "commodity " + std::to_string(k) + " is disconnected");
        }
        int node = com.source;
        while (node != sink) {
            int e = tree.tree_edge[static_cast<size_t>(node)];
            flow.per_commodity[static_cast<size_t>(k)][static_cast<size_t>(e)] = com.demand;
            node = inst.edges()[static_cast<size_t>(e)].head;
        }
    }
    return finish_relaxation(inst, rw, std::move(flow));
}

namespace {

struct RhoEvaluation {
    FlowAssignment flow;
    CapacityVector caps;
    double spend = 0.0;
    double routing = 0.0;
    bool any_strict_used = false;
};

// For a fixed multiplier rho: per-edge ratio delta_e with S'(d) d^2 = rho l_e,
// Lagrangian weights S_e(delta_e) + rho l_e / delta_e, shortest-path routing.
RhoEvaluation evaluate_rho(const Instance& inst, double rho) {
    std::vector<double> weights(static_cast<size_t>(inst.num_edges()), 0.0);
    std::vector<double> delta(static_cast<size_t>(inst.num_edges()), 0.0);
    for (int i = 0; i < inst.num_edges(); ++i) {
        size_t e = static_cast<size_t>(i);
        const Edge& edge = inst.edges()[e];
        if (edge.latency.is_strict()) {
            double d = edge.latency.solve_u(rho * edge.price);
            delta[e] = d;
            weights[e] = edge.latency.eval(d) + rho * edge.price / d;
        } else {
            weights[e] = edge.latency.eval(0.0);
        }
    }
    WeightedView view = all_usable(inst, weights);
    RhoEvaluation out;
    out.flow = FlowAssignment::zeros(inst.num_commodities(), inst.num_edges());
    for (int k = 0; k < inst.num_commodities(); ++k) {
        const Commodity& com = inst.commodities()[static_cast<size_t>(k)];
        ShortestPathResult sp = shortest_path(view, com.source, com.sink);
        if (!sp.reachable) {
            throw NoFinitePath(k, "commodity " + std::to_string(k) + " is disconnected");
        }
        for (int e : sp.path) {
            out.flow.per_commodity[static_cast<size_t>(k)][static_cast<size_t>(e)] = com.demand;
        }
    }
    out.caps.assign(static_cast<size_t>(inst.num_edges()), 0.0);
    std::vector<double> agg = out.flow.aggregate();
    for (int i = 0; i < inst.num_edges(); ++i) {
        size_t e = static_cast<size_t>(i);
        const Edge& edge = inst.edges()[e];
        if (agg[e] <= 0.0) {
            continue;
        }
        if (edge.latency.is_strict()) {
            out.caps[e] = agg[e] / delta[e];
            out.spend += edge.price * out.caps[e];
            out.routing += edge.latency.eval(delta[e]) * agg[e];
            out.any_strict_used = true;
        } else {
            out.routing += edge.latency.eval(0.0) * agg[e];
        }
    }
    return out;
}

double recompute_routing(const Instance& inst, const FlowAssignment& flow,
                         const CapacityVector& caps) {
    Cost c = routing_cost(inst, flow, caps);
    if (!c.finite()) {
        throw NumericalFailure("budgeted relaxation produced an infinite routing cost");
    }
    return c.value;
}

}  // namespace

BudgetedRelaxationResult solve_budgeted_relaxation(const Instance& inst) {
    if (!inst.budget()) {
        throw DomainError("instance has no budget");
    }
    const double budget = *inst.budget();
    const double tol_budget = 1e-6;

    // Log grid over rho to bracket the budget-feasible region; spend is
    // non-increasing in rho between routing switches.
    constexpr int kGridPoints = 61;
    const double rho_min = 1e-6, rho_max = 1e6;
    double best_feasible_rho = -1.0;  // smallest rho found with spend <= budget
    double bracket_lo = -1.0;         // largest rho seen with spend > budget
    for (int i = 0; i < kGridPoints; ++i) {
        double rho = rho_min * std::pow(rho_max / rho_min, static_cast<double>(i) / (kGridPoints - 1));
        RhoEvaluation eval = evaluate_rho(inst, rho);
        if (eval.spend <= budget) {
            best_feasible_rho = rho;
            break;
        }
        bracket_lo = rho;
    }

    BudgetedRelaxationResult result;
    if (best_feasible_rho < 0.0) {
        // Even the cheapest grid point overshoots: report the best found
        // scaled down to the budget and flag it.
        RhoEvaluation eval = evaluate_rho(inst, rho_max);
        double scale = budget / eval.spend;
        for (double& z : eval.caps) {
            z *= scale;
        }
        result.flow = std::move(eval.flow);
        result.caps = std::move(eval.caps);
        result.spent_budget = budget;
        result.rho = rho_max;
        result.slack_warning = true;
        result.routing_cost = recompute_routing(inst, result.flow, result.caps);
        return result;
    }

    double rho = best_feasible_rho;
    if (bracket_lo > 0.0) {
        double lo = bracket_lo, hi = best_feasible_rho;
        for (int it = 0; it < 80; ++it) {
            double mid = std::sqrt(lo * hi);
            RhoEvaluation eval = evaluate_rho(inst, mid);
            if (eval.spend <= budget) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        rho = hi;
    }

    RhoEvaluation eval = evaluate_rho(inst, rho);
    result.rho = rho;
    result.slack_warning = false;
    // Spend may land strictly below the budget at a routing switch; scaling
    // all capacities up only lowers latencies and keeps the flow feasible.
    if (eval.any_strict_used && eval.spend > 0.0 &&
        eval.spend < budget * (1.0 - tol_budget)) {
        double scale = budget / eval.spend;
        for (double& z : eval.caps) {
            z *= scale;
        }
        eval.spend = budget;
    }
    result.flow = std::move(eval.flow);
    result.caps = std::move(eval.caps);
    result.spent_budget = eval.spend;
    result.routing_cost = recompute_routing(inst, result.flow, result.caps);
    return result;
}

}  // namespace cndp
