#pragma once

#include <vector>

#include "cndp/model.hpp"
#include "cndp/paths.hpp"

namespace cndp {

struct RelaxationResult {
    FlowAssignment flow;
    CapacityVector caps;
    double cost = 0.0;          // optimal value of the relaxed problem
    double routing_cost = 0.0;  // C^R split of that value
    double capacity_cost = 0.0; // C^Z split
    double p() const { return cost > 0.0 ? routing_cost / cost : 1.0; }
};

/// Per-edge relaxed weights w_e = S_e(u_e) + l_e / u_e with u_e the root of
/// u^2 S'_e(u) = l_e; constant edges carry weight S(0). Also returns u_e
/// (0 for constant edges).
struct RelaxedWeights {
    std::vector<double> weights;
    std::vector<double> ratio_u;  // optimal v/z per strict edge
};
RelaxedWeights relaxed_weights(const Instance& inst);

/// Capacity-relaxed problem: one shortest path per commodity under the
/// relaxed weights, all demand on it, capacities z_e = v_e / u_e.
RelaxationResult solve_relaxation(const Instance& inst);

/// Exact solve for instances where all commodities share a single sink:
/// shortest path tree into the sink under the relaxed weights, demands
/// aggregated down the tree. The result is feasible for the unrelaxed
/// problem and costs exactly the relaxation optimum.
RelaxationResult solve_single_sink(const Instance& inst);

struct BudgetedRelaxationResult {
    FlowAssignment flow;
    CapacityVector caps;
    double routing_cost = 0.0;
    double spent_budget = 0.0;
    double rho = 0.0;  // Lagrange multiplier of the budget constraint
    bool slack_warning = false;
};

/// Budget-constrained relaxation: minimize the routing cost over flows and
/// capacities with sum_e l_e z_e <= B, by bisection on the multiplier rho
/// of the budget constraint (per-edge ratio delta solving S'(d) d^2 = rho l_e).
BudgetedRelaxationResult solve_budgeted_relaxation(const Instance& inst);

}  // namespace cndp
