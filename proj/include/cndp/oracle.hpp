#pragma once

#include "cndp/equilibrium.hpp"
#include "cndp/model.hpp"

namespace cndp {

struct OracleOptions {
    /// Grid points per strict edge, on top of the zero point. At least 16.
    int resolution = 64;
    bool parallel = true;
    WardropOptions wardrop;  // `parallel` inside is forced off on the grid
};

struct OracleResult {
    CapacityVector caps;
    FlowAssignment flow;  // equilibrium flow at the best capacities
    double cost = 0.0;
    long long evaluated = 0;  // grid points with a feasible equilibrium
};

/// Exhaustive search over a capacity grid, solving the induced equilibrium
/// at every point and keeping the cheapest total. Each strict edge ranges
/// over {0} and `resolution` equispaced values up to twice the largest
/// relaxed capacity. Throws TooLarge beyond four strict edges.
OracleResult oracle_search(const Instance& inst, const OracleOptions& opts = {});

}  // namespace cndp
