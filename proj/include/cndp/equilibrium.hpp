#pragma once

#include <vector>

#include "cndp/model.hpp"
#include "cndp/paths.hpp"

namespace cndp {

struct WardropOptions {
    double tol_gap = 1e-8;  // relative equilibrium gap at termination
    int max_iters = 100000;
    /// Conjugate direction acceleration on top of the plain Frank-Wolfe
    /// step; both use only shortest-path directions and the exact line
    /// search, the conjugate variant just reaches tight gaps in far fewer
    /// iterations.
    bool conjugate = true;
    /// Evaluate per-commodity shortest paths with OpenMP. The serial path
    /// is kept as a reference; results are identical.
    bool parallel = true;
    /// Record the Beckmann potential per iteration (for monotonicity checks).
    bool record_potential = false;
};

struct WardropResult {
    FlowAssignment flow;
    double gap = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> potential_trace;  // filled when record_potential
};

/// Latency weights S_e(v_e/z_e) for the current loads; strict edges with
/// zero capacity are unusable. With `marginal` set, uses S*_e instead.
WeightedView latency_view(const Instance& inst, const CapacityVector& caps,
                          const std::vector<double>& aggregate, bool marginal = false);

/// Beckmann potential sum_e integral_0^{v_e} S_e(t/z_e) dt.
double beckmann_potential(const Instance& inst, const CapacityVector& caps,
                          const std::vector<double>& aggregate);

/// Wardrop equilibrium for fixed capacities by Frank-Wolfe descent on the
/// Beckmann potential. Throws NoFinitePath if a commodity is disconnected
/// in the finite-latency subgraph; a non-converged result carries the best
/// iterate and its gap.
WardropResult solve_wardrop(const Instance& inst, const CapacityVector& caps,
                            const WardropOptions& opts = {});

/// Relative equilibrium gap of the variational inequality:
/// [sum_e S_e(v_e/z_e) v_e - sum_k d_k dist_k] / max(1, sum_e S_e(v_e/z_e) v_e).
/// Infinite when the routing cost is infinite.
Cost verify_wardrop(const Instance& inst, const CapacityVector& caps, const FlowAssignment& flow);

/// Same gap with latencies replaced by marginal costs S*_e; zero iff the
/// flow is system-optimal for the given capacities.
Cost marginal_equilibrium_check(const Instance& inst, const CapacityVector& caps,
                                const FlowAssignment& flow);

}  // namespace cndp
