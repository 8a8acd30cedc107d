#include "cndp/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cndp/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cndp {

namespace {

struct GapInfo {
    double routing = 0.0;       // sum_e S_e(v_e/z_e) v_e
    double best_response = 0.0; // sum_k d_k dist_k under current latencies
    double relative() const {
        return (routing - best_response) / std::max(1.0, routing);
    }
};

// All-or-nothing assignment of every commodity under the given weights.
// Returns per-commodity target flows and fills `dists` with d_k * dist_k.
FlowAssignment all_or_nothing(const Instance& inst, const WeightedView& view, bool parallel,
                              std::vector<double>& dists) {
    int num_k = inst.num_commodities();
    FlowAssignment target = FlowAssignment::zeros(num_k, inst.num_edges());
    dists.assign(static_cast<size_t>(num_k), 0.0);
    std::vector<int> failed(static_cast<size_t>(num_k), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int k = 0; k < num_k; ++k) {
        const Commodity& com = inst.commodities()[static_cast<size_t>(k)];
        ShortestPathResult sp = shortest_path(view, com.source, com.sink);
        if (!sp.reachable) {
            failed[static_cast<size_t>(k)] = 1;
            continue;
        }
        for (int e : sp.path) {
            target.per_commodity[static_cast<size_t>(k)][static_cast<size_t>(e)] = com.demand;
        }
        dists[static_cast<size_t>(k)] = com.demand * sp.dist;
    }
    for (int k = 0; k < num_k; ++k) {
        if (failed[static_cast<size_t>(k)]) {
            throw NoFinitePath(k, "commodity " + std::to_string(k) +
                                      " is disconnected in the finite-latency subgraph");
        }
    }
    return target;
}

// Exact bisection line search for the step size minimizing the Beckmann
// potential along v + t * delta, t in [0, 1]. The restriction is convex,
// so the sign of phi'(t) brackets the minimizer.
double line_search(const Instance& inst, const CapacityVector& caps,
                   const std::vector<double>& v, const std::vector<double>& delta) {
    auto slope = [&](double t) {
        double acc = 0.0;
        for (int i = 0; i < inst.num_edges(); ++i) {
            size_t e = static_cast<size_t>(i);
            if (delta[e] == 0.0) {
                continue;
            }
            const Edge& edge = inst.edges()[e];
            double load = v[e] + t * delta[e];
            double lat;
            if (edge.latency.is_strict()) {
                lat = edge.latency.eval(std::max(load, 0.0) / caps[e]);
            } else {
                lat = edge.latency.eval(0.0);
            }
            acc += lat * delta[e];
        }
        return acc;
    };
    if (slope(0.0) >= 0.0) {
        return 0.0;
    }
    if (slope(1.0) <= 0.0) {
        return 1.0;
    }
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (slope(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

WeightedView latency_view(const Instance& inst, const CapacityVector& caps,
                          const std::vector<double>& aggregate, bool marginal) {
    std::vector<double> weights(static_cast<size_t>(inst.num_edges()), 0.0);
    std::vector<char> usable(static_cast<size_t>(inst.num_edges()), 1);
    for (int i = 0; i < inst.num_edges(); ++i) {
        size_t e = static_cast<size_t>(i);
        const Edge& edge = inst.edges()[e];
        if (edge.latency.is_strict()) {
            if (!(caps[e] > 0.0)) {
                usable[e] = 0;
                continue;
            }
            double x = aggregate[e] / caps[e];
            weights[e] = marginal ? edge.latency.marginal(x) : edge.latency.eval(x);
        } else {
            weights[e] = edge.latency.eval(0.0);
        }
    }
    return WeightedView::make(inst, std::move(weights), std::move(usable));
}

double beckmann_potential(const Instance& inst, const CapacityVector& caps,
                          const std::vector<double>& aggregate) {
    double acc = 0.0;
    for (int i = 0; i < inst.num_edges(); ++i) {
        size_t e = static_cast<size_t>(i);
        acc += inst.edges()[e].latency.beckmann_term(aggregate[e], caps[e]);
    }
    return acc;
}

WardropResult solve_wardrop(const Instance& inst, const CapacityVector& caps,
                            const WardropOptions& opts) {
    int num_edges = inst.num_edges();

    // Starting point: all-or-nothing at free-flow latencies.
    std::vector<double> zero(static_cast<size_t>(num_edges), 0.0);
    WeightedView free_flow = latency_view(inst, caps, zero);
    std::vector<double> dists;
    WardropResult result;
    result.flow = all_or_nothing(inst, free_flow, opts.parallel, dists);

    FlowAssignment prev_target = result.flow;  // conjugate memory
    bool have_prev_target = false;

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        result.iterations = iter + 1;
        std::vector<double> agg = result.flow.aggregate();
        if (opts.record_potential) {
            result.potential_trace.push_back(beckmann_potential(inst, caps, agg));
        }
        WeightedView view = latency_view(inst, caps, agg);
        FlowAssignment fw_target = all_or_nothing(inst, view, opts.parallel, dists);

        GapInfo gap;
        for (int i = 0; i < num_edges; ++i) {
            size_t e = static_cast<size_t>(i);
            if (view.usable[e]) {
                gap.routing += view.weights[e] * agg[e];
            }
        }
        for (double d : dists) {
            gap.best_response += d;
        }
        result.gap = gap.relative();
        if (result.gap <= opts.tol_gap) {
            result.converged = true;
            return result;
        }

        // Conjugate direction: blend the new extreme point with the
        // previous target, weighted for conjugacy under the diagonal
        // Hessian of the potential. Falls back to the plain FW direction
        // whenever the blend would not be a descent direction.
        FlowAssignment target = fw_target;
        if (opts.conjugate && have_prev_target) {
            std::vector<double> fw_agg = fw_target.aggregate();
            std::vector<double> prev_agg = prev_target.aggregate();
            double numer = 0.0, denom = 0.0;
            for (int i = 0; i < num_edges; ++i) {
                size_t e = static_cast<size_t>(i);
                const Edge& edge = inst.edges()[e];
                if (!edge.latency.is_strict() || !view.usable[e]) {
                    continue;
                }
                double h = edge.latency.deriv(agg[e] / caps[e]) / caps[e];
                double d_prev = prev_agg[e] - agg[e];
                double d_fw = fw_agg[e] - agg[e];
                numer += h * d_prev * d_fw;
                denom += h * d_prev * (d_fw - d_prev);
            }
            double alpha = 0.0;
            if (std::abs(denom) > 1e-30) {
                alpha = std::clamp(numer / denom, 0.0, 0.999);
            }
            if (alpha > 0.0) {
                double descent = 0.0;
                for (int i = 0; i < num_edges; ++i) {
                    size_t e = static_cast<size_t>(i);
                    if (!view.usable[e]) {
                        continue;
                    }
                    double blended =
                        alpha * prev_agg[e] + (1.0 - alpha) * fw_agg[e] - agg[e];
                    descent += view.weights[e] * blended;
                }
                if (descent < 0.0) {
                    for (int k = 0; k < inst.num_commodities(); ++k) {
                        auto& tk = target.per_commodity[static_cast<size_t>(k)];
                        const auto& pk = prev_target.per_commodity[static_cast<size_t>(k)];
                        const auto& fk = fw_target.per_commodity[static_cast<size_t>(k)];
                        for (int i = 0; i < num_edges; ++i) {
                            size_t e = static_cast<size_t>(i);
                            tk[e] = alpha * pk[e] + (1.0 - alpha) * fk[e];
                        }
                    }
                }
            }
        }

        std::vector<double> target_agg = target.aggregate();
        std::vector<double> delta(static_cast<size_t>(num_edges), 0.0);
        for (int i = 0; i < num_edges; ++i) {
            size_t e = static_cast<size_t>(i);
            delta[e] = target_agg[e] - agg[e];
        }
        double t = line_search(inst, caps, agg, delta);
        if (t > 0.0) {
            for (int k = 0; k < inst.num_commodities(); ++k) {
                auto& vk = result.flow.per_commodity[static_cast<size_t>(k)];
                const auto& tk = target.per_commodity[static_cast<size_t>(k)];
                for (int i = 0; i < num_edges; ++i) {
                    size_t e = static_cast<size_t>(i);
                    vk[e] += t * (tk[e] - vk[e]);
                }
            }
        }
        prev_target = std::move(target);
        have_prev_target = true;
    }
    result.converged = false;
    return result;
}

namespace {

Cost equilibrium_gap(const Instance& inst, const CapacityVector& caps, const FlowAssignment& flow,
                     bool marginal) {
    auto violations = validate_flow(inst, flow);
    if (!violations.empty()) {
        throw FlowInfeasible(violations.front().message);
    }
    std::vector<double> agg = flow.aggregate();
    for (int i = 0; i < inst.num_edges(); ++i) {
        size_t e = static_cast<size_t>(i);
        if (inst.edges()[e].latency.is_strict() && !(caps[e] > 0.0) && agg[e] > 1e-12) {
            return Cost::inf();
        }
    }
    WeightedView view = latency_view(inst, caps, agg, marginal);
    double routing = 0.0;
    for (int i = 0; i < inst.num_edges(); ++i) {
        size_t e = static_cast<size_t>(i);
        if (view.usable[e]) {
            routing += view.weights[e] * agg[e];
        }
    }
    double best_response = 0.0;
    for (int k = 0; k < inst.num_commodities(); ++k) {
        const Commodity& com = inst.commodities()[static_cast<size_t>(k)];
        ShortestPathResult sp = shortest_path(view, com.source, com.sink);
        if (!sp.reachable) {
            return Cost::inf();
        }
        best_response += com.demand * sp.dist;
    }
    return Cost{(routing - best_response) / std::max(1.0, routing), false};
}

}  // namespace

Cost verify_wardrop(const Instance& inst, const CapacityVector& caps, const FlowAssignment& flow) {
    return equilibrium_gap(inst, caps, flow, /*marginal=*/false);
}

Cost marginal_equilibrium_check(const Instance& inst, const CapacityVector& caps,
                                const FlowAssignment& flow) {
    return equilibrium_gap(inst, caps, flow, /*marginal=*/true);
}

}  // namespace cndp
