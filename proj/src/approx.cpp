#include "cndp/approx.hpp"

#include <cmath>
#include <string>

#include "cndp/errors.hpp"

namespace cndp {

namespace {

FunctionClass pick_class(const Instance& inst, const ApproxParams& params) {
    if (params.function_class) {
        FunctionClass c = *params.function_class;
        if (c.tag == FunctionClass::Tag::polynomial_degree && inst.max_strict_degree() > c.degree) {
            throw DomainError("instance contains a polynomial of degree above the declared class");
        }
        return c;
    }
    return infer_class(inst);
}

Certificate make_certificate(const Instance& inst, const FlowAssignment& flow,
                             const CapacityVector& caps, double relaxation_cost,
                             const std::string& algorithm, double guarantee, double p) {
    Certificate cert;
    Cost cr = routing_cost(inst, flow, caps);
    if (!cr.finite()) {
        throw NumericalFailure(algorithm + " produced an infinite routing cost");
    }
    cert.routing_cost = cr.value;
    cert.capacity_cost = capacity_cost(inst, caps);
    cert.total = cert.routing_cost + cert.capacity_cost;
    cert.relaxation_cost = relaxation_cost;
    cert.ratio = relaxation_cost > 0.0 ? cert.total / relaxation_cost : 1.0;
    cert.guarantee = guarantee;
    cert.algorithm = algorithm;
    cert.p = p;
    Cost gap = verify_wardrop(inst, caps, flow);
    cert.equilibrium_gap = gap.finite() ? gap.value : std::numeric_limits<double>::infinity();
    return cert;
}

ApproxResult zero_instance_result(const Instance& inst, const std::string& algorithm,
                                  const RelaxationResult& relax) {
    // Degenerate all-zero relaxation: the zero-cost relaxed solution is
    // optimal as is.
    ApproxResult result;
    result.flow = relax.flow;
    result.caps = relax.caps;
    result.certificate =
        make_certificate(inst, result.flow, result.caps, relax.cost, algorithm, 1.0, 1.0);
    return result;
}

ApproxResult bte_from_relaxation(const Instance& inst, const RelaxationResult& relax,
                                 const FunctionClass& cls) {
    ApproxResult result;
    result.flow = relax.flow;
    result.caps.assign(static_cast<size_t>(inst.num_edges()), 0.0);
    std::vector<double> agg = relax.flow.aggregate();
    for (int i = 0; i < inst.num_edges(); ++i) {
        size_t e = static_cast<size_t>(i);
        const Edge& edge = inst.edges()[e];
        if (!edge.latency.is_strict()) {
            continue;
        }
        double z_star = relax.caps[e];
        if (z_star <= 0.0) {
            continue;  // delta = 0, gamma = 1, capacity stays at zero
        }
        double delta = agg[e] / z_star;
        double gamma = edge.latency.solve_gamma(delta);
        result.caps[e] = gamma * z_star;
    }
    double p = relax.p();
    // The per-p refinement 1 + gamma(1-p) sharpens the class bound 1 + mu.
    double guarantee = std::min(1.0 + cls.mu, 1.0 + cls.gamma * (1.0 - p));
    result.certificate = make_certificate(inst, result.flow, result.caps, relax.cost,
                                          "bring_to_equilibrium", guarantee, p);
    return result;
}

ApproxResult su_from_relaxation(const Instance& inst, const RelaxationResult& relax,
                                const FunctionClass& cls, const ApproxParams& params) {
    double p = relax.p();
    ApproxResult result;
    if (p >= 1.0 - 1e-12) {
        // Pure routing cost (all-constant latencies on the used paths):
        // scaling is a no-op, the relaxed solution is already playable.
        result.flow = relax.flow;
        result.caps = relax.caps;
        result.certificate = make_certificate(inst, result.flow, result.caps, relax.cost,
                                              "scale_uniformly", 1.0, p);
        result.certificate.lambda = 1.0;
        return result;
    }
    double lambda = cls.mu + std::sqrt(cls.mu * p / (1.0 - p));
    result.caps = relax.caps;
    for (double& z : result.caps) {
        z *= lambda;
    }
    WardropResult eq = solve_wardrop(inst, result.caps, params.wardrop);
    result.flow = std::move(eq.flow);
    double root = std::sqrt(p) + std::sqrt(cls.mu * (1.0 - p));
    double guarantee = std::min(root * root, 1.0 + cls.mu);
    result.certificate = make_certificate(inst, result.flow, result.caps, relax.cost,
                                          "scale_uniformly", guarantee, p);
    result.certificate.lambda = lambda;
    result.certificate.low_p_flag = p < 0.01;
    return result;
}

}  // namespace

FunctionClass infer_class(const Instance& inst) {
    return FunctionClass::polynomial(inst.max_strict_degree());
}

ApproxResult bring_to_equilibrium(const Instance& inst, const ApproxParams& params) {
    FunctionClass cls = pick_class(inst, params);
    RelaxationResult relax = solve_relaxation(inst);
    if (relax.cost <= 0.0) {
        return zero_instance_result(inst, "bring_to_equilibrium", relax);
    }
    return bte_from_relaxation(inst, relax, cls);
}

ApproxResult scale_uniformly(const Instance& inst, const ApproxParams& params) {
    FunctionClass cls = pick_class(inst, params);
    RelaxationResult relax = solve_relaxation(inst);
    if (relax.cost <= 0.0) {
        return zero_instance_result(inst, "scale_uniformly", relax);
    }
    return su_from_relaxation(inst, relax, cls, params);
}

ApproxResult best_of_two(const Instance& inst, const ApproxParams& params) {
    FunctionClass cls = pick_class(inst, params);
    RelaxationResult relax = solve_relaxation(inst);
    if (relax.cost <= 0.0) {
        return zero_instance_result(inst, "best_of_two", relax);
    }
    double p = relax.p();
    double p_star = cls.p_star();
    double guarantee = cls.guarantee_best_of_two();

    ApproxResult chosen;
    if (params.dispatch_only) {
        chosen = (p <= p_star) ? su_from_relaxation(inst, relax, cls, params)
                               : bte_from_relaxation(inst, relax, cls);
    } else {
        ApproxResult bte = bte_from_relaxation(inst, relax, cls);
        ApproxResult su = su_from_relaxation(inst, relax, cls, params);
        chosen = (su.certificate.total <= bte.certificate.total) ? std::move(su) : std::move(bte);
    }
    chosen.certificate.algorithm = "best_of_two[" + chosen.certificate.algorithm + "]";
    chosen.certificate.guarantee = guarantee;
    chosen.certificate.p_star = p_star;
    return chosen;
}

ApproxResult solve_budgeted(const Instance& inst, const ApproxParams& params) {
    FunctionClass cls = pick_class(inst, params);
    BudgetedRelaxationResult relax = solve_budgeted_relaxation(inst);
    ApproxResult result;
    result.caps = relax.caps;
    WardropResult eq = solve_wardrop(inst, result.caps, params.wardrop);
    result.flow = std::move(eq.flow);

    Certificate cert;
    Cost cr = routing_cost(inst, result.flow, result.caps);
    if (!cr.finite()) {
        throw NumericalFailure("budgeted equilibrium has infinite routing cost");
    }
    cert.routing_cost = cr.value;
    cert.capacity_cost = capacity_cost(inst, result.caps);
    cert.total = cert.routing_cost + cert.capacity_cost;
    cert.relaxation_cost = relax.routing_cost;
    cert.ratio = relax.routing_cost > 0.0 ? cert.routing_cost / relax.routing_cost : 1.0;
    cert.guarantee = cls.mu < 1.0 ? 1.0 / (1.0 - cls.mu) : std::numeric_limits<double>::infinity();
    cert.algorithm = "budgeted";
    cert.p = 0.0;
    cert.slack_warning = relax.slack_warning;
    Cost gap = verify_wardrop(inst, result.caps, result.flow);
    cert.equilibrium_gap = gap.finite() ? gap.value : std::numeric_limits<double>::infinity();
    result.certificate = cert;
    return result;
}

}  // namespace cndp
