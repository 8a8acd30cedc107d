#pragma once

#include <optional>

#include "cndp/equilibrium.hpp"
#include "cndp/model.hpp"
#include "cndp/relaxation.hpp"

namespace cndp {

struct ApproxParams {
    /// Class of allowable latencies; inferred from the instance (max
    /// polynomial degree) when not set explicitly.
    std::optional<FunctionClass> function_class;
    WardropOptions wardrop;
    /// Best-of-two: run both algorithms and keep the cheaper (default), or
    /// only the one selected by the p <= p* dispatch rule.
    bool dispatch_only = false;
};

struct ApproxResult {
    FlowAssignment flow;
    CapacityVector caps;
    Certificate certificate;
};

FunctionClass infer_class(const Instance& inst);

/// Reduce each capacity of the relaxed optimum individually (z_e = gamma_e
/// z*_e) so the relaxed flow becomes a Wardrop equilibrium. Guarantee 1 + mu.
ApproxResult bring_to_equilibrium(const Instance& inst, const ApproxParams& params = {});

/// Scale all relaxed capacities uniformly by lambda = mu + sqrt(mu p/(1-p))
/// and play the induced equilibrium. Guarantee (sqrt(p) + sqrt(mu(1-p)))^2.
ApproxResult scale_uniformly(const Instance& inst, const ApproxParams& params = {});

/// Better of the two algorithms; guarantee
/// (gamma+mu+1)^2 / ((gamma+mu+1)^2 - 4 mu gamma).
ApproxResult best_of_two(const Instance& inst, const ApproxParams& params = {});

/// Budgeted variant: relaxed capacities under the budget plus the induced
/// equilibrium. Certificate ratio compares routing costs; guarantee 1/(1-mu).
ApproxResult solve_budgeted(const Instance& inst, const ApproxParams& params = {});

}  // namespace cndp
