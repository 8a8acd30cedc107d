#include "cndp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "cndp/errors.hpp"
#include "cndp/relaxation.hpp"

namespace cndp {

namespace {

struct GridBest {
    double cost = std::numeric_limits<double>::infinity();
    long long index = -1;
    long long evaluated = 0;
};

}  // namespace

OracleResult oracle_search(const Instance& inst, const OracleOptions& opts) {
    if (opts.resolution < 16) {
        throw DomainError("oracle resolution must be at least 16");
    }
    std::vector<int> strict;
    for (int e = 0; e < inst.num_edges(); ++e) {
        if (inst.edges()[static_cast<size_t>(e)].latency.is_strict()) {
            strict.push_back(e);
        }
    }
    if (strict.size() > 4) {
        throw TooLarge("oracle search is limited to four strict edges, instance has " +
                       std::to_string(strict.size()));
    }

    // Upper end of the grid: twice the largest relaxed capacity. The
    // relaxation is a lower bound on the objective, so larger capacities
    // already cost more in construction alone than the relaxed optimum.
    RelaxationResult relax = solve_relaxation(inst);
    double z_hi = 0.0;
    for (double z : relax.caps) {
        z_hi = std::max(z_hi, z);
    }
    z_hi *= 2.0;

    const int res = opts.resolution;
    const long long per_edge = static_cast<long long>(res) + 1;  // {0} + res values
    long long total = 1;
    for (size_t i = 0; i < strict.size(); ++i) {
        total *= per_edge;
    }

    WardropOptions wopts = opts.wardrop;
    wopts.parallel = false;  // the grid is the parallel dimension

    auto caps_at = [&](long long index) {
        CapacityVector caps(static_cast<size_t>(inst.num_edges()), 0.0);
        long long rest = index;
        for (int e : strict) {
            long long step = rest % per_edge;
            rest /= per_edge;
            caps[static_cast<size_t>(e)] = z_hi * static_cast<double>(step) / res;
        }
        return caps;
    };

    auto evaluate = [&](long long index, GridBest& best) {
        CapacityVector caps = caps_at(index);
        WardropResult eq;
        try {
            eq = solve_wardrop(inst, caps, wopts);
        } catch (const DomainError&) {
            return;  // commodity cut off (or solve degenerate) at these capacities
        }
        Cost c = total_cost(inst, eq.flow, caps);
        if (!c.finite()) {
            return;
        }
        ++best.evaluated;
        if (c.value < best.cost || (c.value == best.cost && index < best.index)) {
            best.cost = c.value;
            best.index = index;
        }
    };

    GridBest best;
#if defined(_OPENMP)
    if (opts.parallel) {
        std::vector<GridBest> locals(static_cast<size_t>(omp_get_max_threads()));
#pragma omp parallel
        {
            GridBest& mine = locals[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 16)
            for (long long i = 0; i < total; ++i) {
                evaluate(i, mine);
            }
        }
        for (const GridBest& local : locals) {
            best.evaluated += local.evaluated;
            if (local.cost < best.cost || (local.cost == best.cost && local.index >= 0 &&
                                           (best.index < 0 || local.index < best.index))) {
                best.cost = local.cost;
                best.index = local.index;
            }
        }
    } else
#endif
    {
        for (long long i = 0; i < total; ++i) {
            evaluate(i, best);
        }
    }

    if (best.index < 0) {
        throw NumericalFailure("no grid point admits a feasible equilibrium");
    }

    OracleResult result;
    result.caps = caps_at(best.index);
    result.flow = solve_wardrop(inst, result.caps, wopts).flow;
    result.cost = best.cost;
    result.evaluated = best.evaluated;
    return result;
}

}  // namespace cndp
