#pragma once

#include <cstdint>
#include <random>

#include "cndp/model.hpp"

namespace cndp {

struct RandomInstanceOptions {
    int num_commodities = 3;  // 1..4
    int extra_edges = 8;      // random edges beyond the connecting paths
    int max_degree = 4;       // strict polynomial degrees drawn from 1..max_degree
    double constant_edge_share = 0.2;
    bool single_sink = false;  // strict edges only, common sink
    int min_path_hops = 2;     // length range of the guaranteed per-commodity path
    int max_path_hops = 3;
};

/// Seeded random instance: one guaranteed path per commodity plus extra
/// edges, so every commodity is connected by construction. Stays small
/// (at most ~20 edges with the defaults).
Instance random_instance(std::uint64_t seed, const RandomInstanceOptions& opts = {});

/// Same instance with a budget attached, as `fraction` of the capacity cost
/// of the unbudgeted relaxation.
Instance with_budget_fraction(const Instance& inst, double fraction);

}  // namespace cndp
