#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cndp/approx.hpp"
#include "cndp/equilibrium.hpp"
#include "cndp/random_instances.hpp"
#include "cndp/relaxation.hpp"

using namespace cndp;

namespace {

Instance one_edge(std::optional<double> budget = std::nullopt) {
    return Instance({"s", "t"}, {{"e0", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0}},
                    {{0, 1, 1.0}}, budget);
}

}  // namespace

TEST_CASE("single edge: u=1, w=2, cost 2") {
    auto relax = solve_relaxation(one_edge());
    CHECK(relax.cost == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(relax.caps[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(relax.flow.per_commodity[0][0] == doctest::Approx(1.0));
    CHECK(relax.routing_cost == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(relax.capacity_cost == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(relax.p() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("parallel edges: all demand on the lighter relaxed weight") {
    // (S=x, l=1) has w=2; (S=2x, l=2) has u^2*2=2 -> u=1, w=2+2=4
    Instance inst({"s", "t"},
                  {{"a", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0},
                   {"b", 0, 1, LatencyFunction::affine(0.0, 2.0), 2.0}},
                  {{0, 1, 1.0}});
    auto rw = relaxed_weights(inst);
    CHECK(rw.weights[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rw.weights[1] == doctest::Approx(4.0).epsilon(1e-9));
    auto relax = solve_relaxation(inst);
    CHECK(relax.flow.per_commodity[0][0] == doctest::Approx(1.0));
    CHECK(relax.flow.per_commodity[0][1] == 0.0);
    CHECK(relax.cost == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("per-edge optimality of the relaxed ratio") {
    std::mt19937_64 seeds(99);
    for (int trial = 0; trial < 20; ++trial) {
        RandomInstanceOptions opts;
        opts.num_commodities = 3;
        opts.extra_edges = 8;
        opts.max_degree = 4;
        Instance inst = random_instance(seeds(), opts);
        auto relax = solve_relaxation(inst);
        auto agg = relax.flow.aggregate();
        double total = 0.0;
        for (int e = 0; e < inst.num_edges(); ++e) {
            const Edge& edge = inst.edges()[static_cast<size_t>(e)];
            size_t i = static_cast<size_t>(e);
            if (agg[i] <= 0.0 || !edge.latency.is_strict()) {
                continue;
            }
            double ratio = agg[i] / relax.caps[i];
            // l_e = (v/z)^2 S'(v/z) at the relaxed optimum
            CHECK(std::abs(ratio * ratio * edge.latency.deriv(ratio) - edge.price) <=
                  1e-8 * std::max(1.0, edge.price));
            total += edge.latency.eval(ratio) * agg[i] + edge.price * relax.caps[i];
        }
        for (int e = 0; e < inst.num_edges(); ++e) {
            size_t i = static_cast<size_t>(e);
            if (agg[i] > 0.0 && !inst.edges()[i].latency.is_strict()) {
                total += inst.edges()[i].latency.eval(0.0) * agg[i];
            }
        }
        CHECK(relax.cost == doctest::Approx(total).epsilon(1e-9));
    }
}

TEST_CASE("relaxation lower-bounds every produced feasible solution") {
    std::mt19937_64 seeds(1234);
    for (int trial = 0; trial < 15; ++trial) {
        RandomInstanceOptions opts;
        opts.num_commodities = 3;
        opts.extra_edges = 6;
        opts.max_degree = trial % 2 == 0 ? 1 : 4;
        Instance inst = random_instance(seeds(), opts);
        auto relax = solve_relaxation(inst);
        for (auto solver : {bring_to_equilibrium, scale_uniformly, best_of_two}) {
            auto result = solver(inst, {});
            Cost total = total_cost(inst, result.flow, result.caps);
            REQUIRE(total.finite());
            CHECK(total.value >= relax.cost * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("single sink: shared edge aggregates demands") {
    // two commodities into t over one shared strict edge
    Instance inst({"a", "b", "t"},
                  {{"at", 0, 2, LatencyFunction::affine(0.0, 1.0), 1.0},
                   {"ba", 1, 0, LatencyFunction::affine(0.0, 1.0), 1.0}},
                  {{0, 2, 1.0}, {1, 2, 1.0}});
    auto single = solve_single_sink(inst);
    auto agg = single.flow.aggregate();
    CHECK(agg[0] == doctest::Approx(2.0));
    CHECK(single.caps[0] == doctest::Approx(2.0).epsilon(1e-9));

    auto relax = solve_relaxation(inst);
    CHECK(single.cost == doctest::Approx(relax.cost).epsilon(1e-12));
}

TEST_CASE("single sink equals relaxation and is playable") {
    std::mt19937_64 seeds(777);
    for (int trial = 0; trial < 20; ++trial) {
        RandomInstanceOptions opts;
        opts.num_commodities = 3;
        opts.extra_edges = 5;
        opts.single_sink = true;
        Instance inst = random_instance(seeds(), opts);
        auto single = solve_single_sink(inst);
        auto relax = solve_relaxation(inst);
        CHECK(single.cost == doctest::Approx(relax.cost).epsilon(1e-9));
        CHECK(validate_flow(inst, single.flow).empty());
        Cost gap = verify_wardrop(inst, single.caps, single.flow);
        REQUIRE(gap.finite());
        CHECK(gap.value <= 1e-8);
    }

    // single commodity: identical to plain relaxation
    auto inst = one_edge();
    auto single = solve_single_sink(inst);
    auto relax = solve_relaxation(inst);
    CHECK(single.cost == doctest::Approx(relax.cost));
    CHECK(single.caps[0] == doctest::Approx(relax.caps[0]));

    // multi-sink rejected
    Instance multi({"s", "t1", "t2"},
                   {{"e1", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0},
                    {"e2", 0, 2, LatencyFunction::affine(0.0, 1.0), 1.0}},
                   {{0, 1, 1.0}, {0, 2, 1.0}});
    CHECK_THROWS_AS(solve_single_sink(multi), WrongShape);
}

TEST_CASE("budgeted relaxation on a single edge") {
    {
        auto result = solve_budgeted_relaxation(one_edge(1.0));
        CHECK(result.caps[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(result.routing_cost == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(result.spent_budget <= 1.0 * (1.0 + 1e-6));
        CHECK_FALSE(result.slack_warning);
    }
    {
        auto result = solve_budgeted_relaxation(one_edge(2.0));
        CHECK(result.caps[0] == doctest::Approx(2.0).epsilon(1e-6));
        CHECK(result.routing_cost == doctest::Approx(0.5).epsilon(1e-6));
    }
    CHECK_THROWS_AS(solve_budgeted_relaxation(one_edge()), DomainError);  // no budget
}

TEST_CASE("budgeted relaxation: symmetry and budget sweep") {
    // two disjoint single-edge commodities, B = 2 -> z = (1, 1)
    Instance twin({"s1", "t1", "s2", "t2"},
                  {{"e1", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0},
                   {"e2", 2, 3, LatencyFunction::affine(0.0, 1.0), 1.0}},
                  {{0, 1, 1.0}, {2, 3, 1.0}}, 2.0);
    auto result = solve_budgeted_relaxation(twin);
    CHECK(result.caps[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(result.caps[1] == doctest::Approx(1.0).epsilon(1e-6));

    // routing cost is non-increasing in the budget
    std::mt19937_64 seeds(31);
    RandomInstanceOptions opts;
    opts.num_commodities = 2;
    opts.extra_edges = 6;
    Instance base = random_instance(seeds(), opts);
    double prev = std::numeric_limits<double>::infinity();
    for (double budget : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        Instance inst(base.nodes(), base.edges(), base.commodities(), budget);
        auto r = solve_budgeted_relaxation(inst);
        CHECK(r.spent_budget <= budget * (1.0 + 1e-6));
        CHECK(r.routing_cost <= prev * (1.0 + 1e-6));
        prev = r.routing_cost;
    }
}
