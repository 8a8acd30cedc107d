#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cndp/equilibrium.hpp"
#include "cndp/gadgets.hpp"
#include "cndp/random_instances.hpp"
#include "cndp/relaxation.hpp"

using namespace cndp;

namespace {

Instance parallel_pair() {
    return Instance({"s", "t"},
                    {{"a", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0},
                     {"b", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0}},
                    {{0, 1, 1.0}});
}

}  // namespace

TEST_CASE("symmetric parallel edges split evenly") {
    auto inst = parallel_pair();
    auto eq = solve_wardrop(inst, {1.0, 1.0});
    CHECK(eq.converged);
    CHECK(eq.gap <= 1e-8);
    CHECK(eq.flow.per_commodity[0][0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(eq.flow.per_commodity[0][1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("asymmetric capacities split proportionally") {
    // v/1 = (1-v)/3 -> v = 0.25
    auto inst = parallel_pair();
    auto eq = solve_wardrop(inst, {1.0, 3.0});
    CHECK(eq.converged);
    CHECK(std::abs(eq.flow.per_commodity[0][0] - 0.25) <= 1e-6);
    CHECK(std::abs(eq.flow.per_commodity[0][1] - 0.75) <= 1e-6);
}

TEST_CASE("verify_wardrop gap arithmetic") {
    auto inst = parallel_pair();
    FlowAssignment flow = FlowAssignment::zeros(1, 2);
    flow.per_commodity[0][0] = 0.5;
    flow.per_commodity[0][1] = 0.5;
    CHECK(verify_wardrop(inst, {1.0, 1.0}, flow).value == doctest::Approx(0.0).epsilon(1e-12));

    // all demand on one edge: routing cost 1, best response latency 0
    FlowAssignment lopsided = FlowAssignment::zeros(1, 2);
    lopsided.per_commodity[0][0] = 1.0;
    CHECK(verify_wardrop(inst, {1.0, 1.0}, lopsided).value == doctest::Approx(1.0).epsilon(1e-12));

    // infinite when a used strict edge has no capacity
    CHECK_FALSE(verify_wardrop(inst, {0.0, 1.0}, lopsided).finite());

    // single-path network: any feasible flow is an equilibrium
    Instance path({"s", "m", "t"},
                  {{"e0", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0},
                   {"e1", 1, 2, LatencyFunction::affine(1.0, 2.0), 1.0}},
                  {{0, 2, 2.0}});
    FlowAssignment pf = FlowAssignment::zeros(1, 2);
    pf.per_commodity[0][0] = 2.0;
    pf.per_commodity[0][1] = 2.0;
    CHECK(verify_wardrop(path, {1.0, 5.0}, pf).value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("marginal check certifies system optimality of the relaxation") {
    std::mt19937_64 seeds(5);
    for (int trial = 0; trial < 10; ++trial) {
        RandomInstanceOptions opts;
        opts.num_commodities = 3;
        opts.extra_edges = 8;
        Instance inst = random_instance(seeds(), opts);
        auto relax = solve_relaxation(inst);
        Cost gap = marginal_equilibrium_check(inst, relax.caps, relax.flow);
        REQUIRE(gap.finite());
        CHECK(gap.value <= 1e-8);
    }

    // perturbed flow at the asymmetric parallel optimum is no longer optimal
    auto inst = parallel_pair();
    FlowAssignment off = FlowAssignment::zeros(1, 2);
    off.per_commodity[0][0] = 0.35;
    off.per_commodity[0][1] = 0.65;
    Cost gap = marginal_equilibrium_check(inst, {1.0, 3.0}, off);
    REQUIRE(gap.finite());
    CHECK(gap.value > 1e-3);
}

TEST_CASE("potential descends monotonically and the gap converges") {
    std::mt19937_64 seeds(17);
    for (int trial = 0; trial < 8; ++trial) {
        RandomInstanceOptions opts;
        opts.num_commodities = 4;
        opts.extra_edges = 10;
        opts.max_degree = trial % 2 == 0 ? 1 : 4;
        Instance inst = random_instance(seeds(), opts);
        CapacityVector caps(static_cast<size_t>(inst.num_edges()), 1.0);
        WardropOptions wopts;
        wopts.record_potential = true;
        auto eq = solve_wardrop(inst, caps, wopts);
        CHECK(eq.converged);
        CHECK(eq.gap <= 1e-8);
        for (size_t i = 1; i < eq.potential_trace.size(); ++i) {
            double prev = eq.potential_trace[i - 1];
            CHECK(eq.potential_trace[i] <= prev + 1e-9 * (1.0 + std::abs(prev)));
        }
        Cost recheck = verify_wardrop(inst, caps, eq.flow);
        REQUIRE(recheck.finite());
        CHECK(recheck.value <= 1e-8);
    }
}

TEST_CASE("serial, parallel, and plain-FW runs agree on the routing cost") {
    std::mt19937_64 seeds(23);
    for (int trial = 0; trial < 5; ++trial) {
        RandomInstanceOptions opts;
        opts.num_commodities = 4;
        opts.extra_edges = 8;
        Instance inst = random_instance(seeds(), opts);
        CapacityVector caps(static_cast<size_t>(inst.num_edges()), 1.0);

        WardropOptions serial;
        serial.parallel = false;
        WardropOptions parallel;
        parallel.parallel = true;
        auto eq_s = solve_wardrop(inst, caps, serial);
        auto eq_p = solve_wardrop(inst, caps, parallel);
        // identical, not merely close: same deterministic iteration
        for (size_t k = 0; k < eq_s.flow.per_commodity.size(); ++k) {
            for (size_t e = 0; e < eq_s.flow.per_commodity[k].size(); ++e) {
                CHECK(eq_s.flow.per_commodity[k][e] == eq_p.flow.per_commodity[k][e]);
            }
        }

        WardropOptions plain;
        plain.conjugate = false;
        plain.tol_gap = 1e-6;  // plain FW converges slowly; cost invariance is what matters
        auto eq_f = solve_wardrop(inst, caps, plain);
        double cost_c = routing_cost(inst, eq_s.flow, caps).value;
        double cost_f = routing_cost(inst, eq_f.flow, caps).value;
        CHECK(cost_f == doctest::Approx(cost_c).epsilon(1e-4));
    }
}

TEST_CASE("gadget witness capacities reproduce the intended equilibrium") {
    CnfFormula formula;
    formula.num_vars = 3;
    formula.clauses = {{1, -2, 3}};
    GadgetInstance gadget(formula, 0.1);
    auto [wflow, wcaps] = gadget.witness({true, true, true});

    auto eq = solve_wardrop(gadget.instance(), wcaps);
    CHECK(eq.converged);
    // clause commodity rides the clause edge
    double on_clause =
        eq.flow.per_commodity[static_cast<size_t>(gadget.clause_commodity(0))]
                             [static_cast<size_t>(gadget.clause_edge(0))];
    CHECK(on_clause == doctest::Approx(1.0).epsilon(1e-9));
    // variable commodities ride their capacity-1 chains (negated assignment: all-true
    // routes on the negative literal edges)
    for (int v = 1; v <= 3; ++v) {
        double on_neg = eq.flow.per_commodity[static_cast<size_t>(gadget.variable_commodity(v))]
                                             [static_cast<size_t>(gadget.literal_edge(v, false, 0))];
        CHECK(on_neg == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("disconnection in the finite subgraph raises NoFinitePath") {
    Instance inst({"s", "t"}, {{"a", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0}}, {{0, 1, 1.0}});
    CHECK_THROWS_AS(solve_wardrop(inst, {0.0}), NoFinitePath);
}
