#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cndp/approx.hpp"
#include "cndp/random_instances.hpp"
#include "cndp/relaxation.hpp"

using namespace cndp;

namespace {

Instance one_edge() {
    return Instance({"s", "t"}, {{"e0", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0}},
                    {{0, 1, 1.0}});
}

}  // namespace

TEST_CASE("single edge: bring_to_equilibrium") {
    auto result = bring_to_equilibrium(one_edge());
    const auto& c = result.certificate;
    CHECK(result.caps[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(c.routing_cost == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(c.capacity_cost == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(c.total == doctest::Approx(2.5).epsilon(1e-8));
    CHECK(c.ratio == doctest::Approx(1.25).epsilon(1e-8));
    CHECK(c.ratio <= c.guarantee + 1e-9);
    CHECK(c.equilibrium_gap <= 1e-8);
}

TEST_CASE("single edge: scale_uniformly") {
    auto result = scale_uniformly(one_edge());
    const auto& c = result.certificate;
    CHECK(c.p == doctest::Approx(0.5).epsilon(1e-8));
    REQUIRE(c.lambda.has_value());
    CHECK(*c.lambda == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(result.caps[0] == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(c.routing_cost == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
    CHECK(c.capacity_cost == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(c.total == doctest::Approx(25.0 / 12.0).epsilon(1e-8));
    CHECK(c.ratio == doctest::Approx(25.0 / 24.0).epsilon(1e-8));
    CHECK_FALSE(c.low_p_flag);
}

TEST_CASE("single edge: best_of_two dispatches to scale_uniformly") {
    for (bool dispatch_only : {false, true}) {
        ApproxParams params;
        params.dispatch_only = dispatch_only;
        auto result = best_of_two(one_edge(), params);
        const auto& c = result.certificate;
        CHECK(c.algorithm == "best_of_two[scale_uniformly]");
        CHECK(c.total == doctest::Approx(25.0 / 12.0).epsilon(1e-8));
        CHECK(c.guarantee == doctest::Approx(49.0 / 41.0).epsilon(1e-12));
        REQUIRE(c.p_star.has_value());
        CHECK(*c.p_star == doctest::Approx(25.0 / 41.0).epsilon(1e-12));
        CHECK(c.p <= *c.p_star);
    }
}

TEST_CASE("dispatch threshold: the two bounds cross exactly at p*") {
    for (auto cls : {FunctionClass::polynomial(1), FunctionClass::polynomial(4),
                     FunctionClass::concave(), FunctionClass::convex_general()}) {
        double p_star = cls.p_star();
        auto su_bound = [&](double p) {
            double r = std::sqrt(p) + std::sqrt(cls.mu * (1.0 - p));
            return r * r;
        };
        auto bte_bound = [&](double p) { return 1.0 + cls.gamma * (1.0 - p); };
        CHECK(su_bound(p_star) == doctest::Approx(bte_bound(p_star)).epsilon(1e-12));
        for (double below : {0.1 * p_star, 0.6 * p_star}) {
            CHECK(su_bound(below) <= bte_bound(below) + 1e-12);
        }
        for (double above : {p_star + 0.5 * (1 - p_star), p_star + 0.9 * (1 - p_star)}) {
            CHECK(bte_bound(above) <= su_bound(above) + 1e-12);
        }
        // both bounds at the crossing equal the best-of-two guarantee
        CHECK(su_bound(p_star) == doctest::Approx(cls.guarantee_best_of_two()).epsilon(1e-12));
    }
}

TEST_CASE("properties on random instances") {
    std::mt19937_64 seeds(4242);
    for (int trial = 0; trial < 25; ++trial) {
        RandomInstanceOptions opts;
        opts.num_commodities = 3;
        opts.extra_edges = 8;
        opts.max_degree = trial % 2 == 0 ? 1 : 4;
        Instance inst = random_instance(seeds(), opts);
        auto relax = solve_relaxation(inst);
        FunctionClass cls = infer_class(inst);

        auto bte = bring_to_equilibrium(inst);
        CHECK(validate_flow(inst, bte.flow).empty());
        CHECK(bte.certificate.equilibrium_gap <= 1e-6);
        CHECK(bte.certificate.ratio <= bte.certificate.guarantee + 1e-6);
        for (size_t e = 0; e < bte.caps.size(); ++e) {
            CHECK(bte.caps[e] <= relax.caps[e] * (1.0 + 1e-9));  // gamma_e <= 1
        }

        auto su = scale_uniformly(inst);
        CHECK(validate_flow(inst, su.flow).empty());
        CHECK(su.certificate.equilibrium_gap <= 1e-6);
        CHECK(su.certificate.ratio <= su.certificate.guarantee + 1e-6);
        REQUIRE(su.certificate.lambda.has_value());
        double p = su.certificate.p;
        if (p < 1.0 - 1e-12) {
            double lambda = *su.certificate.lambda;
            CHECK(lambda >= cls.mu - 1e-12);
            CHECK(lambda <= cls.mu + std::sqrt(cls.mu * p / (1.0 - p)) + 1e-12);
        }

        auto best = best_of_two(inst);
        CHECK(best.certificate.total <=
              std::min(bte.certificate.total, su.certificate.total) + 1e-9);
        CHECK(best.certificate.ratio <= best.certificate.guarantee + 1e-6);
    }
}

TEST_CASE("degenerate and edge cases") {
    // all-constant instance: p = 1, everything returns the relaxation as is
    Instance flat({"s", "t"}, {{"c", 0, 1, LatencyFunction::constant(2.0), 0.0}}, {{0, 1, 1.0}});
    auto su = scale_uniformly(flat);
    CHECK(su.certificate.p == doctest::Approx(1.0));
    CHECK(su.certificate.total == doctest::Approx(2.0));
    CHECK(su.certificate.ratio == doctest::Approx(1.0));
    auto bte = bring_to_equilibrium(flat);
    CHECK(bte.certificate.total == doctest::Approx(2.0));

    // zero-cost instance (free constant edge)
    Instance free({"s", "t"}, {{"c", 0, 1, LatencyFunction::constant(0.0), 0.0}}, {{0, 1, 1.0}});
    auto best = best_of_two(free);
    CHECK(best.certificate.total == 0.0);
    CHECK(best.certificate.ratio == doctest::Approx(1.0));

    // declared class must cover the instance
    Instance quad({"s", "t"},
                  {{"q", 0, 1, LatencyFunction::polynomial({0.0, 0.0, 1.0}), 1.0}},
                  {{0, 1, 1.0}});
    ApproxParams params;
    params.function_class = FunctionClass::polynomial(1);
    CHECK_THROWS_AS(best_of_two(quad, params), DomainError);
    params.function_class = FunctionClass::polynomial(2);
    CHECK(best_of_two(quad, params).certificate.ratio <=
          FunctionClass::polynomial(2).guarantee_best_of_two() + 1e-6);
}

TEST_CASE("budgeted wrapper certificate") {
    Instance inst({"s", "t"}, {{"e0", 0, 1, LatencyFunction::affine(0.0, 1.0), 1.0}},
                  {{0, 1, 1.0}}, 1.0);
    auto result = solve_budgeted(inst);
    const auto& c = result.certificate;
    CHECK(c.algorithm == "budgeted");
    CHECK(c.ratio == doctest::Approx(1.0).epsilon(1e-6));  // unique path
    CHECK(c.guarantee == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(capacity_cost(inst, result.caps) <= 1.0 * (1.0 + 1e-6));
    CHECK(c.equilibrium_gap <= 1e-6);
}
