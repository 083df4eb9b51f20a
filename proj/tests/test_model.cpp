#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "necrosim/model.hpp"

using namespace necrosim;

TEST_CASE("growth law: affine branch values") {
    GrowthLaw law = GrowthLaw::ignition_affine(2.0, 0.2, 1.2, 0.9);
    CHECK(eval_growth(law, 0.5) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(eval_growth(law, 1.0) == doctest::Approx(0.2 * 0.1 + 1.2).epsilon(1e-15));
}

TEST_CASE("growth law: threshold uses the upper branch") {
    GrowthLaw law = GrowthLaw::ignition_constant(1.0, 1.0, 0.5);
    CHECK(eval_growth(law, 0.5) == 1.0);
    CHECK(eval_growth(law, std::nextafter(0.5, 0.0)) == -1.0);
}

TEST_CASE("growth law: constant plateau below threshold") {
    GrowthLaw law = GrowthLaw::ignition_affine(2.0, 0.2, 1.2, 0.9);
    std::uniform_real_distribution<double> dist(0.0, 0.9);
    for (int i = 0; i < 200; ++i) {
        double c = dist(testutil::rng());
        if (c < 0.9) CHECK(eval_growth(law, c) == -2.0);
    }
}

TEST_CASE("growth law: monotone in c for all variants") {
    GrowthLaw laws[] = {
        GrowthLaw::ignition_constant(1.5, 0.7, 0.4),
        GrowthLaw::ignition_affine(2.0, 0.2, 1.2, 0.9),
        GrowthLaw::ignition_general(1.0, 0.3,
                                    [](double c) { return std::sqrt(c - 0.3) + 0.1; },
                                    10.0),
    };
    std::uniform_real_distribution<double> dist(0.0, 3.0);
    for (const auto& law : laws) {
        for (int i = 0; i < 300; ++i) {
            double c1 = dist(testutil::rng());
            double c2 = dist(testutil::rng());
            if (c1 > c2) std::swap(c1, c2);
            CHECK(eval_growth(law, c1) <= eval_growth(law, c2) + 1e-15);
        }
    }
}

TEST_CASE("consumption law: two-level values and saturation tolerance") {
    ConsumptionLaw law = ConsumptionLaw::two_level(1.0, 0.25);
    CHECK(eval_consumption(law, 1.0) == 1.0);
    CHECK(eval_consumption(law, 0.7) == 0.25);
    CHECK(eval_consumption(law, 1.0 - 5e-13) == 1.0);  // round-off guard
    CHECK(eval_consumption(law, 1.0 - 1e-9) == 0.25);
}

TEST_CASE("consumption law: linear and domain check") {
    ConsumptionLaw law = ConsumptionLaw::linear(1.0);
    CHECK(eval_consumption(law, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(eval_consumption(law, -0.1), SolverError);
    CHECK_THROWS_AS(eval_consumption(law, 1.1), SolverError);
}

TEST_CASE("consumption law: monotone in n") {
    ConsumptionLaw laws[] = {
        ConsumptionLaw::two_level(2.0, 0.4),
        ConsumptionLaw::linear(0.7),
        ConsumptionLaw::general([](double n) { return n * n; }, 2.0),
    };
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (const auto& law : laws) {
        for (int i = 0; i < 300; ++i) {
            double n1 = dist(testutil::rng());
            double n2 = dist(testutil::rng());
            if (n1 > n2) std::swap(n1, n2);
            CHECK(eval_consumption(law, n1) <= eval_consumption(law, n2) + 1e-15);
        }
    }
}

TEST_CASE("validate: benchmark parameters") {
    ValidationReport rep = validate(testutil::figure3_params());
    CHECK(rep.c_thresh_below_cB);
    CHECK(rep.psi_zero_at_zero);
    CHECK(rep.growth_monotone);
    CHECK(rep.consumption_monotone);
}

TEST_CASE("validate: threshold above supply is flagged") {
    ModelParams p = testutil::figure3_params();
    p.growth = GrowthLaw::ignition_affine(2.0, 0.2, 1.2, 1.5);
    ValidationReport rep = validate(p);
    CHECK_FALSE(rep.c_thresh_below_cB);
    CHECK_FALSE(rep.all_hold());
}

TEST_CASE("validate: smallness condition with zero consumption slope") {
    ModelParams p;
    p.c_B = 1.0;
    p.growth = GrowthLaw::ignition_affine(1.0, 0.5, 1.0, 0.4);
    p.consumption = ConsumptionLaw::general([](double) { return 0.0; }, 0.0);
    ValidationReport rep = validate(p);
    CHECK(rep.smallness_lhs == 0.0);
    CHECK(rep.smallness_condition);
}

TEST_CASE("validate: two-level psi does not vanish at zero") {
    ValidationReport rep = validate(testutil::section3_params());
    CHECK_FALSE(rep.psi_zero_at_zero);  // psi(0) = lambda n_c for two-level
    CHECK(rep.nc_below_one);
}

TEST_CASE("numerics config validation") {
    NumericsConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.psor_omega = 2.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.psor_omega = 1.8;
    cfg.h = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
