#include <doctest.h>

#include <cmath>
#include <random>

#include "stiffness_lab/criteria.hpp"

using namespace stifflab;

TEST_SUITE("criteria") {

TEST_CASE("negdef_check on hand-picked matrices") {
    CHECK(negdef_check({-1.0, 0.0, -1.0}));
    CHECK(negdef_check({-2.0, 1.0, -3.0}));
    CHECK_FALSE(negdef_check({-1.0, 2.0, -1.0})); // det = -3
    CHECK_FALSE(negdef_check({1.0, 0.0, -1.0}));
    CHECK_FALSE(negdef_check({0.0, 0.0, -1.0}));
}

TEST_CASE("decaying stiffness criterion: 1/t boundary at beta = 2") {
    // k = t^{-1}: the rate condition reduces to 1 > 2/beta, so beta > 2 exactly.
    const auto k = CoefficientProfile::power_law(1.0, -1.0);
    const Window w{1.0, 100.0};
    for (double beta : {2.1, 3.0, 5.0}) {
        const auto rep = thm1_check(beta, k, w);
        CHECK(rep.overall == Overall::SufficientForBounded);
        CHECK(rep.condition("decay_rate").status == ConditionStatus::Holds);
    }
    for (double beta : {1.0, 1.5, 1.9}) {
        const auto rep = thm1_check(beta, k, w);
        CHECK(rep.condition("decay_rate").status == ConditionStatus::Fails);
        CHECK(rep.overall == Overall::Inconclusive);
    }
    CHECK(thm1_check(2.0, k, w).condition("decay_rate").status ==
          ConditionStatus::Marginal);
}

TEST_CASE("decaying stiffness criterion: necessary conditions") {
    // growing k violates monotonicity with a witness time
    const auto growing = CoefficientProfile::constant(1.0) +
                         CoefficientProfile::power_law(1.0, 1.0);
    const auto rep = thm1_check(1.0, growing, {0.0, 10.0});
    CHECK(rep.condition("k_decreasing").status == ConditionStatus::Fails);
    CHECK(rep.condition("k_decreasing").first_violation_time.has_value());
    CHECK(rep.overall == Overall::NecessaryViolated);

    // constant k sits on the boundary of the strict inequality
    const auto flat = thm1_check(1.0, CoefficientProfile::constant(1.0), {0.0, 10.0});
    CHECK(flat.condition("k_decreasing").status == ConditionStatus::Marginal);
    CHECK(flat.overall == Overall::Inconclusive);

    const auto zero_damping = thm1_check(0.0, CoefficientProfile::power_law(1.0, -2.0),
                                         {1.0, 10.0});
    CHECK(zero_damping.condition("beta_positive").status == ConditionStatus::Fails);
    CHECK(zero_damping.overall == Overall::NecessaryViolated);
}

TEST_CASE("decaying stiffness criterion rejects sign-violating k") {
    CHECK_THROWS_AS(thm1_check(1.0, CoefficientProfile::constant(-1.0), {0.0, 1.0}),
                    HypothesisError);
    const auto crossing = CoefficientProfile::constant(1.0) +
                          CoefficientProfile::power_law(-1.0, 1.0);
    CHECK_THROWS_AS(thm1_check(1.0, crossing, {0.0, 2.0}), HypothesisError);
}

TEST_CASE("growing damping criterion") {
    // alpha = e^{10 t}: log-derivative 10 beats (1/alpha + omega^2)^2 / 2 throughout
    const auto rep = thm2_check(0.1, CoefficientProfile::exponential(1.0, 10.0),
                                {0.0, 10.0});
    CHECK(rep.overall == Overall::SufficientForBounded);

    // alpha = t: near t = 0 the rate condition loses to the 1/(2 t^2) blowup
    const auto lin = thm2_check(1.0, CoefficientProfile::power_law(1.0, 1.0),
                                {0.1, 10.0});
    CHECK(lin.condition("growth_rate").status == ConditionStatus::Fails);
    CHECK(lin.overall == Overall::Inconclusive);

    // decreasing alpha fails the monotonicity condition
    const auto dec = thm2_check(1.0, CoefficientProfile::exponential(1.0, -1.0),
                                {0.0, 5.0});
    CHECK(dec.condition("alpha_increasing").status == ConditionStatus::Fails);
}

TEST_CASE("pointwise predicates agree with matrix definiteness") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double beta = 0.05 + 5.0 * unif(rng);
        const double omega = 0.05 + 2.0 * unif(rng);
        const double k = 0.01 + 10.0 * unif(rng);
        const double kdot = -5.0 + 10.0 * unif(rng);
        const double alpha = 0.01 + 10.0 * unif(rng);
        const double alphadot = -5.0 + 10.0 * unif(rng);

        const SymmetricMatrix2 m1{0.5 * kdot, k, -beta};
        CHECK(thm1_pointwise(beta, k, kdot) == negdef_check(m1));

        const SymmetricMatrix2 m2{-0.5 * alphadot / (alpha * alpha),
                                  0.5 * (1.0 / alpha + omega * omega), -alpha};
        CHECK(thm2_pointwise(omega, alpha, alphadot) == negdef_check(m2));
    }
}

TEST_CASE("cone-based instability certificate") {
    const auto growing = CoefficientProfile::constant(1.0) +
                         CoefficientProfile::power_law(1.0, 1.0); // k = 1 + t
    const auto res = chetaev_instability_check(1.0, growing, 0.0);
    CHECK(res.unstable_certified);
    CHECK(res.cone_slope == doctest::Approx(1.0));

    const auto frozen = chetaev_instability_check(1.0, CoefficientProfile::constant(1.0),
                                                  0.0);
    CHECK_FALSE(frozen.unstable_certified);
    REQUIRE(frozen.saddle_growth_rate.has_value());
    CHECK(*frozen.saddle_growth_rate ==
          doctest::Approx(0.5 * (std::sqrt(5.0) - 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(chetaev_instability_check(1.0, CoefficientProfile::constant(-1.0), 0.0),
                    HypothesisError);
}

} // TEST_SUITE
