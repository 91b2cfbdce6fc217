#include <doctest.h>

#include <cmath>

#include "stiffness_lab/certificates.hpp"
#include "stiffness_lab/criteria.hpp"
#include "stiffness_lab/integrate.hpp"

using namespace stifflab;

TEST_SUITE("certificates") {

TEST_CASE("certificate values") {
    const auto k = CoefficientProfile::power_law(1.0, -2.0);
    const PlanarState s{2.0, 3.0, -1.0};
    CHECK(v_eval({CertificateKind::LyapunovK, k}, s) ==
          doctest::Approx(0.5 * 0.25 * 9.0 + 0.5).epsilon(1e-15));
    CHECK(v_eval({CertificateKind::Chetaev, k}, s) ==
          doctest::Approx(0.5 * 0.25 * 9.0 - 0.5).epsilon(1e-15));

    const auto alpha = CoefficientProfile::constant(4.0);
    CHECK(v_eval({CertificateKind::LyapunovAlpha, alpha}, s) ==
          doctest::Approx(9.0 / 8.0 + 0.5).epsilon(1e-15));
    CHECK_THROWS_AS(v_eval({CertificateKind::LyapunovAlpha,
                            CoefficientProfile::constant(0.0)}, s),
                    DomainError);
}

TEST_CASE("flow derivative matches the quadratic form") {
    const auto k = CoefficientProfile::power_law(2.0, -1.5);
    const double beta = 1.7;
    for (const PlanarState s : {PlanarState{1.5, 1.0, 0.3}, PlanarState{3.0, -2.0, 1.1}}) {
        const double direct = vdot_eval({CertificateKind::LyapunovK, k}, s, beta);
        const double viaq = vdot_matrix_thm1(beta, k, s.t).quad(s.x1, s.x2);
        CHECK(direct == doctest::Approx(viaq).epsilon(1e-14));
    }
}

TEST_CASE("cone certificate derivative is positive for growing k") {
    const auto k = CoefficientProfile::constant(1.0) +
                   CoefficientProfile::power_law(1.0, 1.0);
    const double vdot = vdot_eval({CertificateKind::Chetaev, k},
                                  {1.0, 0.5, 0.2}, 1.0);
    CHECK(vdot == doctest::Approx(0.5 * 1.0 * 0.25 + 1.0 * 0.04).epsilon(1e-14));
    CHECK(vdot > 0.0);
}

TEST_CASE("trace along a certified-bounded trajectory decreases") {
    // beta = 3, k = t^{-1}: decay-rate condition holds strictly
    const auto alpha = CoefficientProfile::constant(3.0);
    const auto k = CoefficientProfile::power_law(1.0, -1.0);
    IntegrationConfig cfg;
    cfg.horizon = 50.0;
    const auto traj = integrate(alpha, k, {1.0, 1.0, 0.5}, cfg);
    const auto trace = trace_along({CertificateKind::LyapunovK, k}, traj, 3.0);
    CHECK(trace.monotone_decreasing);
    CHECK(trace.samples.size() == traj.states.size());
    // interior centered differences track the analytic derivative
    for (std::size_t i = 10; i < trace.samples.size() - 10; i += 37) {
        const auto& ts = trace.samples[i];
        CHECK(ts.dvdt_numeric ==
              doctest::Approx(ts.dvdt_analytic).epsilon(5e-2).scale(1e-6));
    }
}

TEST_CASE("trace along an escaping trajectory increases") {
    const auto alpha = CoefficientProfile::constant(1.0);
    const auto k = CoefficientProfile::constant(1.0) +
                   CoefficientProfile::power_law(1.0, 1.0);
    IntegrationConfig cfg;
    cfg.horizon = 100.0;
    const auto traj = integrate(alpha, k, {0.0, 1e-3, 0.0}, cfg);
    CHECK(traj.classification == Classification::Escaped);
    const auto trace = trace_along({CertificateKind::Chetaev, k}, traj, 1.0);
    CHECK(trace.monotone_increasing);
    CHECK_FALSE(trace.monotone_decreasing);
}

} // TEST_SUITE
