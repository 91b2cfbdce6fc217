#include <doctest.h>

#include <cmath>

#include "stiffness_lab/integrate.hpp"
#include "stiffness_lab/transform.hpp"

using namespace stifflab;

TEST_SUITE("transform") {

TEST_CASE("reparametrized coefficients, constant-damping base") {
    // f = e^{-tau}, n = 2: k = omega^2 e^{-3 tau}, alpha = beta e^{-tau} + 1
    const Gauge gauge{CoefficientProfile::exponential(1.0, -1.0), 2.0,
                      GaugeDirection::Thm1Base};
    const auto sys = reparametrize(gauge, 1.0, 1.0);
    for (double tau : {0.0, 0.7, 2.0}) {
        CHECK(sys.k.value(tau) == doctest::Approx(std::exp(-3.0 * tau)).epsilon(1e-14));
        CHECK(sys.alpha.value(tau) ==
              doctest::Approx(std::exp(-tau) + 1.0).epsilon(1e-14));
    }
}

TEST_CASE("reparametrized coefficients, constant-stiffness base") {
    // g = tau, n = 2: k = omega^2 tau^2, alpha = beta tau^2 - 1/tau
    const Gauge gauge{CoefficientProfile::power_law(1.0, 1.0), 2.0,
                      GaugeDirection::Thm2Base};
    const auto sys = reparametrize(gauge, 1.0, 1.0);
    for (double tau : {0.5, 1.0, 2.5}) {
        CHECK(sys.k.value(tau) == doctest::Approx(tau * tau).epsilon(1e-14));
        CHECK(sys.alpha.value(tau) ==
              doctest::Approx(tau * tau - 1.0 / tau).epsilon(1e-14));
    }
    // the damping dips negative below tau = 1 by design
    CHECK(sys.alpha.value(0.6) < 0.0);
}

TEST_CASE("gauges must be pure families") {
    const auto sum = CoefficientProfile::constant(1.0) +
                     CoefficientProfile::power_law(1.0, 1.0);
    CHECK_THROWS_AS(reparametrize({sum, 2.0, GaugeDirection::Thm1Base}, 1.0, 1.0),
                    DomainError);
}

TEST_CASE("time map and its inverse") {
    // f = e^{-tau}, n = 2: t(tau) = e^{-tau0} - e^{-tau}
    const Gauge gauge{CoefficientProfile::exponential(1.0, -1.0), 2.0,
                      GaugeDirection::Thm1Base};
    for (double tau : {0.5, 1.0, 3.0}) {
        const double expected = 1.0 - std::exp(-tau);
        CHECK(time_map(gauge, 0.0, tau) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(inverse_time_map(gauge, 0.0, expected) ==
              doctest::Approx(tau).epsilon(1e-9));
    }
    CHECK(time_map(gauge, 0.0, 0.0) == 0.0);
    CHECK(inverse_time_map(gauge, 0.0, 0.0) == 0.0);

    // g = tau, n = 2: t(tau) = (tau^2 - tau0^2)/2, including tau < tau0
    const Gauge lin{CoefficientProfile::power_law(1.0, 1.0), 2.0,
                    GaugeDirection::Thm2Base};
    CHECK(time_map(lin, 1.0, 3.0) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(time_map(lin, 2.0, 1.0) == doctest::Approx(-1.5).epsilon(1e-10));
    CHECK(inverse_time_map(lin, 1.0, 4.0) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("corollary condition check, decaying gauge") {
    // f = e^{-tau}, n = 2: the rate condition reads e^{2 tau} > 2 omega^2/beta,
    // holding for tau > ln(2)/2 when beta = omega = 1
    const Gauge gauge{CoefficientProfile::exponential(1.0, -1.0), 2.0,
                      GaugeDirection::Thm1Base};
    const auto ok = corollary_condition_check(gauge, 1.0, 1.0, {1.0, 5.0});
    CHECK(ok.overall == Overall::SufficientForBounded);

    const auto bad = corollary_condition_check(gauge, 1.0, 1.0, {0.0, 5.0});
    CHECK(bad.condition("corollary_rate").status == ConditionStatus::Fails);
    CHECK(bad.condition("corollary_rate").first_violation_time.has_value());
}

TEST_CASE("corollary condition check, growing gauge") {
    // g = tau grows too slowly for the rate condition near tau0
    const Gauge gauge{CoefficientProfile::power_law(1.0, 1.0), 2.0,
                      GaugeDirection::Thm2Base};
    const auto rep = corollary_condition_check(gauge, 1.0, 1.0, {0.5, 2.5});
    CHECK(rep.condition("gauge_positive").status == ConditionStatus::Holds);
    CHECK(rep.condition("gauge_increasing").status == ConditionStatus::Holds);
    CHECK(rep.condition("corollary_rate").status == ConditionStatus::Fails);
    CHECK(rep.overall == Overall::Inconclusive);
}

TEST_CASE("reparametrized trajectory equals the time-mapped base trajectory") {
    // base: y'' + y' - e^{-3 tau(t)}... transformed in tau vs base in t
    const Gauge gauge{CoefficientProfile::exponential(1.0, -1.0), 2.0,
                      GaugeDirection::Thm1Base};
    const double beta = 1.0, omega = 1.0, tau0 = 0.0, tau1 = 3.0;
    const auto sys = reparametrize(gauge, beta, omega);

    std::vector<double> taus;
    for (int i = 1; i <= 20; ++i) {
        taus.push_back(tau0 + (tau1 - tau0) * i / 20.0);
    }

    IntegrationConfig cfg_tau;
    cfg_tau.horizon = tau1;
    cfg_tau.extra_sample_times = taus;
    const PlanarState x0{tau0, 1.0, 0.25};
    const auto traj_tau = integrate(sys.alpha, sys.k, x0, cfg_tau);

    // base equation in t: constant damping beta, stiffness omega^2 f(tau(t))
    const auto k_base = pullback_coefficient(gauge, omega * omega, tau0);
    IntegrationConfig cfg_t;
    cfg_t.horizon = time_map(gauge, tau0, tau1);
    std::vector<double> ts;
    for (double tau : taus) {
        ts.push_back(time_map(gauge, tau0, tau));
    }
    cfg_t.extra_sample_times = ts;
    // velocities transform by dt/dtau = f^{n/2}
    const double f0 = std::pow(gauge.profile.value(tau0), 0.5 * gauge.n);
    const PlanarState y0{0.0, x0.x1, x0.x2 / f0};
    const auto traj_t =
        integrate(CoefficientProfile::constant(beta), k_base, y0, cfg_t);

    auto sample = [](const Trajectory& tr, double t) {
        for (const auto& s : tr.states) {
            if (s.t == t) {
                return s;
            }
        }
        FAIL("missing sample");
        return tr.states.front();
    };
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const auto a = sample(traj_tau, taus[i]);
        const auto b = sample(traj_t, ts[i]);
        CHECK(a.x1 == doctest::Approx(b.x1).epsilon(1e-6));
    }
}

} // TEST_SUITE
