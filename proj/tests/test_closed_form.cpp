#include <doctest.h>

#include <cmath>

#include "stiffness_lab/closed_form.hpp"

using namespace stifflab;

namespace {

// x'' from a central difference of the analytic x', then the equation residual
// x'' + alpha x' - k x, normalized by the local solution scale.
double ode_residual(const ClosedFormSolution& sol, double t) {
    const double h = 1e-5 * std::max(1.0, std::abs(t));
    const double xpp =
        (solution_derivative(sol, t + h) - solution_derivative(sol, t - h)) / (2 * h);
    const double a = family_alpha(sol).value(t);
    const double k = family_stiffness(sol).value(t);
    const double res = xpp + a * solution_derivative(sol, t) - k * solution_eval(sol, t);
    const double scale = std::max({1.0, std::abs(solution_eval(sol, t)),
                                   std::abs(solution_derivative(sol, t))});
    return std::abs(res) / scale;
}

double fd_of_eval(const ClosedFormSolution& sol, double t) {
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    return (solution_eval(sol, t + h) - solution_eval(sol, t - h)) / (2 * h);
}

} // namespace

TEST_SUITE("closed_form") {

TEST_CASE("fundamental pairs satisfy their equations") {
    const ClosedFormSolution cases[] = {
        {SolutionFamily::Ex3m2, 1.0, 1.0, 1.0, 1.0, 1.0},
        {SolutionFamily::Ex3m2, 2.5, 0.7, 1.0, 0.3, -1.2},
        {SolutionFamily::Ex4, 1.0, 1.0, 1.0, 1.0, 1.0},
        {SolutionFamily::Ex4, 2.0, 1.0, 0.5, -0.5, 2.0},
        {SolutionFamily::Ex5x, 1.0, 1.0, 1.0, 1.0, 1.0},
        {SolutionFamily::Ex5x, 0.8, 1.4, 2.0, 1.0, -0.6},
    };
    for (const auto& sol : cases) {
        for (double t : {0.5, 1.0, 2.0, 3.5, 5.0}) {
            CHECK(ode_residual(sol, t) <= 1e-6);
        }
    }
}

TEST_CASE("analytic derivative matches finite differences") {
    const ClosedFormSolution sol{SolutionFamily::Ex4, 1.3, 0.9, 0.7, 0.4, 1.1};
    for (double t : {0.2, 1.0, 4.0, 9.0}) {
        CHECK(solution_derivative(sol, t) ==
              doctest::Approx(fd_of_eval(sol, t)).epsilon(1e-7));
    }
}

TEST_CASE("fit_constants reproduces the initial state") {
    struct Case {
        SolutionFamily family;
        double beta, omega, m;
        PlanarState x0;
    };
    const Case cases[] = {
        {SolutionFamily::Ex3m2, 1.0, 1.0, 1.0, {1.0, 1.0, 0.0}},
        {SolutionFamily::Ex4, 2.0, 1.0, 0.5, {0.0, 0.4, -0.7}},
        {SolutionFamily::Ex5x, 1.0, 1.0, 1.0, {0.0, 1.0, 0.0}},
    };
    for (const auto& c : cases) {
        const auto sol = fit_constants(c.family, c.beta, c.omega, c.m, c.x0);
        CHECK(solution_eval(sol, c.x0.t) == doctest::Approx(c.x0.x1).epsilon(1e-11));
        CHECK(solution_derivative(sol, c.x0.t) ==
              doctest::Approx(c.x0.x2).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("asymptotic limits") {
    // slowly decaying stiffness: psi1 tends to 1/sqrt(pi beta)
    const ClosedFormSolution a{SolutionFamily::Ex3m2, 1.0, 1.0, 1.0, 1.0, 0.0};
    CHECK(asymptotic_limit(a) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(solution_eval(a, 400.0) == doctest::Approx(asymptotic_limit(a)).epsilon(1e-3));

    // exponentially decaying stiffness, integer beta/m: only the K branch
    // contributes a constant
    const ClosedFormSolution b{SolutionFamily::Ex4, 1.0, 1.0, 1.0, 0.0, 1.0};
    CHECK(asymptotic_limit(b) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(solution_eval(b, 40.0) == doctest::Approx(0.5).epsilon(1e-8));
    const ClosedFormSolution b_int{SolutionFamily::Ex4, 1.0, 1.0, 1.0, 1.0, 0.0};
    CHECK(asymptotic_limit(b_int) == 0.0);

    // fractional beta/m: the growing branch leaves a constant as well;
    // for beta/m = 1/2, omega/m = 1/2 it is sqrt(2/pi)
    const ClosedFormSolution c{SolutionFamily::Ex4, 1.0, 1.0, 2.0, 1.0, 0.0};
    CHECK(asymptotic_limit(c) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-14));
    CHECK(solution_eval(c, 20.0) == doctest::Approx(asymptotic_limit(c)).epsilon(1e-8));

    // exponentially growing damping: psi1 tends to sqrt(m/beta)/sqrt(pi)
    const ClosedFormSolution d{SolutionFamily::Ex5x, 1.0, 1.0, 1.0, 2.0, 0.0};
    CHECK(asymptotic_limit(d) == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(solution_eval({SolutionFamily::Ex3m2, -1.0, 1.0, 1.0, 1.0, 0.0}, 1.0),
                    DomainError);
    CHECK_THROWS_AS(solution_eval({SolutionFamily::Ex4, 1.0, 0.0, 1.0, 1.0, 0.0}, 1.0),
                    DomainError);
    CHECK_THROWS_AS(solution_eval({SolutionFamily::Ex3m2, 1.0, 1.0, 1.0, 1.0, 0.0}, -2.0),
                    DomainError);
}

TEST_CASE("family profiles match the intended equations") {
    const ClosedFormSolution sol{SolutionFamily::Ex4, 1.5, 2.0, 0.5, 1.0, 0.0};
    CHECK(family_alpha(sol).value(3.0) == 1.5);
    CHECK(family_stiffness(sol).value(3.0) ==
          doctest::Approx(4.0 * std::exp(-0.5 * 3.0)).epsilon(1e-14));

    const ClosedFormSolution g{SolutionFamily::Ex5x, 1.5, 2.0, 0.5, 1.0, 0.0};
    CHECK(family_alpha(g).value(2.0) == doctest::Approx(1.5 * std::exp(1.0)).epsilon(1e-14));
    CHECK(family_stiffness(g).value(2.0) == 4.0);
}

} // TEST_SUITE
