#include <doctest.h>

#include <cmath>

#include "stiffness_lab/errors.hpp"
#include "stiffness_lab/special.hpp"

using namespace stifflab;

TEST_SUITE("special") {

TEST_CASE("reference values (mpmath, 17 digits)") {
    struct Ref {
        double nu, z, i, k;
    };
    const Ref refs[] = {
        {0.0, 1.0, 1.2660658777520083, 0.42102443824070833},
        {1.0, 1.0, 0.56515910399248503, 0.60190723019723457},
        {0.0, 10.0, 2815.7166284662545, 1.7780062316167652e-5},
        {0.5, 2.0, 2.046236863089055, 0.11993777196806145},
        {2.5, 7.0, 104.61336757234871, 0.00064354115448130757},
        {5.0, 0.3, 6.3518936427803162e-7, 157139.12337121671},
        {3.7, 14.2, 95459.416735075729, 3.5707528849724429e-7},
    };
    for (const auto& r : refs) {
        CHECK(bessel_i(r.nu, r.z) == doctest::Approx(r.i).epsilon(1e-12));
        CHECK(bessel_k(r.nu, r.z) == doctest::Approx(r.k).epsilon(1e-12));
    }
    CHECK(bessel_i(-0.3, 0.7) == doctest::Approx(1.2470498773456528).epsilon(1e-12));
    CHECK(bessel_k(2.0, 0.1) == doctest::Approx(199.50396464211412).epsilon(1e-12));
    CHECK(bessel_i(99.5, 120.0, true) ==
          doctest::Approx(2.8311857954632686e-19).epsilon(1e-11));
}

TEST_CASE("Wronskian identity on a (nu, z) grid") {
    // I_nu(z) K_{nu+1}(z) + I_{nu+1}(z) K_nu(z) = 1/z
    for (double nu = 0.0; nu <= 5.0; nu += 0.5) {
        for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
            const double w = bessel_i(nu, z) * bessel_k(nu + 1.0, z) +
                             bessel_i(nu + 1.0, z) * bessel_k(nu, z);
            CHECK(w * z == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("half-integer closed forms") {
    for (double z : {0.2, 1.0, 3.0, 12.0}) {
        const double pref = std::sqrt(2.0 / (M_PI * z));
        CHECK(bessel_i(0.5, z) == doctest::Approx(pref * std::sinh(z)).epsilon(1e-10));
        CHECK(bessel_i(-0.5, z) == doctest::Approx(pref * std::cosh(z)).epsilon(1e-10));
        CHECK(bessel_k(0.5, z) ==
              doctest::Approx(std::sqrt(M_PI / (2.0 * z)) * std::exp(-z)).epsilon(1e-10));
        CHECK(bessel_i(1.5, z) ==
              doctest::Approx(pref * (std::cosh(z) - std::sinh(z) / z)).epsilon(1e-10));
    }
}

TEST_CASE("scaled variants are exact rescalings") {
    for (double nu : {0.0, 1.3, 7.0}) {
        for (double z : {0.4, 3.0, 40.0}) {
            const auto full = bessel_ik(nu, z);
            const auto sc = bessel_ik(nu, z, true);
            CHECK(sc.i * std::exp(z) == doctest::Approx(full.i).epsilon(1e-13));
            CHECK(sc.k * std::exp(-z) == doctest::Approx(full.k).epsilon(1e-13));
        }
    }
}

TEST_CASE("scaled evaluation survives huge arguments") {
    CHECK(bessel_i(0.0, 1e6, true) ==
          doctest::Approx(0.00039894233026924578).epsilon(1e-12));
    CHECK(bessel_k(0.0, 1e6, true) ==
          doctest::Approx(0.0012533139806513212).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_i(0.0, 800.0), OverflowError);
}

TEST_CASE("negative order reflection") {
    CHECK(bessel_i(-0.25, 0.3) == doctest::Approx(1.3508656116311326).epsilon(1e-12));
    CHECK(bessel_i(-1.75, 2.0) == doctest::Approx(0.78507792274765135).epsilon(1e-12));
    CHECK(bessel_i(-4.4, 9.0) == doctest::Approx(358.44781254060828).epsilon(1e-12));
    // integer order: I_{-n} = I_n exactly (no K contamination)
    CHECK(bessel_i(-3.0, 0.5) == doctest::Approx(bessel_i(3.0, 0.5)).epsilon(1e-14));
    CHECK(bessel_i(-50.0, 0.5) == doctest::Approx(bessel_i(50.0, 0.5)).epsilon(1e-13));
}

TEST_CASE("derivative recurrences against finite differences") {
    for (double nu : {0.7, 2.0}) {
        for (double z : {1.5, 8.0}) {
            const double h = 1e-6 * z;
            const double fd_i = (bessel_i(nu, z + h) - bessel_i(nu, z - h)) / (2 * h);
            const double rec_i = 0.5 * (bessel_i(nu - 1.0, z) + bessel_i(nu + 1.0, z));
            CHECK(rec_i == doctest::Approx(fd_i).epsilon(1e-7));
            const double fd_k = (bessel_k(nu, z + h) - bessel_k(nu, z - h)) / (2 * h);
            const double rec_k = -0.5 * (bessel_k(nu - 1.0, z) + bessel_k(nu + 1.0, z));
            CHECK(rec_k == doctest::Approx(fd_k).epsilon(1e-7));
        }
    }
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(bessel_i(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_i(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_i(101.0, 1.0), DomainError);
}

TEST_CASE("gamma function") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_fn(1.0) == 1.0);
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    for (double x : {0.1, 0.9, 3.3, 40.0, 150.0}) {
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-2.5), DomainError);
    CHECK_THROWS_AS(gamma_fn(200.0), OverflowError);
}

} // TEST_SUITE
