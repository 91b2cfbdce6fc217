#pragma once

namespace stifflab {

/// Modified Bessel function of the first kind, real order |nu| <= 100, z > 0.
/// scaled: returns e^{-z} I_nu(z).
double bessel_i(double nu, double z, bool scaled = false);

/// Modified Bessel function of the second kind, real order |nu| <= 100, z > 0.
/// scaled: returns e^{z} K_nu(z).
double bessel_k(double nu, double z, bool scaled = false);

struct BesselIK {
    double i;
    double k;
};

/// Both functions at once (shares the continued-fraction work).
BesselIK bessel_ik(double nu, double z, bool scaled = false);

/// Gamma function on (0, 170].
double gamma_fn(double x);

} // namespace stifflab
