#pragma once

#include "stiffness_lab/criteria.hpp"
#include "stiffness_lab/profile.hpp"

namespace stifflab {

enum class GaugeDirection {
    Thm1Base, // pulled back from constant damping beta: needs f > 0, f' <= 0
    Thm2Base, // pulled back from constant stiffness omega^2: needs g > 0, g' >= 0
};

/// A monotone time gauge d tau / d t = f(tau)^{-n/2}. The profile must be a
/// pure family so its derivative is exact.
struct Gauge {
    CoefficientProfile profile;
    double n = 1.0;
    GaugeDirection direction = GaugeDirection::Thm1Base;
};

struct TransformedSystem {
    CoefficientProfile alpha;
    CoefficientProfile k;
};

/// Coefficients of the reparametrized equation in tau:
///   Thm1Base: k = omega^2 f^{n+1},  alpha = beta f^{n/2} - (n/2) f'/f
///   Thm2Base: k = omega^2 g^n,      alpha = beta g^{n/2+1} - (n/2) g'/g
TransformedSystem reparametrize(const Gauge& gauge, double beta, double omega);

/// Pointwise check of the corollary inequality (plus the gauge sign and
/// monotonicity hypotheses) over the window:
///   Thm1Base: f^{-n/2} (1/f)' > 2 omega^2 / beta
///   Thm2Base: d ln g / d tau > g^{n/2} (1/(beta g) + omega^2)^2 / 2
CriterionReport corollary_condition_check(const Gauge& gauge, double beta, double omega,
                                          Window window, int grid = 512);

/// t(tau) = integral_{tau0}^{tau} f(s)^{n/2} ds (adaptive quadrature,
/// absolute error <= 1e-10).
double time_map(const Gauge& gauge, double tau0, double tau);

/// Inverse of time_map by safeguarded Newton on the quadrature.
double inverse_time_map(const Gauge& gauge, double tau0, double t);

/// Base-equation profiles in original time t for the equivalence check:
/// Thm1Base keeps damping beta and stiffness omega^2 f(tau(t));
/// Thm2Base keeps stiffness omega^2 and damping beta g(tau(t)).
CoefficientProfile pullback_coefficient(const Gauge& gauge, double scale, double tau0);

} // namespace stifflab
