#pragma once

#include "stiffness_lab/integrate.hpp"
#include "stiffness_lab/profile.hpp"

namespace stifflab {

/// Families of solvable benchmark equations.
///   Ex3m2: x'' + beta x' - omega^2 t^{-2} x = 0
///   Ex4:   x'' + beta x' - omega^2 e^{-m t} x = 0
///   Ex5x:  x'' + beta e^{m t} x' - omega^2 x = 0
enum class SolutionFamily { Ex3m2, Ex4, Ex5x };

struct ClosedFormSolution {
    SolutionFamily family;
    double beta = 1.0;
    double omega = 1.0;
    double m = 1.0; // unused for Ex3m2
    double c1 = 1.0;
    double c2 = 0.0;
};

/// x(t) of the closed form (Bessel-function fundamental pair).
double solution_eval(const ClosedFormSolution& sol, double t);

/// Exact dx/dt via the Bessel derivative recurrences.
double solution_derivative(const ClosedFormSolution& sol, double t);

/// The t -> infinity limit of the solution (0 where it decays).
double asymptotic_limit(const ClosedFormSolution& sol);

/// Coefficient profiles (alpha, k) of the family's equation.
CoefficientProfile family_alpha(const ClosedFormSolution& sol);
CoefficientProfile family_stiffness(const ClosedFormSolution& sol);

/// Determines (c1, c2) so that x(x0.t) = x0.x1 and x'(x0.t) = x0.x2.
/// Throws NumericalError when the fundamental pair degenerates at x0.t.
ClosedFormSolution fit_constants(SolutionFamily family, double beta, double omega,
                                 double m, const PlanarState& x0);

} // namespace stifflab
