#include "stiffness_lab/closed_form.hpp"

#include <cmath>

#include "stiffness_lab/special.hpp"

namespace stifflab {

namespace {

struct ValueDeriv {
    double v;
    double d;
};

double sin_pi(double v) {
    const double n = std::round(v);
    const double s = std::sin(M_PI * (v - n));
    return static_cast<long long>(n) % 2 == 0 ? s : -s;
}

/// d/dz of e^{-z} I_nu(z), via I'_nu = (I_{nu-1} + I_{nu+1}) / 2.
double scaled_i_deriv(double nu, double z) {
    return 0.5 * (bessel_i(nu - 1.0, z, true) + bessel_i(nu + 1.0, z, true)) -
           bessel_i(nu, z, true);
}

/// d/dz of e^{z} K_nu(z), via K'_nu = -(K_{nu-1} + K_{nu+1}) / 2.
double scaled_k_deriv(double nu, double z) {
    return bessel_k(nu, z, true) -
           0.5 * (bessel_k(nu - 1.0, z, true) + bessel_k(nu + 1.0, z, true));
}

void check_params(const ClosedFormSolution& sol) {
    if (!(sol.beta > 0.0)) {
        throw DomainError("closed-form families require beta > 0");
    }
    if (sol.family != SolutionFamily::Ex3m2 && !(sol.m > 0.0)) {
        throw DomainError("closed-form families require m > 0");
    }
    if (sol.family == SolutionFamily::Ex4 && !(sol.omega > 0.0)) {
        throw DomainError("the exponentially decaying stiffness family requires omega > 0");
    }
}

// Fundamental pair (psi1, psi2) with derivatives, per family.

// x'' + beta x' - omega^2 t^{-2} x = 0:
//   psi1 = sqrt(t) e^{-beta t/2} I_nu(beta t/2), psi2 likewise with K_nu,
//   nu = sqrt(1 + 4 omega^2)/2. Evaluated with scaled Bessel functions so the
//   e^{-beta t/2} factor cancels exactly.
void ex3m2_pair(const ClosedFormSolution& sol, double t, ValueDeriv& p1, ValueDeriv& p2) {
    if (!(t > 0.0)) {
        throw DomainError("Ex3m2 closed form requires t > 0");
    }
    const double nu = 0.5 * std::sqrt(1.0 + 4.0 * sol.omega * sol.omega);
    const double z = 0.5 * sol.beta * t;
    const double rt = std::sqrt(t);
    const double ie = bessel_i(nu, z, true);
    const double ke = bessel_k(nu, z, true);
    const double die = scaled_i_deriv(nu, z);
    const double dke = scaled_k_deriv(nu, z);
    const double ebt = std::exp(-sol.beta * t);
    p1.v = rt * ie;
    p1.d = 0.5 * ie / rt + rt * die * 0.5 * sol.beta;
    p2.v = rt * ebt * ke;
    p2.d = ebt * (0.5 * ke / rt - sol.beta * rt * ke + rt * dke * 0.5 * sol.beta);
}

// x'' + beta x' - omega^2 e^{-m t} x = 0:
//   psi1 = e^{-beta t/2} I_{-beta/m}(z), psi2 = e^{-beta t/2} K_{beta/m}(z),
//   z = (2 omega/m) e^{-m t/2}.
void ex4_pair(const ClosedFormSolution& sol, double t, ValueDeriv& p1, ValueDeriv& p2) {
    const double nu = sol.beta / sol.m;
    const double z = (2.0 * sol.omega / sol.m) * std::exp(-0.5 * sol.m * t);
    const double pre = std::exp(-0.5 * sol.beta * t);
    const double iv = bessel_i(-nu, z);
    const double ivp = 0.5 * (bessel_i(-nu - 1.0, z) + bessel_i(-nu + 1.0, z));
    const double kv = bessel_k(nu, z);
    const double kvp = -0.5 * (bessel_k(nu - 1.0, z) + bessel_k(nu + 1.0, z));
    const double dz = -0.5 * sol.m * z;
    p1.v = pre * iv;
    p1.d = pre * (-0.5 * sol.beta * iv + ivp * dz);
    p2.v = pre * kv;
    p2.d = pre * (-0.5 * sol.beta * kv + kvp * dz);
}

// x'' + beta e^{m t} x' - omega^2 x = 0, z = (beta/2m) e^{m t}:
//   psi1 = (1/2) e^{m t/2} [Ie_{-1/2+w/m}(z) + Ie_{1/2+w/m}(z)]
//   psi2 = e^{m t/2} e^{-2z} [Ke_{1/2-w/m}(z) - Ke_{1/2+w/m}(z)]
// The 1/2 on psi1 normalizes its t -> infinity limit to sqrt(m/beta)/sqrt(pi).
void ex5x_pair(const ClosedFormSolution& sol, double t, ValueDeriv& p1, ValueDeriv& p2) {
    const double wm = sol.omega / sol.m;
    const double z = (0.5 * sol.beta / sol.m) * std::exp(sol.m * t);
    const double pre = std::exp(0.5 * sol.m * t);
    const double dz = sol.m * z;
    const double ia = bessel_i(-0.5 + wm, z, true);
    const double ib = bessel_i(0.5 + wm, z, true);
    const double dia = scaled_i_deriv(-0.5 + wm, z);
    const double dib = scaled_i_deriv(0.5 + wm, z);
    p1.v = 0.5 * pre * (ia + ib);
    p1.d = 0.5 * pre * (0.5 * sol.m * (ia + ib) + dz * (dia + dib));

    const double kc = bessel_k(0.5 - wm, z, true);
    const double kd = bessel_k(0.5 + wm, z, true);
    const double dkc = scaled_k_deriv(0.5 - wm, z);
    const double dkd = scaled_k_deriv(0.5 + wm, z);
    const double e2z = std::exp(-2.0 * z);
    p2.v = pre * e2z * (kc - kd);
    p2.d = pre * e2z *
           ((0.5 * sol.m - 2.0 * dz) * (kc - kd) + dz * (dkc - dkd));
}

void fundamental_pair(const ClosedFormSolution& sol, double t, ValueDeriv& p1,
                      ValueDeriv& p2) {
    check_params(sol);
    switch (sol.family) {
        case SolutionFamily::Ex3m2:
            ex3m2_pair(sol, t, p1, p2);
            return;
        case SolutionFamily::Ex4:
            ex4_pair(sol, t, p1, p2);
            return;
        case SolutionFamily::Ex5x:
            ex5x_pair(sol, t, p1, p2);
            return;
    }
    throw Error("unreachable");
}

} // namespace

double solution_eval(const ClosedFormSolution& sol, double t) {
    ValueDeriv p1{}, p2{};
    fundamental_pair(sol, t, p1, p2);
    return sol.c1 * p1.v + sol.c2 * p2.v;
}

double solution_derivative(const ClosedFormSolution& sol, double t) {
    ValueDeriv p1{}, p2{};
    fundamental_pair(sol, t, p1, p2);
    return sol.c1 * p1.d + sol.c2 * p2.d;
}

double asymptotic_limit(const ClosedFormSolution& sol) {
    check_params(sol);
    switch (sol.family) {
        case SolutionFamily::Ex3m2:
            return sol.c1 / std::sqrt(M_PI * sol.beta);
        case SolutionFamily::Ex4: {
            const double nu = sol.beta / sol.m;
            const double pw = std::pow(sol.omega / sol.m, -nu);
            // K-term limit plus the I-term constant (vanishes at integer nu).
            const double k_term = 0.5 * gamma_fn(nu) * pw;
            const double i_term = gamma_fn(nu) * sin_pi(nu) / M_PI * pw; // 1/Gamma(1-nu)
            return sol.c2 * k_term + sol.c1 * i_term;
        }
        case SolutionFamily::Ex5x:
            return sol.c1 / std::sqrt(M_PI) * std::sqrt(sol.m / sol.beta);
    }
    throw Error("unreachable");
}

CoefficientProfile family_alpha(const ClosedFormSolution& sol) {
    check_params(sol);
    switch (sol.family) {
        case SolutionFamily::Ex3m2:
        case SolutionFamily::Ex4:
            return CoefficientProfile::constant(sol.beta);
        case SolutionFamily::Ex5x:
            return CoefficientProfile::exponential(sol.beta, sol.m);
    }
    throw Error("unreachable");
}

CoefficientProfile family_stiffness(const ClosedFormSolution& sol) {
    check_params(sol);
    const double w2 = sol.omega * sol.omega;
    switch (sol.family) {
        case SolutionFamily::Ex3m2:
            return CoefficientProfile::power_law(w2, -2.0, 1e-8);
        case SolutionFamily::Ex4:
            return CoefficientProfile::exponential(w2, -sol.m);
        case SolutionFamily::Ex5x:
            return CoefficientProfile::constant(w2);
    }
    throw Error("unreachable");
}

ClosedFormSolution fit_constants(SolutionFamily family, double beta, double omega,
                                 double m, const PlanarState& x0) {
    ClosedFormSolution sol{family, beta, omega, m, 1.0, 0.0};
    ValueDeriv p1{}, p2{};
    fundamental_pair(sol, x0.t, p1, p2);
    const double det = p1.v * p2.d - p2.v * p1.d;
    const double scale = std::max({std::abs(p1.v * p2.d), std::abs(p2.v * p1.d), 1e-300});
    if (std::abs(det) <= 1e-13 * scale) {
        throw NumericalError("fundamental solution pair degenerates at the fit time");
    }
    sol.c1 = (x0.x1 * p2.d - x0.x2 * p2.v) / det;
    sol.c2 = (x0.x2 * p1.v - x0.x1 * p1.d) / det;
    return sol;
}

} // namespace stifflab
