#pragma once

#include <vector>

#include "stiffness_lab/integrate.hpp"
#include "stiffness_lab/profile.hpp"

namespace stifflab {

enum class CertificateKind {
    LyapunovK,     // k(t) x1^2 / 2 + x2^2 / 2
    LyapunovAlpha, // x1^2 / (2 alpha(t)) + x2^2 / 2
    Chetaev,       // k(t) x1^2 / 2 - x2^2 / 2
};

/// A certificate function bound to its coefficient profile (k for
/// LyapunovK/Chetaev, alpha for LyapunovAlpha).
struct Certificate {
    CertificateKind kind;
    CoefficientProfile profile;
};

struct TraceSample {
    double t;
    double v;
    double dvdt_analytic;
    double dvdt_numeric;
};

struct CertificateTrace {
    std::vector<TraceSample> samples;
    bool monotone_decreasing = true;
    bool monotone_increasing = true;
};

double v_eval(const Certificate& cert, const PlanarState& state);

/// Flow derivative of the certificate. `damping` is beta for
/// LyapunovK/Chetaev and omega for LyapunovAlpha (constant-stiffness form).
double vdot_eval(const Certificate& cert, const PlanarState& state, double damping);

/// Evaluates V and dV/dt (analytic and centered-difference) along a
/// trajectory's recorded samples. V may drift against the monotone direction
/// by at most step_tol * max(1, V) per step before the flag flips.
CertificateTrace trace_along(const Certificate& cert, const Trajectory& traj,
                             double damping, double step_tol = 1e-9);

} // namespace stifflab
