#include "stiffness_lab/certificates.hpp"

#include <cmath>

#include "stiffness_lab/criteria.hpp"

namespace stifflab {

double v_eval(const Certificate& cert, const PlanarState& s) {
    switch (cert.kind) {
        case CertificateKind::LyapunovK:
            return 0.5 * cert.profile.value(s.t) * s.x1 * s.x1 + 0.5 * s.x2 * s.x2;
        case CertificateKind::LyapunovAlpha: {
            const double a = cert.profile.value(s.t);
            if (a == 0.0) {
                throw DomainError("certificate undefined where alpha(t) = 0");
            }
            return 0.5 / a * s.x1 * s.x1 + 0.5 * s.x2 * s.x2;
        }
        case CertificateKind::Chetaev:
            return 0.5 * cert.profile.value(s.t) * s.x1 * s.x1 - 0.5 * s.x2 * s.x2;
    }
    throw Error("unreachable");
}

double vdot_eval(const Certificate& cert, const PlanarState& s, double damping) {
    switch (cert.kind) {
        case CertificateKind::LyapunovK: {
            const Eval k = cert.profile.eval(s.t);
            return 0.5 * k.derivative * s.x1 * s.x1 + 2.0 * k.value * s.x1 * s.x2 -
                   damping * s.x2 * s.x2;
        }
        case CertificateKind::LyapunovAlpha:
            return vdot_matrix_thm2(damping, cert.profile, s.t).quad(s.x1, s.x2);
        case CertificateKind::Chetaev: {
            const Eval k = cert.profile.eval(s.t);
            return 0.5 * k.derivative * s.x1 * s.x1 + damping * s.x2 * s.x2;
        }
    }
    throw Error("unreachable");
}

CertificateTrace trace_along(const Certificate& cert, const Trajectory& traj,
                             double damping, double step_tol) {
    if (traj.states.empty()) {
        throw DomainError("cannot trace a certificate along an empty trajectory");
    }
    CertificateTrace trace;
    trace.samples.reserve(traj.states.size());
    for (const auto& s : traj.states) {
        trace.samples.push_back({s.t, v_eval(cert, s), vdot_eval(cert, s, damping), 0.0});
    }
    const auto n = trace.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        // centered difference in the interior, one-sided at the ends
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        const double dt = trace.samples[hi].t - trace.samples[lo].t;
        trace.samples[i].dvdt_numeric =
            dt > 0.0 ? (trace.samples[hi].v - trace.samples[lo].v) / dt
                     : trace.samples[i].dvdt_analytic;
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double prev = trace.samples[i - 1].v;
        const double cur = trace.samples[i].v;
        const double tol = step_tol * std::max(1.0, std::abs(prev));
        if (cur > prev + tol) {
            trace.monotone_decreasing = false;
        }
        if (cur < prev - tol) {
            trace.monotone_increasing = false;
        }
    }
    return trace;
}

} // namespace stifflab
