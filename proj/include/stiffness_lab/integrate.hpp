#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stiffness_lab/profile.hpp"

namespace stifflab {

struct CertificateTrace; // certificates.hpp

/// Phase-plane state (x1 = position, x2 = velocity) at time t.
struct PlanarState {
    double t = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double norm() const;
};

enum class Classification { Bounded, Escaped, Inconclusive };

struct TrajectoryStats {
    long steps_accepted = 0;
    long steps_rejected = 0;
    double max_norm = 0.0;
    double max_norm_final_half = 0.0; // over t >= (t0 + horizon)/2
};

struct Trajectory {
    std::vector<PlanarState> states;
    Classification classification = Classification::Inconclusive;
    std::optional<double> escape_time;
    TrajectoryStats stats;
};

struct IntegrationConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double horizon = 100.0;          // final time (absolute, not an offset)
    double escape_radius = 0.0;      // <= 0: auto 1e6 * max(1, ||x0||)
    long max_steps = 10'000'000;
    double max_step = 0.0;           // <= 0: unrestricted
    int samples = 1000;              // uniform recording grid (plus endpoints)
    std::vector<double> extra_sample_times{}; // additional recording times
    double bound_factor = 10.0;      // B in the boundedness heuristic
};

/// Right-hand side of the planar system: (x1', x2') = (x2, k(t) x1 - alpha(t) x2).
std::pair<double, double> rhs(const PlanarState& s, const CoefficientProfile& alpha,
                              const CoefficientProfile& k);

/// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) with cubic-Hermite
/// dense output, escape-event bisection and a three-way boundedness
/// classification. Integrates from x0.t to cfg.horizon.
Trajectory integrate(const CoefficientProfile& alpha, const CoefficientProfile& k,
                     const PlanarState& x0, const IntegrationConfig& cfg = {});

/// Escaped if the escape event fired; Bounded if the horizon was reached, the
/// norm over the final half of the horizon stayed within bound_factor*||x0||
/// and (when given) the certificate trace is monotone decreasing; otherwise
/// Inconclusive.
Classification classify(const Trajectory& traj, const CertificateTrace* trace = nullptr,
                        double bound_factor = 10.0);

const char* to_string(Classification c);

} // namespace stifflab
