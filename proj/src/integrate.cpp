#include "stiffness_lab/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "stiffness_lab/certificates.hpp"

namespace stifflab {

double PlanarState::norm() const { return std::hypot(x1, x2); }

std::pair<double, double> rhs(const PlanarState& s, const CoefficientProfile& alpha,
                              const CoefficientProfile& k) {
    return {s.x2, k.value(s.t) * s.x1 - alpha.value(s.t) * s.x2};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Vec2 {
    double x1, x2;
};

struct Hermite {
    // cubic between (t0, y0, f0) and (t1, y1, f1)
    double t0, h;
    Vec2 y0, y1, f0, f1;
    Vec2 at(double t) const {
        const double s = (t - t0) / h;
        const double s2 = s * s;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s2 * (3 - 2 * s);
        const double h11 = s2 * (s - 1);
        return {h00 * y0.x1 + h10 * h * f0.x1 + h01 * y1.x1 + h11 * h * f1.x1,
                h00 * y0.x2 + h10 * h * f0.x2 + h01 * y1.x2 + h11 * h * f1.x2};
    }
};

} // namespace

Trajectory integrate(const CoefficientProfile& alpha, const CoefficientProfile& k,
                     const PlanarState& x0, const IntegrationConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
        throw DomainError("integration tolerances must be positive");
    }
    if (!(cfg.horizon > x0.t)) {
        throw DomainError("horizon must exceed the initial time");
    }
    const double t_end = cfg.horizon;
    const double x0_norm = x0.norm();
    const double r_escape =
        cfg.escape_radius > 0.0 ? cfg.escape_radius : 1e6 * std::max(1.0, x0_norm);
    const double t_half = 0.5 * (x0.t + t_end);

    // recording grid: uniform samples plus caller-requested times
    std::vector<double> record;
    record.reserve(static_cast<std::size_t>(std::max(cfg.samples, 0)) +
                   cfg.extra_sample_times.size());
    for (int i = 1; i <= cfg.samples; ++i) {
        record.push_back(x0.t + (t_end - x0.t) * static_cast<double>(i) / cfg.samples);
    }
    for (double t : cfg.extra_sample_times) {
        if (t > x0.t && t <= t_end) {
            record.push_back(t);
        }
    }
    std::sort(record.begin(), record.end());
    record.erase(std::unique(record.begin(), record.end()), record.end());
    std::size_t next_record = 0;

    Trajectory traj;
    traj.states.push_back(x0);
    traj.stats.max_norm = x0_norm;

    auto eval_rhs = [&](double t, const Vec2& y) -> Vec2 {
        return {y.x2, k.value(t) * y.x1 - alpha.value(t) * y.x2};
    };

    double t = x0.t;
    Vec2 y{x0.x1, x0.x2};
    Vec2 f = eval_rhs(t, y);

    auto err_scale = [&](double a, double b) {
        return cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a), std::abs(b));
    };

    // initial step from the local derivative scale
    double h;
    {
        const double d0 = std::max(std::hypot(y.x1, y.x2), 1e-8);
        const double d1 = std::max(std::hypot(f.x1, f.x2), 1e-8);
        h = std::min(0.01 * d0 / d1, (t_end - t) / 10.0);
        if (cfg.max_step > 0.0) {
            h = std::min(h, cfg.max_step);
        }
    }

    bool last_rejected = false;
    while (t < t_end) {
        if (traj.stats.steps_accepted + traj.stats.steps_rejected >= cfg.max_steps) {
            throw MaxStepsExceeded("integration exceeded max_steps");
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            throw StepUnderflow("integration step size underflow");
        }
        h = std::min(h, t_end - t);

        const Vec2 k1 = f;
        Vec2 yt{y.x1 + h * a21 * k1.x1, y.x2 + h * a21 * k1.x2};
        const Vec2 k2 = eval_rhs(t + c2 * h, yt);
        yt = {y.x1 + h * (a31 * k1.x1 + a32 * k2.x1), y.x2 + h * (a31 * k1.x2 + a32 * k2.x2)};
        const Vec2 k3 = eval_rhs(t + c3 * h, yt);
        yt = {y.x1 + h * (a41 * k1.x1 + a42 * k2.x1 + a43 * k3.x1),
              y.x2 + h * (a41 * k1.x2 + a42 * k2.x2 + a43 * k3.x2)};
        const Vec2 k4 = eval_rhs(t + c4 * h, yt);
        yt = {y.x1 + h * (a51 * k1.x1 + a52 * k2.x1 + a53 * k3.x1 + a54 * k4.x1),
              y.x2 + h * (a51 * k1.x2 + a52 * k2.x2 + a53 * k3.x2 + a54 * k4.x2)};
        const Vec2 k5 = eval_rhs(t + c5 * h, yt);
        yt = {y.x1 + h * (a61 * k1.x1 + a62 * k2.x1 + a63 * k3.x1 + a64 * k4.x1 + a65 * k5.x1),
              y.x2 + h * (a61 * k1.x2 + a62 * k2.x2 + a63 * k3.x2 + a64 * k4.x2 + a65 * k5.x2)};
        const Vec2 k6 = eval_rhs(t + h, yt);
        const Vec2 ynew{y.x1 + h * (b1 * k1.x1 + b3 * k3.x1 + b4 * k4.x1 + b5 * k5.x1 + b6 * k6.x1),
                        y.x2 + h * (b1 * k1.x2 + b3 * k3.x2 + b4 * k4.x2 + b5 * k5.x2 + b6 * k6.x2)};
        const Vec2 k7 = eval_rhs(t + h, ynew); // FSAL

        const double err1 =
            h * (e1 * k1.x1 + e3 * k3.x1 + e4 * k4.x1 + e5 * k5.x1 + e6 * k6.x1 + e7 * k7.x1);
        const double err2 =
            h * (e1 * k1.x2 + e3 * k3.x2 + e4 * k4.x2 + e5 * k5.x2 + e6 * k6.x2 + e7 * k7.x2);
        const double s1 = err1 / err_scale(y.x1, ynew.x1);
        const double s2 = err2 / err_scale(y.x2, ynew.x2);
        const double err = std::sqrt(0.5 * (s1 * s1 + s2 * s2));

        if (!std::isfinite(err) || err > 1.0) {
            ++traj.stats.steps_rejected;
            last_rejected = true;
            const double fac = std::isfinite(err)
                                   ? std::max(0.2, 0.9 * std::pow(err, -0.2))
                                   : 0.2;
            h *= std::min(fac, 1.0);
            continue;
        }

        const Hermite dense{t, h, y, ynew, k1, k7};
        const double t_new = t + h;

        // escape event: bisect the dense interpolant for the crossing time
        const double n_new = std::hypot(ynew.x1, ynew.x2);
        if (n_new >= r_escape) {
            double lo = t;
            double hi = t_new;
            while (hi - lo > 1e-10 * std::max(1.0, std::abs(hi))) {
                const double mid = 0.5 * (lo + hi);
                const Vec2 ym = dense.at(mid);
                (std::hypot(ym.x1, ym.x2) >= r_escape ? hi : lo) = mid;
            }
            const Vec2 ye = dense.at(hi);
            const PlanarState escape_state{hi, ye.x1, ye.x2};
            ++traj.stats.steps_accepted;
            traj.stats.max_norm = std::max(traj.stats.max_norm, escape_state.norm());
            if (hi >= t_half) {
                traj.stats.max_norm_final_half =
                    std::max(traj.stats.max_norm_final_half, escape_state.norm());
            }
            traj.states.push_back(escape_state);
            traj.escape_time = hi;
            traj.classification = Classification::Escaped;
            return traj;
        }

        // record dense samples covered by this step
        while (next_record < record.size() && record[next_record] <= t_new) {
            const double ts = record[next_record];
            const Vec2 ys = dense.at(ts);
            traj.states.push_back({ts, ys.x1, ys.x2});
            ++next_record;
        }

        ++traj.stats.steps_accepted;
        t = t_new;
        y = ynew;
        f = k7;
        traj.stats.max_norm = std::max(traj.stats.max_norm, n_new);
        if (t >= t_half) {
            traj.stats.max_norm_final_half = std::max(traj.stats.max_norm_final_half, n_new);
        }

        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 10.0);
        if (last_rejected) {
            fac = std::min(fac, 1.0);
        }
        last_rejected = false;
        h *= fac;
        if (cfg.max_step > 0.0) {
            h = std::min(h, cfg.max_step);
        }
    }

    if (traj.states.back().t < t_end) {
        traj.states.push_back({t, y.x1, y.x2});
    }
    traj.classification = classify(traj, nullptr, cfg.bound_factor);
    return traj;
}

Classification classify(const Trajectory& traj, const CertificateTrace* trace,
                        double bound_factor) {
    if (traj.escape_time.has_value()) {
        return Classification::Escaped;
    }
    if (traj.states.empty()) {
        return Classification::Inconclusive;
    }
    const double x0_norm = traj.states.front().norm();
    const bool tail_bounded = traj.stats.max_norm_final_half <= bound_factor * x0_norm;
    const bool certificate_ok = trace == nullptr || trace->monotone_decreasing;
    return tail_bounded && certificate_ok ? Classification::Bounded
                                          : Classification::Inconclusive;
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::Bounded:
            return "bounded";
        case Classification::Escaped:
            return "escaped";
        case Classification::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

} // namespace stifflab
