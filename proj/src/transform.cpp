#include "stiffness_lab/transform.hpp"

#include <cmath>

#include "numerics.hpp"

namespace stifflab {

namespace {

constexpr double kCondEps = 1e-12;

void require_pure(const Gauge& gauge) {
    if (!gauge.profile.is_pure()) {
        throw DomainError("time gauges must be pure coefficient families");
    }
}

int compare_strict(double lhs, double rhs) {
    const double margin = lhs - rhs;
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (margin > kCondEps * scale) {
        return 1;
    }
    if (margin < -kCondEps * scale) {
        return -1;
    }
    return 0;
}

struct ConditionAccumulator {
    Condition cond;
    explicit ConditionAccumulator(std::string label) { cond.label = std::move(label); }
    void observe(double t, int cmp) {
        if (cmp < 0 && cond.status != ConditionStatus::Fails) {
            cond.status = ConditionStatus::Fails;
            cond.first_violation_time = t;
        } else if (cmp == 0 && cond.status == ConditionStatus::Holds) {
            cond.status = ConditionStatus::Marginal;
        }
    }
};

std::vector<double> window_grid(Window w, int grid) {
    if (!(w.end > w.start) || grid < 2) {
        throw DomainError("invalid analysis window or grid");
    }
    std::vector<double> ts(grid);
    const bool log_spaced = w.start > 0.0;
    for (int i = 0; i < grid; ++i) {
        const double u = static_cast<double>(i) / (grid - 1);
        ts[i] = log_spaced ? w.start * std::pow(w.end / w.start, u)
                           : w.start + (w.end - w.start) * u;
    }
    return ts;
}

} // namespace

TransformedSystem reparametrize(const Gauge& gauge, double beta, double omega) {
    require_pure(gauge);
    const CoefficientProfile& f = gauge.profile;
    const double n = gauge.n;
    const double w2 = omega * omega;
    switch (gauge.direction) {
        case GaugeDirection::Thm1Base:
            return {f.pow(0.5 * n).scaled(beta) + f.log_derivative().scaled(-0.5 * n),
                    f.pow(n + 1.0).scaled(w2)};
        case GaugeDirection::Thm2Base:
            return {f.pow(0.5 * n + 1.0).scaled(beta) + f.log_derivative().scaled(-0.5 * n),
                    f.pow(n).scaled(w2)};
    }
    throw Error("unreachable");
}

CriterionReport corollary_condition_check(const Gauge& gauge, double beta, double omega,
                                          Window window, int grid) {
    require_pure(gauge);
    if (!(beta > 0.0)) {
        throw HypothesisError("corollary checks require beta > 0");
    }
    const bool thm1 = gauge.direction == GaugeDirection::Thm1Base;
    const double n = gauge.n;
    const double w2 = omega * omega;

    CriterionReport report;
    report.window = window;

    ConditionAccumulator sign("gauge_positive");
    ConditionAccumulator mono(thm1 ? "gauge_decreasing" : "gauge_increasing");
    ConditionAccumulator rate("corollary_rate");
    for (const double tau : window_grid(window, grid)) {
        const Eval e = gauge.profile.eval(tau);
        sign.observe(tau, compare_strict(e.value, 0.0));
        if (!(e.value > 0.0)) {
            mono.observe(tau, -1);
            rate.observe(tau, -1);
            continue;
        }
        if (thm1) {
            mono.observe(tau, compare_strict(0.0, e.derivative));
            // f^{-n/2} (1/f)' > 2 omega^2 / beta
            const double lhs = std::pow(e.value, -0.5 * n) *
                               (-e.derivative / (e.value * e.value));
            rate.observe(tau, compare_strict(lhs, 2.0 * w2 / beta));
        } else {
            mono.observe(tau, compare_strict(e.derivative, 0.0));
            // d ln g / d tau > g^{n/2} (1/(beta g) + omega^2)^2 / 2
            const double r = 1.0 / (beta * e.value) + w2;
            const double rhs = 0.5 * std::pow(e.value, 0.5 * n) * r * r;
            rate.observe(tau, compare_strict(e.derivative / e.value, rhs));
        }
    }
    report.conditions = {sign.cond, mono.cond, rate.cond};
    report.overall =
        report.all_hold() ? Overall::SufficientForBounded : Overall::Inconclusive;
    return report;
}

double time_map(const Gauge& gauge, double tau0, double tau) {
    require_pure(gauge);
    const double n = gauge.n;
    auto integrand = [&](double s) {
        const double v = gauge.profile.value(s);
        if (!(v > 0.0)) {
            throw DomainError("gauge must stay positive along the time map");
        }
        return std::pow(v, 0.5 * n);
    };
    if (tau == tau0) {
        return 0.0;
    }
    return tau > tau0 ? detail::adaptive_simpson(integrand, tau0, tau)
                      : -detail::adaptive_simpson(integrand, tau, tau0);
}

double inverse_time_map(const Gauge& gauge, double tau0, double t) {
    require_pure(gauge);
    if (t == 0.0) {
        return tau0;
    }
    auto g = [&](double tau) { return time_map(gauge, tau0, tau) - t; };
    auto dg = [&](double tau) { return std::pow(gauge.profile.value(tau), 0.5 * gauge.n); };

    // bracket the root by doubling outward from tau0
    double lo = tau0;
    double hi = tau0;
    double step = 1.0;
    if (t > 0.0) {
        for (int i = 0; g(hi) < 0.0; ++i) {
            if (i > 200) {
                throw NumericalError("inverse time map failed to bracket");
            }
            lo = hi;
            hi += step;
            step *= 2.0;
        }
    } else {
        for (int i = 0; g(lo) > 0.0; ++i) {
            if (i > 200) {
                throw NumericalError("inverse time map failed to bracket");
            }
            hi = lo;
            lo -= step;
            step *= 2.0;
        }
    }
    const double tol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    return detail::increasing_root(g, dg, lo, hi, tol);
}

CoefficientProfile pullback_coefficient(const Gauge& gauge, double scale, double tau0) {
    require_pure(gauge);
    return CoefficientProfile::pullback(gauge.profile, gauge.profile, gauge.n, tau0, scale);
}

} // namespace stifflab
