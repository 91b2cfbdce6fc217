#include "stiffness_lab/criteria.hpp"

#include <algorithm>
#include <cmath>

namespace stifflab {

namespace {

constexpr double kCondEps = 1e-12; // relative margin separating Marginal from Holds/Fails

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

/// Classifies the strict inequality lhs > rhs with a relative tolerance band.
int compare_strict(double lhs, double rhs) {
    const double margin = lhs - rhs;
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (margin > kCondEps * scale) {
        return 1; // holds
    }
    if (margin < -kCondEps * scale) {
        return -1; // fails
    }
    return 0; // marginal
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

} // namespace

const Condition& CriterionReport::condition(const std::string& label) const {
    for (const auto& c : conditions) {
        if (c.label == label) {
            return c;
        }
    }
    throw Error("no condition labeled '" + label + "'");
}

bool CriterionReport::all_hold() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const Condition& c) { return c.status == ConditionStatus::Holds; });
}

bool negdef_check(const SymmetricMatrix2& m) { return m.a11 < 0.0 && m.det() > 0.0; }

SymmetricMatrix2 vdot_matrix_thm1(double beta, const CoefficientProfile& k, double t) {
    const Eval e = k.eval(t);
    return {0.5 * e.derivative, e.value, -beta};
}

SymmetricMatrix2 vdot_matrix_thm2(double omega, const CoefficientProfile& alpha, double t) {
    const Eval e = alpha.eval(t);
    const double inv_deriv = -e.derivative / (e.value * e.value); // d/dt (1/alpha)
    return {0.5 * inv_deriv, 0.5 * (1.0 / e.value + omega * omega), -e.value};
}

bool thm1_pointwise(double beta, double k, double kdot) {
    return beta > 0.0 && kdot < 0.0 && -kdot / (k * k) > 2.0 / beta;
}

bool thm2_pointwise(double omega, double alpha, double alphadot) {
    if (!(alpha > 0.0) || !(alphadot > 0.0)) {
        return false;
    }
    const double r = 1.0 / alpha + omega * omega;
    return alphadot / alpha > 0.5 * r * r;
}

CriterionReport thm1_check(double beta, const CoefficientProfile& k, Window window,
                           int grid) {
    if (!std::isfinite(beta)) {
        throw DomainError("beta must be finite");
    }
    if (sign_on_window(k, window.start, window.end, grid) != SignVerdict::StrictlyPositive) {
        throw HypothesisError("stiffness coefficient k must be strictly positive on the window");
    }

    CriterionReport report;
    report.window = window;

    Condition cond1;
    cond1.label = "beta_positive";
    const int c1 = compare_strict(beta, 0.0);
    cond1.status = c1 > 0   ? ConditionStatus::Holds
                   : c1 < 0 ? ConditionStatus::Fails
                            : ConditionStatus::Marginal;
    if (beta == 0.0) {
        cond1.status = ConditionStatus::Fails;
        cond1.note = "zero damping: solutions grow at least linearly even as k -> 0";
    }
    if (cond1.status == ConditionStatus::Fails) {
        cond1.first_violation_time = window.start;
    }

    ConditionAccumulator cond2("k_decreasing");
    ConditionAccumulator cond3("decay_rate"); // -k'/k^2 > 2/beta
    for (const double t : window_grid(window, grid)) {
        const Eval e = k.eval(t);
        cond2.observe(t, compare_strict(0.0, e.derivative));
        if (beta > 0.0) {
            cond3.observe(t, compare_strict(-e.derivative / (e.value * e.value), 2.0 / beta));
        }
    }
    if (!(beta > 0.0)) {
        cond3.cond.status = ConditionStatus::Fails;
        cond3.cond.first_violation_time = window.start;
        cond3.cond.note = "undefined for beta <= 0";
    }

    report.conditions = {cond1, cond2.cond, cond3.cond};
    if (report.all_hold()) {
        report.overall = Overall::SufficientForBounded;
    } else if (cond1.status == ConditionStatus::Fails ||
               cond2.cond.status == ConditionStatus::Fails) {
        // conditions 1-2 are necessary for stability of the trivial solution
        report.overall = Overall::NecessaryViolated;
    } else {
        report.overall = Overall::Inconclusive;
    }
    return report;
}

CriterionReport thm2_check(double omega, const CoefficientProfile& alpha, Window window,
                           int grid) {
    if (!std::isfinite(omega)) {
        throw DomainError("omega must be finite");
    }
    CriterionReport report;
    report.window = window;

    ConditionAccumulator cond1("alpha_positive");
    ConditionAccumulator cond2("alpha_increasing");
    ConditionAccumulator cond3("growth_rate"); // d/dt ln alpha > (1/alpha + omega^2)^2 / 2
    for (const double t : window_grid(window, grid)) {
        const Eval e = alpha.eval(t);
        cond1.observe(t, compare_strict(e.value, 0.0));
        cond2.observe(t, compare_strict(e.derivative, 0.0));
        if (e.value > 0.0) {
            const double r = 1.0 / e.value + omega * omega;
            cond3.observe(t, compare_strict(e.derivative / e.value, 0.5 * r * r));
        } else {
            cond3.observe(t, -1);
        }
    }
    report.conditions = {cond1.cond, cond2.cond, cond3.cond};
    // All three together are sufficient; none is claimed necessary here.
    report.overall = report.all_hold() ? Overall::SufficientForBounded : Overall::Inconclusive;
    return report;
}

ChetaevResult chetaev_instability_check(double beta, const CoefficientProfile& k,
                                        double t0, double horizon, int grid) {
    const SignVerdict sign = sign_on_window(k, t0, t0 + horizon, grid);
    if (sign != SignVerdict::StrictlyPositive) {
        throw HypothesisError("cone construction requires k > 0 near t0");
    }

    ChetaevResult res;
    res.cone_slope = std::sqrt(k.value(t0));

    bool kdot_positive = beta > 0.0;
    bool kdot_zero_everywhere = true;
    for (int i = 0; i < grid && kdot_positive; ++i) {
        const double t = t0 + horizon * static_cast<double>(i) / (grid - 1);
        const double kd = k.derivative(t);
        kdot_positive = kd > 0.0;
        kdot_zero_everywhere = kdot_zero_everywhere && kd == 0.0;
    }
    res.unstable_certified = kdot_positive;

    if (!res.unstable_certified && k.kind() == CoefficientProfile::Kind::Constant) {
        // Frozen-coefficient saddle: lambda+ = -beta/2 + sqrt(beta^2 + 4k)/2.
        const double lambda = -0.5 * beta + 0.5 * std::sqrt(beta * beta + 4.0 * k.value(t0));
        if (lambda > 0.0) {
            res.saddle_growth_rate = lambda;
        }
    }
    (void)kdot_zero_everywhere;
    return res;
}

const char* to_string(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Holds:
            return "holds";
        case ConditionStatus::Fails:
            return "fails";
        case ConditionStatus::Marginal:
            return "marginal";
    }
    return "?";
}

const char* to_string(Overall o) {
    switch (o) {
        case Overall::SufficientForBounded:
            return "sufficient_for_bounded";
        case Overall::NecessaryViolated:
            return "necessary_violated";
        case Overall::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

} // namespace stifflab
