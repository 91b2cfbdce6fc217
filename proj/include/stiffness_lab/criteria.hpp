#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stiffness_lab/profile.hpp"

namespace stifflab {

enum class ConditionStatus { Holds, Fails, Marginal };
enum class Overall { SufficientForBounded, NecessaryViolated, Inconclusive };

struct Condition {
    std::string label;
    ConditionStatus status = ConditionStatus::Holds;
    std::optional<double> first_violation_time; // present iff status == Fails
    std::string note;
};

struct Window {
    double start;
    double end;
};

struct CriterionReport {
    std::vector<Condition> conditions;
    Window window{};
    Overall overall = Overall::Inconclusive;

    const Condition& condition(const std::string& label) const;
    bool all_hold() const;
};

/// 2x2 symmetric matrix; a21 == a12 implied.
struct SymmetricMatrix2 {
    double a11, a12, a22;
    double det() const { return a11 * a22 - a12 * a12; }
    double quad(double x1, double x2) const {
        return a11 * x1 * x1 + 2.0 * a12 * x1 * x2 + a22 * x2 * x2;
    }
};

/// Leading-principal-minor test: a11 < 0 and det > 0.
bool negdef_check(const SymmetricMatrix2& m);

/// Flow-derivative matrix of the stiffness-weighted energy certificate:
/// [[k'(t)/2, k(t)], [k(t), -beta]].
SymmetricMatrix2 vdot_matrix_thm1(double beta, const CoefficientProfile& k, double t);

/// Flow-derivative matrix of the damping-weighted certificate:
/// [[d/dt(1/alpha)/2, (1/alpha + omega^2)/2], [sym, -alpha]].
SymmetricMatrix2 vdot_matrix_thm2(double omega, const CoefficientProfile& alpha, double t);

/// Raw pointwise predicates (strict inequalities, no tolerance band).
bool thm1_pointwise(double beta, double k, double kdot);
bool thm2_pointwise(double omega, double alpha, double alphadot);

/// Boundedness conditions for constant damping beta and decaying stiffness
/// coefficient k(t): beta > 0, k'(t) < 0, -k'(t)/k(t)^2 > 2/beta on the window.
/// Requires k strictly positive on the window (HypothesisError otherwise).
CriterionReport thm1_check(double beta, const CoefficientProfile& k, Window window,
                           int grid = 512);

/// Boundedness conditions for constant stiffness omega^2 and growing damping
/// alpha(t): alpha > 0, alpha' > 0, d/dt ln alpha > (1/alpha + omega^2)^2 / 2.
CriterionReport thm2_check(double omega, const CoefficientProfile& alpha, Window window,
                           int grid = 512);

struct ChetaevResult {
    bool unstable_certified = false;
    double cone_slope = 0.0; // sqrt(k(t0)); boundary x2 = +- slope * x1
    /// For constant k with a saddle, the positive eigenvalue -beta/2 + sqrt(beta^2+4k)/2.
    std::optional<double> saddle_growth_rate;
};

/// Certifies instability of the trivial solution when beta > 0 and k is
/// positive and increasing on [t0, t0 + horizon] (sampled).
ChetaevResult chetaev_instability_check(double beta, const CoefficientProfile& k,
                                        double t0, double horizon = 100.0,
                                        int grid = 512);

const char* to_string(ConditionStatus s);
const char* to_string(Overall o);

} // namespace stifflab
