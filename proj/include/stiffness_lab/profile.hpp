#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "stiffness_lab/errors.hpp"

namespace stifflab {

/// Value and exact first derivative of a coefficient function at one time.
struct Eval {
    double value;
    double derivative;
};

enum class SignVerdict {
    StrictlyPositive,
    StrictlyNegative,
    ChangesSign,
    NonStrict, // touches or equals zero somewhere
};

/// A closed-form scalar coefficient function of time, with exact derivative.
///
/// Supported families: constant c, power law a*t^p, exponential a*e^{r t},
/// affine combinations of those, and the pullback base(tau(t)) of a profile
/// through a monotone time gauge (see transform.hpp).
///
/// Immutable value type; cheap to copy (shared immutable nodes).
class CoefficientProfile {
public:
    enum class Kind { Constant, PowerLaw, Exponential, Sum, Pullback };

    static CoefficientProfile constant(double c);
    /// a * t^p. For p < 0 the default domain start is 1 (avoids the t = 0
    /// singularity); for p >= 0 it is 0. Fractional p requires t >= 0.
    static CoefficientProfile power_law(double a, double p,
                                        std::optional<double> domain_start = std::nullopt);
    static CoefficientProfile exponential(double a, double r);
    static CoefficientProfile sum(std::vector<CoefficientProfile> terms);
    /// base(tau(t)) where tau solves t = integral_{tau0}^{tau} gauge(s)^{n/2} ds.
    /// Domain starts at t = 0 (the image of tau0).
    static CoefficientProfile pullback(CoefficientProfile base, CoefficientProfile gauge,
                                       double n, double tau0, double amplitude = 1.0);

    Kind kind() const;
    double domain_start() const;
    bool is_pure() const; // Constant, PowerLaw or Exponential

    /// (value, exact derivative) at t. Throws DomainError for t below the
    /// domain start, OverflowError on non-finite or > 1e308 results.
    Eval eval(double t) const;
    double value(double t) const { return eval(t).value; }
    double derivative(double t) const { return eval(t).derivative; }

    /// This profile scaled by s.
    CoefficientProfile scaled(double s) const;
    /// Pointwise power; defined for pure families with positive amplitude.
    CoefficientProfile pow(double s) const;
    /// Exact logarithmic derivative f'/f as a profile; pure families only.
    CoefficientProfile log_derivative() const;

    // Field accessors for introspection/serialization. Only valid for the
    // matching kind.
    double amplitude() const;  // c, a, a, -, amplitude
    double exponent() const;   // -, p, r, -, -
    const std::vector<CoefficientProfile>& terms() const;      // Sum
    const CoefficientProfile& pullback_base() const;           // Pullback
    const CoefficientProfile& pullback_gauge() const;          // Pullback
    double pullback_n() const;                                 // Pullback
    double pullback_tau0() const;                              // Pullback

private:
    struct Node;
    explicit CoefficientProfile(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

CoefficientProfile operator*(double s, const CoefficientProfile& p);
CoefficientProfile operator+(const CoefficientProfile& a, const CoefficientProfile& b);

/// Sign of a profile over [t_a, t_b]. Pure families are decided exactly;
/// everything else is sampled on a log-spaced grid of `grid` points
/// (linear spacing when t_a <= 0).
SignVerdict sign_on_window(const CoefficientProfile& profile, double t_a, double t_b,
                           int grid = 256);

} // namespace stifflab
