#include "stiffness_lab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "numerics.hpp"

namespace stifflab {

namespace {

constexpr double kOverflowLimit = 1e308;
constexpr double kNoDomainStart = -std::numeric_limits<double>::max();

void check_finite(double v, double d) {
    if (!std::isfinite(v) || !std::isfinite(d) || std::abs(v) > kOverflowLimit ||
        std::abs(d) > kOverflowLimit) {
        throw OverflowError("coefficient value out of representable range");
    }
}

} // namespace

struct CoefficientProfile::Node {
    Kind kind;
    double amplitude = 0.0; // c / a
    double exponent = 0.0;  // p / r
    double domain_start = kNoDomainStart;
    std::vector<CoefficientProfile> terms; // Sum
    // Pullback
    std::vector<CoefficientProfile> pb; // [base, gauge]
    double n = 0.0;
    double tau0 = 0.0;
};

CoefficientProfile CoefficientProfile::constant(double c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->amplitude = c;
    return CoefficientProfile(std::move(n));
}

CoefficientProfile CoefficientProfile::power_law(double a, double p,
                                                 std::optional<double> domain_start) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::PowerLaw;
    n->amplitude = a;
    n->exponent = p;
    n->domain_start = domain_start.value_or(p < 0.0 ? 1.0 : 0.0);
    if (n->domain_start < 0.0) {
        throw DomainError("power-law profiles require a nonnegative domain start");
    }
    return CoefficientProfile(std::move(n));
}

CoefficientProfile CoefficientProfile::exponential(double a, double r) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Exponential;
    n->amplitude = a;
    n->exponent = r;
    return CoefficientProfile(std::move(n));
}

CoefficientProfile CoefficientProfile::sum(std::vector<CoefficientProfile> terms) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    for (const auto& t : terms) {
        n->domain_start = std::max(n->domain_start, t.domain_start());
    }
    n->terms = std::move(terms);
    return CoefficientProfile(std::move(n));
}

CoefficientProfile CoefficientProfile::pullback(CoefficientProfile base,
                                                CoefficientProfile gauge, double n_,
                                                double tau0, double amplitude) {
    if (!gauge.is_pure()) {
        throw DomainError("pullback gauge must be a pure family");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pullback;
    n->amplitude = amplitude;
    n->pb = {std::move(base), std::move(gauge)};
    n->n = n_;
    n->tau0 = tau0;
    n->domain_start = 0.0;
    return CoefficientProfile(std::move(n));
}

CoefficientProfile::Kind CoefficientProfile::kind() const { return node_->kind; }

double CoefficientProfile::domain_start() const { return node_->domain_start; }

bool CoefficientProfile::is_pure() const {
    return node_->kind == Kind::Constant || node_->kind == Kind::PowerLaw ||
           node_->kind == Kind::Exponential;
}

Eval CoefficientProfile::eval(double t) const {
    const Node& n = *node_;
    if (t < n.domain_start - 1e-12 * std::max(1.0, std::abs(t))) {
        throw DomainError("evaluation time below the profile domain start");
    }
    t = std::max(t, n.domain_start);
    double v = 0.0;
    double d = 0.0;
    switch (n.kind) {
        case Kind::Constant:
            v = n.amplitude;
            d = 0.0;
            break;
        case Kind::PowerLaw: {
            v = n.amplitude * std::pow(t, n.exponent);
            d = t > 0.0 ? v * n.exponent / t
                        : (n.exponent == 1.0 ? n.amplitude
                                             : n.exponent > 1.0 ? 0.0
                                                                : n.amplitude * n.exponent *
                                                                      std::pow(t, n.exponent - 1.0));
            break;
        }
        case Kind::Exponential:
            v = n.amplitude * std::exp(n.exponent * t);
            d = n.exponent * v;
            break;
        case Kind::Sum:
            for (const auto& term : n.terms) {
                const Eval e = term.eval(t);
                v += e.value;
                d += e.derivative;
            }
            break;
        case Kind::Pullback: {
            const CoefficientProfile& base = n.pb[0];
            const CoefficientProfile& gauge = n.pb[1];
            const double half_n = 0.5 * n.n;
            auto speed = [&](double tau) { return std::pow(gauge.value(tau), half_n); };
            auto tmap = [&](double tau) {
                return detail::adaptive_simpson(speed, n.tau0, tau, 1e-11);
            };
            // bracket tau with t(tau) >= t
            double hi = n.tau0 + std::max(1.0, std::abs(n.tau0));
            double span = hi - n.tau0;
            int guard = 0;
            while (tmap(hi) < t) {
                span *= 2.0;
                hi = n.tau0 + span;
                if (++guard > 60) {
                    throw NumericalError("gauge pullback: time not reachable");
                }
            }
            const double tol = 1e-10 * std::max(1.0, std::abs(t));
            const double tau = detail::increasing_root(
                [&](double s) { return tmap(s) - t; }, speed, n.tau0, hi, tol);
            const Eval be = base.eval(tau);
            const double dtau_dt = std::pow(gauge.value(tau), -half_n);
            v = n.amplitude * be.value;
            d = n.amplitude * be.derivative * dtau_dt;
            break;
        }
    }
    check_finite(v, d);
    return {v, d};
}

CoefficientProfile CoefficientProfile::scaled(double s) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Constant:
            return constant(s * n.amplitude);
        case Kind::PowerLaw:
            return power_law(s * n.amplitude, n.exponent, n.domain_start);
        case Kind::Exponential:
            return exponential(s * n.amplitude, n.exponent);
        case Kind::Sum: {
            std::vector<CoefficientProfile> terms;
            terms.reserve(n.terms.size());
            for (const auto& t : n.terms) {
                terms.push_back(t.scaled(s));
            }
            return sum(std::move(terms));
        }
        case Kind::Pullback:
            return pullback(n.pb[0], n.pb[1], n.n, n.tau0, s * n.amplitude);
    }
    throw Error("unreachable");
}

CoefficientProfile CoefficientProfile::pow(double s) const {
    const Node& n = *node_;
    if (!is_pure() || n.amplitude <= 0.0) {
        throw DomainError("profile power requires a pure family with positive amplitude");
    }
    const double a = std::pow(n.amplitude, s);
    switch (n.kind) {
        case Kind::Constant:
            return constant(a);
        case Kind::PowerLaw:
            return power_law(a, n.exponent * s,
                             n.exponent * s < 0.0 ? std::max(n.domain_start, 1e-300)
                                                  : n.domain_start);
        default:
            return exponential(a, n.exponent * s);
    }
}

CoefficientProfile CoefficientProfile::log_derivative() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Constant:
            return constant(0.0);
        case Kind::PowerLaw:
            return power_law(n.exponent, -1.0, std::max(n.domain_start, 1e-300));
        case Kind::Exponential:
            return constant(n.exponent);
        default:
            throw DomainError("logarithmic derivative requires a pure family");
    }
}

double CoefficientProfile::amplitude() const { return node_->amplitude; }
double CoefficientProfile::exponent() const { return node_->exponent; }

const std::vector<CoefficientProfile>& CoefficientProfile::terms() const {
    return node_->terms;
}
const CoefficientProfile& CoefficientProfile::pullback_base() const { return node_->pb[0]; }
const CoefficientProfile& CoefficientProfile::pullback_gauge() const { return node_->pb[1]; }
double CoefficientProfile::pullback_n() const { return node_->n; }
double CoefficientProfile::pullback_tau0() const { return node_->tau0; }

CoefficientProfile operator*(double s, const CoefficientProfile& p) { return p.scaled(s); }

CoefficientProfile operator+(const CoefficientProfile& a, const CoefficientProfile& b) {
    return CoefficientProfile::sum({a, b});
}

namespace {

SignVerdict verdict_of_constant_sign(double v) {
    if (v > 0.0) {
        return SignVerdict::StrictlyPositive;
    }
    if (v < 0.0) {
        return SignVerdict::StrictlyNegative;
    }
    return SignVerdict::NonStrict;
}

} // namespace

SignVerdict sign_on_window(const CoefficientProfile& profile, double t_a, double t_b,
                           int grid) {
    if (!(t_b > t_a) || grid < 2) {
        throw DomainError("sign_on_window: invalid window or grid");
    }
    if (profile.is_pure()) {
        // a t^p and a e^{rt} never change sign for t > 0; decided by amplitude.
        return verdict_of_constant_sign(profile.amplitude());
    }
    const bool log_spaced = t_a > 0.0;
    bool pos = false;
    bool neg = false;
    bool zero = false;
    for (int i = 0; i < grid; ++i) {
        const double u = static_cast<double>(i) / (grid - 1);
        const double t = log_spaced ? t_a * std::pow(t_b / t_a, u) : t_a + (t_b - t_a) * u;
        const double v = profile.value(t);
        if (v > 0.0) {
            pos = true;
        } else if (v < 0.0) {
            neg = true;
        } else {
            zero = true;
        }
    }
    if (pos && neg) {
        return SignVerdict::ChangesSign;
    }
    if (zero) {
        return SignVerdict::NonStrict;
    }
    return pos ? SignVerdict::StrictlyPositive : SignVerdict::StrictlyNegative;
}

} // namespace stifflab
