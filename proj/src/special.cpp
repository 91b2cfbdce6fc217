#include "stiffness_lab/special.hpp"

#include <cmath>

#include "stiffness_lab/errors.hpp"

namespace stifflab {

namespace {

constexpr double kEps = 1e-16;
constexpr double kFpMin = 1e-290;
constexpr int kMaxIter = 100000;
constexpr double kMaxOrder = 100.0;
constexpr double kUnscaledLimit = 705.0; // e^x overflows just above

// Taylor coefficients of 1/Gamma(1+x); odd part drives gam1 below.
constexpr double kInvGamma1p[] = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
};

/// (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu), the mu -> 0 limit being -gamma_E.
double temme_gam1(double mu) {
    if (std::abs(mu) >= 0.05) {
        return (1.0 / std::tgamma(1.0 - mu) - 1.0 / std::tgamma(1.0 + mu)) / (2.0 * mu);
    }
    const double m2 = mu * mu;
    double s = 0.0;
    for (int k = 23; k >= 1; k -= 2) {
        s = s * m2 + kInvGamma1p[k];
    }
    return -s;
}

double temme_gam2(double mu) {
    return 0.5 * (1.0 / std::tgamma(1.0 - mu) + 1.0 / std::tgamma(1.0 + mu));
}

/// sin(pi v) with exact zeros at integer v.
double sin_pi(double v) {
    const double n = std::round(v);
    const double fr = v - n;
    const double s = std::sin(M_PI * fr);
    return static_cast<long long>(n) % 2 == 0 ? s : -s;
}

struct ScaledIK {
    double i; // e^{-x} I_nu(x)
    double k; // e^{ x} K_nu(x)
};

/// Temme series + continued fractions; nu >= 0, x > 0. Returns scaled values.
ScaledIK bessel_ik_scaled_core(double nu, double x) {
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    const double mu2 = mu * mu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;

    // CF1 for I'_nu / I_nu (modified Lentz)
    double h = std::max(nu * xi, kFpMin);
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    for (int i = 1;; ++i) {
        if (i > kMaxIter) {
            throw NumericalError("Bessel CF1 did not converge");
        }
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) <= kEps) {
            break;
        }
    }

    // downward recurrence from nu to mu
    double ril = kFpMin;
    double ripl = h * ril;
    double seed = kFpMin;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if (std::abs(ril) > 1e250) { // renormalize to avoid overflow
            ril *= 1e-250;
            ripl *= 1e-250;
            seed *= 1e-250;
        }
    }
    const double f = ripl / ril; // I'_mu / I_mu

    double rkmu; // e^x K_mu
    double rk1;  // e^x K_{mu+1}
    if (x < 2.0) {
        // Temme's series for K_mu, K_{mu+1}
        const double x2 = 0.5 * x;
        const double pimu = M_PI * mu;
        const double fct = std::abs(pimu) < 1e-15 ? 1.0 : pimu / std::sin(pimu);
        const double lg = -std::log(x2);
        double e = mu * lg;
        const double fct2 = std::abs(e) < 1e-15 ? 1.0 : std::sinh(e) / e;
        double ff = fct * (temme_gam1(mu) * std::cosh(e) + temme_gam2(mu) * fct2 * lg);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e * std::tgamma(1.0 + mu);
        double q = 0.5 / e * std::tgamma(1.0 - mu);
        double cc = 1.0;
        const double dd = x2 * x2;
        double sum1 = p;
        for (int i = 1;; ++i) {
            if (i > kMaxIter) {
                throw NumericalError("Bessel Temme series did not converge");
            }
            ff = (i * ff + p + q) / (i * i - mu2);
            cc *= dd / i;
            p /= (i - mu);
            q /= (i + mu);
            const double delta = cc * ff;
            sum += delta;
            sum1 += cc * (p - i * ff);
            if (std::abs(delta) < std::abs(sum) * kEps) {
                break;
            }
        }
        const double ex = std::exp(x);
        rkmu = sum * ex;
        rk1 = sum1 * xi2 * ex;
    } else {
        // Thompson-Barnett CF2; yields e^x K_mu directly
        double bb = 2.0 * (1.0 + x);
        double dd = 1.0 / bb;
        double hh = dd;
        double delh = dd;
        double q1 = 0.0;
        double q2 = 1.0;
        const double a1 = 0.25 - mu2;
        double q = a1;
        double cc = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        for (int i = 2;; ++i) {
            if (i > kMaxIter) {
                throw NumericalError("Bessel CF2 did not converge");
            }
            a -= 2 * (i - 1);
            cc = -a * cc / i;
            const double qnew = (q1 - bb * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += cc * qnew;
            bb += 2.0;
            dd = 1.0 / (bb + a * dd);
            delh = (bb * dd - 1.0) * delh;
            hh += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < kEps) {
                break;
            }
        }
        hh *= a1;
        rkmu = std::sqrt(M_PI / (2.0 * x)) / s;
        rk1 = rkmu * (mu + x + 0.5 - hh) * xi;
    }

    // I_mu from the Wronskian, then rescale to order nu
    const double rkmup = mu * xi * rkmu - rk1; // e^x K'_mu
    const double rimu = xi / (f * rkmu - rkmup);
    const double i_nu = nl > 0 ? rimu * (seed / ril) : rimu;

    // upward recurrence for K to order nu
    double rk = rkmu;
    double rkp = rk1;
    for (int i = 1; i <= nl; ++i) {
        const double rktemp = (mu + i) * xi2 * rkp + rk;
        rk = rkp;
        rkp = rktemp;
    }
    return {i_nu, nl > 0 ? rk : rkmu};
}

/// Asymptotic expansion for large x (valid once x dominates nu^2).
ScaledIK bessel_ik_scaled_asymptotic(double nu, double x) {
    const double mu4 = 4.0 * nu * nu;
    double term = 1.0;
    double si = 1.0;
    double sk = 1.0;
    bool converged = false;
    for (int k = 1; k < 60; ++k) {
        term *= (mu4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        sk += term;
        si += (k % 2 == 0) ? term : -term;
        if (std::abs(term) < 1e-17 * std::max(std::abs(si), 1.0)) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NumericalError("Bessel asymptotic series did not converge");
    }
    return {si / std::sqrt(2.0 * M_PI * x), sk * std::sqrt(M_PI / (2.0 * x))};
}

ScaledIK bessel_ik_scaled_nonneg(double nu, double x) {
    if (x >= std::max(2000.0, 10.0 * nu * nu)) {
        return bessel_ik_scaled_asymptotic(nu, x);
    }
    return bessel_ik_scaled_core(nu, x);
}

} // namespace

BesselIK bessel_ik(double nu, double z, bool scaled) {
    if (!(z > 0.0)) {
        throw DomainError("Bessel functions require z > 0");
    }
    if (!std::isfinite(nu) || std::abs(nu) > kMaxOrder) {
        throw DomainError("Bessel order must satisfy |nu| <= 100");
    }
    const double anu = std::abs(nu);
    ScaledIK s = bessel_ik_scaled_nonneg(anu, z);
    if (nu < 0.0) {
        // I_{-v} = I_v + (2/pi) sin(pi v) K_v; K_{-v} = K_v.
        const double refl = (2.0 / M_PI) * sin_pi(anu);
        s.i += refl * s.k * std::exp(-2.0 * z); // e^{-x} K = (e^{x} K) e^{-2x}
    }
    if (scaled) {
        return {s.i, s.k};
    }
    if (z > kUnscaledLimit) {
        throw OverflowError(
            "Bessel argument too large for unscaled evaluation; use the scaled variants");
    }
    const double ez = std::exp(z);
    const double i_val = s.i * ez;
    if (!std::isfinite(i_val)) {
        throw OverflowError("Bessel I overflow; use the scaled variants");
    }
    return {i_val, s.k / ez};
}

double bessel_i(double nu, double z, bool scaled) { return bessel_ik(nu, z, scaled).i; }
double bessel_k(double nu, double z, bool scaled) { return bessel_ik(nu, z, scaled).k; }

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma_fn requires x > 0");
    }
    if (x > 170.0) {
        throw OverflowError("gamma_fn overflow for x > 170");
    }
    return std::tgamma(x);
}

} // namespace stifflab
