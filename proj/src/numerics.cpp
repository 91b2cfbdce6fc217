#include "numerics.hpp"

#include <algorithm>

namespace stifflab::detail {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0) {
        throw NumericalError("quadrature did not converge");
    }
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (a == b) {
        return 0.0;
    }
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double increasing_root(const std::function<double(double)>& g,
                       const std::function<double(double)>& dg, double lo, double hi,
                       double tol) {
    double glo = g(lo);
    double ghi = g(hi);
    if (glo > 0.0 || ghi < 0.0) {
        throw NumericalError("root not bracketed");
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double gx = g(x);
        if (std::abs(gx) <= tol) {
            return x;
        }
        if (gx > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        const double d = dg(x);
        double next = d > 0.0 ? x - gx / d : lo;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi); // bisection fallback
        }
        if (hi - lo <= 1e-14 * std::max(1.0, std::abs(x))) {
            return 0.5 * (lo + hi);
        }
        x = next;
    }
    throw NumericalError("root finding did not converge");
}

} // namespace stifflab::detail
