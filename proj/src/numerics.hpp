#pragma once

#include <cmath>
#include <functional>

#include "stiffness_lab/errors.hpp"

namespace stifflab::detail {

/// Adaptive Simpson quadrature to absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, int max_depth = 48);

/// Root of a strictly increasing function g on [lo, hi] (g(lo) <= 0 <= g(hi))
/// by Newton iteration safeguarded with bisection. `dg` is the derivative.
double increasing_root(const std::function<double(double)>& g,
                       const std::function<double(double)>& dg, double lo, double hi,
                       double tol);

} // namespace stifflab::detail
