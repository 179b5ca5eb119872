#pragma once

#include <functional>
#include <initializer_list>

namespace refl::quad {

using Integrand = std::function<double(double)>;

/// Adaptive Simpson on [lo, hi] to absolute tolerance `tol`.
/// Throws NumericalError when the recursion budget is exhausted or the integrand is not finite.
double adaptive_simpson(const Integrand& f, double lo, double hi, double tol, int max_depth = 40);

/// Adaptive Gauss-Kronrod (7/15) on [lo, hi]; `tol` bounds the embedded Gauss-7 error estimate
/// relative to the L1 norm of f, so the Kronrod value is far more accurate than `tol` for
/// smooth integrands. Thin wrapper over Boost.Math.
double gauss_kronrod(const Integrand& f, double lo, double hi, double tol = 1e-10,
                     unsigned max_depth = 12);

/// Piecewise Gauss-Kronrod over the sorted, de-duplicated breakpoints inside (lo, hi).
double gauss_kronrod_split(const Integrand& f, double lo, double hi,
                           std::initializer_list<double> breaks, double tol = 1e-10);

}  // namespace refl::quad
