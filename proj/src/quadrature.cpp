#include "refl/quadrature.hpp"

#include "refl/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace refl::quad {

namespace {

struct SimpsonState {
    const Integrand& f;
    int max_depth;
};

double checked(const Integrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw NumericalError("integrand not finite at t = " + std::to_string(x));
    return y;
}

double simpson_recurse(const SimpsonState& st, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = checked(st.f, lm);
    const double frm = checked(st.f, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol || (b - a) <= 1e-15 * std::max(1.0, std::fabs(a))) {
        return left + right + delta / 15.0;
    }
    if (depth >= st.max_depth)
        throw NumericalError("adaptive Simpson budget exceeded near t = " + std::to_string(m));
    return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const Integrand& f, double lo, double hi, double tol, int max_depth) {
    if (lo == hi) return 0.0;
    const double fa = checked(f, lo);
    const double fb = checked(f, hi);
    const double m = 0.5 * (lo + hi);
    const double fm = checked(f, m);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    SimpsonState st{f, max_depth};
    return simpson_recurse(st, lo, hi, fa, fm, fb, whole, tol, 0);
}

double gauss_kronrod(const Integrand& f, double lo, double hi, double tol, unsigned max_depth) {
    if (lo == hi) return 0.0;
    double err = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [&](double x) { return checked(f, x); }, lo, hi, max_depth, tol, &err, &l1);
    // Boost stops at max_depth silently; treat a badly unconverged estimate as a failure.
    if (!std::isfinite(value) || err > std::max(1e-6 * l1, 1e-9))
        throw NumericalError("Gauss-Kronrod quadrature did not converge on [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "]");
    return value;
}

double gauss_kronrod_split(const Integrand& f, double lo, double hi,
                           std::initializer_list<double> breaks, double tol) {
    std::vector<double> pts{lo};
    for (double b : breaks) {
        if (b > lo && b < hi) pts.push_back(b);
    }
    pts.push_back(hi);
    std::sort(pts.begin() + 1, pts.end() - 1);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) sum += gauss_kronrod(f, pts[i], pts[i + 1], tol);
    return sum;
}

}  // namespace refl::quad
