#include "refl/involution.hpp"

#include "refl/error.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace refl {

namespace {

constexpr int kCheckPoints = 513;

// Five-point central derivative with a step scaled to |t|.
double derivative(const RealFn& f, double t) {
    const double d = 2e-4 * std::max(1.0, std::fabs(t));
    return (f(t - 2 * d) - 8.0 * f(t - d) + 8.0 * f(t + d) - f(t + 2 * d)) / (12.0 * d);
}

RealFn invert_increasing(RealFn g, double lo, double hi) {
    return [g = std::move(g), lo, hi](double t) {
        auto r = [&](double s) { return g(s) - t; };
        double flo = r(lo), fhi = r(hi);
        if (flo == 0.0) return lo;
        if (fhi == 0.0) return hi;
        if (flo > 0.0 || fhi < 0.0) throw InputError("value " + std::to_string(t) + " outside the range of g");
        std::uintmax_t iters = 200;
        const auto [a, b] = boost::math::tools::toms748_solve(r, lo, hi, flo, fhi,
                                                              boost::math::tools::eps_tolerance<double>(52), iters);
        return 0.5 * (a + b);
    };
}

}  // namespace

InvolutionSpec build_f(RealFn phi, double T, double t0, double S, RealFn g) {
    if (!(S > 0.0)) throw InputError("target half-width S must be positive");
    InvolutionSpec inv;
    inv.phi = std::move(phi);
    inv.T = T;
    inv.t0 = t0;
    inv.S = S;
    const double left = inv.phi(T);
    if (!(left < t0 && t0 < T)) throw InputError("fixed point must lie strictly inside [phi(T), T]");

    for (int i = 0; i < kCheckPoints; ++i) {
        const double t = left + (T - left) * i / (kCheckPoints - 1);
        if (std::fabs(inv.phi(inv.phi(t)) - t) > 1e-10 * std::max(1.0, std::fabs(t)))
            throw InputError("phi is not an involution near t = " + std::to_string(t));
    }
    if (std::fabs(inv.phi(t0) - t0) > 1e-10 * std::max(1.0, std::fabs(t0)))
        throw InputError("fixed_point is not fixed by phi");

    if (g) {
        inv.g = std::move(g);
        inv.g_inv = invert_increasing(inv.g, -S, 0.0);
    } else {
        const double slope = (t0 - left) / S;
        inv.g = [t0, slope](double s) { return t0 + s * slope; };
        inv.g_inv = [t0, slope](double t) { return (t - t0) / slope; };
    }
    if (std::fabs(inv.g(-S) - left) > 1e-10 * std::max(1.0, std::fabs(left)) ||
        std::fabs(inv.g(0.0) - t0) > 1e-10 * std::max(1.0, std::fabs(t0)))
        throw InputError("g must map -S to phi(T) and 0 to the fixed point");

    inv.f = [g = inv.g, phi = inv.phi](double s) { return s <= 0.0 ? g(s) : phi(g(-s)); };
    inv.f_inv = [g_inv = inv.g_inv, phi = inv.phi, t0](double t) {
        return t <= t0 ? g_inv(t) : -g_inv(phi(t));
    };
    inv.f_prime = [g = inv.g, phi = inv.phi](double s) {
        const double left_branch = derivative(g, s <= 0.0 ? s : -s);
        if (s < 0.0) return left_branch;
        const double right = -derivative(phi, g(-s)) * left_branch;
        return s > 0.0 ? right : 0.5 * (left_branch + right);
    };

    double prev = inv.f(-S);
    for (int i = 1; i < kCheckPoints; ++i) {
        const double s = -S + 2.0 * S * i / (kCheckPoints - 1);
        const double v = inv.f(s);
        if (!(v > prev)) throw InputError("f is not increasing; g must be orientation preserving");
        prev = v;
        if (std::fabs(inv.f(-s) - inv.phi(v)) > 1e-10 * std::max(1.0, std::fabs(v)))
            throw InputError("f(-s) = phi(f(s)) fails at s = " + std::to_string(s));
    }
    return inv;
}

InvolutionSpec reflection_involution(double T) {
    return build_f([](double t) { return -t; }, T, 0.0, T, [](double s) { return s; });
}

ProblemSpec transform_problem(const InvolutionProblem& q, const InvolutionSpec& inv) {
    const RealFn d = q.d ? q.d : RealFn([](double) { return 1.0; });
    // f'(s) / d(f(s))
    RealFn scale = [d, f = inv.f, fp = inv.f_prime](double s) { return fp(s) / d(f(s)); };
    for (int i = 0; i < kCheckPoints; ++i) {
        const double s = -inv.S + 2.0 * inv.S * i / (kCheckPoints - 1);
        const double fp = inv.f_prime(s), dv = d(inv.f(s));
        if (!(std::fabs(fp) > 1e-12) || !(std::fabs(dv) > 1e-12))
            throw NumericalError("f' or d(f) vanishes near s = " + std::to_string(s));
    }
    auto compose = [&](const RealFn& c, const char* label) {
        return ScalarFn([c, f = inv.f, scale](double s) { return c(f(s)) * scale(s); }, inv.S, label);
    };
    return ProblemSpec{inv.S, compose(q.a, "a"), compose(q.b, "b"), compose(q.h, "h")};
}

RealFn transport_back(const RealFn& y, const InvolutionSpec& inv) {
    return [y, fi = inv.f_inv](double t) { return y(fi(t)); };
}

ResidualReport involution_residual(const InvolutionProblem& q, const InvolutionSpec& inv, const RealFn& x,
                                   int n_points) {
    if (n_points < 2) throw InputError("residual needs at least two sample points");
    const double lo = inv.left(), hi = inv.T;
    const double step = 1e-5 * (hi - lo);
    ResidualReport r;
    for (int i = 0; i < n_points; ++i) {
        const double t = lo + (hi - lo) * (i + 0.5) / n_points;
        const double dx = (x(t - 2 * step) - 8.0 * x(t - step) + 8.0 * x(t + step) - x(t + 2 * step)) / (12.0 * step);
        const double dv = q.d ? q.d(t) : 1.0;
        const double e = dv * dx + q.a(t) * x(inv.phi(t)) + q.b(t) * x(t) - q.h(t);
        r.residual_sup = std::max(r.residual_sup, std::fabs(e));
    }
    r.bc_gap = std::fabs(x(lo) - x(hi));
    return r;
}

Eigen::Matrix2d lambda_matrix(const GeneralCoeffs& gc, double t) {
    const double cp = gc.c(t), cm = gc.c(-t), dp = gc.d(t), dm = gc.d(-t);
    const double ce = 0.5 * (cp + cm), co = 0.5 * (cp - cm);
    const double de = 0.5 * (dp + dm), dO = 0.5 * (dp - dm);
    Eigen::Matrix2d L;
    L << de + ce, dO - co, dO + co, de - ce;
    return L;
}

double lambda_det(const GeneralCoeffs& gc, double t) { return lambda_matrix(gc, t).determinant(); }

Eigen::Matrix2d parity_matrix(const RealFn& a, const RealFn& b, double t) {
    const double ap = a(t), am = a(-t), bp = b(t), bm = b(-t);
    const double ae = 0.5 * (ap + am), ao = 0.5 * (ap - am);
    const double be = 0.5 * (bp + bm), bo = 0.5 * (bp - bm);
    Eigen::Matrix2d M;
    M << ao - bo, -ae - be, ae - be, -ao - bo;
    return M;
}

ReducedSystem reduce_general(const GeneralCoeffs& gc) {
    ReducedSystem sys;
    sys.min_abs_det = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kCheckPoints; ++i) {
        const double t = -gc.T + 2.0 * gc.T * i / (kCheckPoints - 1);
        sys.min_abs_det = std::min(sys.min_abs_det, std::fabs(lambda_det(gc, t)));
    }
    if (!(sys.min_abs_det > 1e-10)) throw NumericalError("det Lambda vanishes: the general problem cannot be reduced");
    sys.matrix = [gc](double t) -> Eigen::Matrix2d {
        return lambda_matrix(gc, t).inverse() * parity_matrix(gc.a, gc.b, t);
    };
    sys.forcing = [gc](double t) -> Eigen::Vector2d {
        const double hp = gc.h(t), hm = gc.h(-t);
        return lambda_matrix(gc, t).inverse() * Eigen::Vector2d(0.5 * (hp + hm), 0.5 * (hp - hm));
    };
    return sys;
}

}  // namespace refl
