#include "refl/solver.hpp"

#include "refl/error.hpp"
#include "refl/grid.hpp"
#include "refl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace refl {

RealFn Family::member(double c) const {
    return [p = particular, v = direction, c](double t) { return p(t) + c * v(t); };
}

const RealFn& SolveOutcome::solution() const {
    if (const auto* u = std::get_if<Unique>(&result)) return u->u;
    if (const auto* f = std::get_if<Family>(&result)) return f->particular;
    throw ResonanceError("outcome carries no solution");
}

ResidualReport residual(const ProblemSpec& p, const RealFn& u, int n_points) {
    if (n_points < 2) throw InputError("residual needs at least two sample points");
    if (n_points % 2 != 0) ++n_points;
    const double T = p.T;
    const double d = 1e-5 * T;
    ResidualReport r;
    for (int i = 0; i < n_points; ++i) {
        const double t = -T + 2.0 * T * (i + 0.5) / n_points;
        const double du = (u(t - 2 * d) - 8.0 * u(t - d) + 8.0 * u(t + d) - u(t + 2 * d)) / (12.0 * d);
        const double e = du + p.a(t) * u(-t) + p.b(t) * u(t) - p.h(t);
        r.residual_sup = std::max(r.residual_sup, std::fabs(e));
    }
    r.bc_gap = std::fabs(u(T) - u(-T));
    return r;
}

namespace {

ResidualReport family_report(const ProblemSpec& p, const Family& f) {
    ResidualReport worst;
    for (double c : {-1.0, 0.0, 1.0}) {
        const auto r = residual(p, f.member(c));
        worst.residual_sup = std::max(worst.residual_sup, r.residual_sup);
        worst.bc_gap = std::max(worst.bc_gap, r.bc_gap);
    }
    return worst;
}

double l1_norm(const RealFn& f, double T) {
    return quad::adaptive_simpson([&](double t) { return std::fabs(f(t)); }, -T, T, 1e-12);
}

double l2_norm(const RealFn& f, double T) {
    return std::sqrt(quad::adaptive_simpson([&](double t) { return f(t) * f(t); }, -T, T, 1e-12));
}

}  // namespace

SolveOutcome solve_green(const ProblemSpec& p, const Kernel& K) {
    const double T = p.T;
    RealFn u = [K, h = p.h, T](double t) {
        const double at = std::fabs(t);
        const Region mid = t >= 0.0 ? Region::TAbove : Region::TBelow;
        auto piece = [&](Region r) { return [&, r](double s) { return K.piece(r, t, s) * h(s); }; };
        double v = quad::gauss_kronrod(piece(Region::SBelow), -T, -at);
        if (at > 0.0) v += quad::gauss_kronrod(piece(mid), -at, at);
        v += quad::gauss_kronrod(piece(Region::SAbove), at, T);
        return v;
    };
    SolveOutcome out;
    out.result = Unique{u};
    out.report = residual(p, u);
    return out;
}

SolveOutcome solve_c4(const ProblemSpec& p, double tol) {
    const double T = p.T;
    const Primitive Be = even_primitive_of_b(p.b);
    const auto hp = parity_decompose(p.h);
    const auto ap = parity_decompose(p.a);
    const ScalarFn he = hp.even, ae = ap.even, h = p.h;

    RealFn weighted = [Be, he](double s) { return std::exp(Be(s)) * he(s); };
    const double cond = quad::gauss_kronrod(weighted, 0.0, T);
    const double scale = 1.0 + quad::gauss_kronrod([&](double s) { return std::fabs(weighted(s)); }, 0.0, T);

    SolveOutcome out;
    out.result = NoSolution{"int_0^T e^{B_e} h_e", cond};
    out.condition_value = cond;
    if (std::fabs(cond) > tol * scale) return out;

    const Primitive Q(weighted, T);
    const Primitive G([Be, h, ae, Q](double s) { return std::exp(Be(s)) * h(s) + 2.0 * ae(s) * Q(s); }, T);
    Family f{[Be, G](double t) { return std::exp(-Be(t)) * G(t); },
             [Be](double t) { return std::exp(-Be(t)); }};
    out.report = family_report(p, f);
    out.result = std::move(f);
    return out;
}

SolveOutcome solve_c5(const ProblemSpec& p, double tol) {
    const double T = p.T;
    const Primitive& A = p.a.primitive();
    // b is odd here, so its primitive B coincides with B_e.
    const Primitive B = even_primitive_of_b(p.b);
    const auto hp = parity_decompose(p.h);
    const ScalarFn he = hp.even, ho = hp.odd;

    RealFn weighted = [A, B, he](double s) { return std::exp(B(s) - A(s)) * he(s); };
    const double cond = quad::gauss_kronrod(weighted, 0.0, T);
    const double scale = 1.0 + quad::gauss_kronrod([&](double s) { return std::fabs(weighted(s)); }, 0.0, T);

    SolveOutcome out;
    out.result = NoSolution{"int_0^T e^{B-A} h_e", cond};
    out.condition_value = cond;
    if (std::fabs(cond) > tol * scale) return out;

    const Primitive P_odd(weighted, T);
    const Primitive P_even([A, B, ho](double s) { return std::exp(A(s) + B(s)) * ho(s); }, T);
    Family f{[A, B, P_odd, P_even](double t) {
                 return std::exp(A(t) - B(t)) * P_odd(t) + std::exp(-A(t) - B(t)) * P_even(t);
             },
             [A, B](double t) { return std::exp(-A(t) - B(t)); }};
    out.report = family_report(p, f);
    out.result = std::move(f);
    return out;
}

double contraction_bound(const ProblemSpec& p) {
    const double T = p.T;
    const ScalarFn upsilon([a = p.a, b = p.b](double t) { return a(t) + b(t); }, T, "a+b");
    const double F = ode_kernel_bound(upsilon, T);
    const RealFn& a = p.a.function();
    const RealFn& b = p.b.function();
    const double a1 = l1_norm(a, T);
    const double w_inf = l1_norm(a, T) + l1_norm(b, T);
    const double w_2 = std::sqrt(2.0 * T) * (l2_norm(a, T) + l2_norm(b, T));
    const double w_1 = 2.0 * T * (sup_norm(a, T, 4097) + sup_norm(b, T, 4097));
    return F * a1 * std::min({w_1, w_2, w_inf});
}

SolveOutcome solve_mixed(const ProblemSpec& p, double tol, int max_iter) {
    const double bound = contraction_bound(p);
    SolveOutcome out;
    out.result = NotContractive{bound};
    out.bound = bound;
    if (!(bound < 1.0)) return out;

    const double T = p.T;
    const SymmetricGrid grid(T, kMixedIntervals);
    const std::size_t n = grid.size();
    const std::size_t N = n - 1;
    const double step = grid.step();

    const Primitive V([a = p.a, b = p.b](double t) { return a(t) + b(t); }, T);
    const double total = V(T) - V(-T);
    const double tau = 1.0 / (1.0 - std::exp(-total));
    const Primitive& Hp = p.h.primitive();

    std::vector<double> av(n), bv(n), ev(n), emv(n), beta_src(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = grid[i];
        av[i] = p.a(t);
        bv[i] = p.b(t);
        const double vi = V(t);
        ev[i] = std::exp(vi);
        emv[i] = std::exp(-vi);
        beta_src[i] = av[i] * (Hp(t) - Hp(-t)) + p.h(t);
    }

    // x(t_i) = int G3(t_i, s) q(s) ds for q sampled on the grid.
    std::vector<double> wq(n);
    auto apply_g3 = [&](const std::vector<double>& q) {
        for (std::size_t i = 0; i < n; ++i) wq[i] = ev[i] * q[i];
        const auto P = cumulative_integral_4th(wq, step);
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = emv[i] * (tau * P[i] + (tau - 1.0) * (P[N] - P[i]));
        return x;
    };

    const auto beta = apply_g3(beta_src);
    std::vector<double> x = beta, y(n), q(n);
    bool converged = false;
    for (int it = 1; it <= max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) y[i] = av[i] * x[grid.mirror(i)] + bv[i] * x[i];
        const auto C = cumulative_integral_4th(y, step);
        for (std::size_t i = 0; i < n; ++i) q[i] = av[i] * (C[grid.mirror(i)] - C[i]);
        auto next = apply_g3(q);
        double inc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] += beta[i];
            inc = std::max(inc, std::fabs(next[i] - x[i]));
        }
        x = std::move(next);
        out.increments.push_back(inc);
        out.iterations = it;
        if (inc < tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalError("Picard iteration did not converge in " + std::to_string(max_iter) + " sweeps");

    const GridInterpolant interp(-T, step, x);
    RealFn u = [interp](double t) { return interp(t); };
    out.report = residual(p, u);
    out.result = Unique{std::move(u)};
    return out;
}

SolveOutcome solve(const ProblemSpec& p, const CaseTag& tag, double tol) {
    switch (tag.kind) {
        case CaseKind::C1:
        case CaseKind::C2:
        case CaseKind::C3: return solve_green(p, composed_kernel(p, tag));
        case CaseKind::C4: return solve_c4(p, tol);
        case CaseKind::C5: return solve_c5(p, tol);
        case CaseKind::Mixed: return solve_mixed(p);
    }
    throw InputError("unknown case");
}

}  // namespace refl
