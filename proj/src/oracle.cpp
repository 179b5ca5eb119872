#include "refl/oracle.hpp"

#include "refl/error.hpp"
#include "refl/grid.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace refl {

double GridSolution::operator()(double s) const {
    if (t.empty()) throw InputError("empty grid solution");
    const double lo = t.front(), step = t[1] - t[0];
    const double pos = std::clamp((s - lo) / step, 0.0, static_cast<double>(N));
    const auto i = std::min(static_cast<std::size_t>(pos), static_cast<std::size_t>(N - 1));
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * x[i] + w * x[i + 1];
}

namespace {

struct Collocation {
    Eigen::MatrixXd M;
    Eigen::VectorXd rhs;
    SymmetricGrid grid;
};

Collocation assemble(const ProblemSpec& p, int N) {
    if (N < 8 || N % 2 != 0) throw InputError("collocation needs an even N >= 8");
    Collocation c{Eigen::MatrixXd::Zero(N, N), Eigen::VectorXd::Zero(N), SymmetricGrid(p.T, N)};
    const auto& g = c.grid;
    const double h = g.step();
    std::vector<double> a(N + 1), b(N + 1), f(N + 1);
    for (int j = 0; j <= N; ++j) {
        a[j] = p.a(g[j]);
        b[j] = p.b(g[j]);
        f[j] = p.h(g[j]);
    }
    auto col = [N](int k) { return k == N ? 0 : k; };
    // Row i - 1 holds the equation at node i; partial trapezoid sums grow with i.
    for (int i = 1; i <= N; ++i) {
        auto row = c.M.row(i - 1);
        row(col(i)) += 1.0;
        row(0) -= 1.0;
        double rhs = 0.0;
        for (int j = 0; j <= i; ++j) {
            const double w = (j == 0 || j == i) ? 0.5 * h : h;
            row(col(N - j)) += w * a[j];
            row(col(j)) += w * b[j];
            rhs += w * f[j];
        }
        c.rhs(i - 1) = rhs;
    }
    return c;
}

double condition_of(const Eigen::MatrixXd& M) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

GridSolution collocation_solve(const ProblemSpec& p, int N) {
    const Collocation c = assemble(p, N);
    GridSolution out;
    out.N = N;
    out.condition = condition_of(c.M);
    if (!(out.condition < 1e15))
        throw ResonanceError("collocation system is singular (condition " + std::to_string(out.condition) + ")");
    const Eigen::VectorXd x = c.M.partialPivLu().solve(c.rhs);
    out.t.assign(c.grid.nodes().begin(), c.grid.nodes().end());
    out.x.resize(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i < N; ++i) out.x[static_cast<std::size_t>(i)] = x(i);
    out.x[static_cast<std::size_t>(N)] = x(0);
    return out;
}

double collocation_condition(const ProblemSpec& p, int N) { return condition_of(assemble(p, N).M); }

Trajectory integrate_system(const MatFn& M, const VecFn& F, const Eigen::Vector2d& y0, double T, int steps) {
    if (steps < 1) throw InputError("RK4 needs at least one step");
    auto rhs = [&](double t, const Eigen::Vector2d& y) -> Eigen::Vector2d { return M(t) * y + F(t); };
    auto sweep = [&](double dir) {
        std::vector<Eigen::Vector2d> ys{y0};
        const double h = dir * T / steps;
        Eigen::Vector2d y = y0;
        for (int i = 0; i < steps; ++i) {
            const double t = h * i;
            const Eigen::Vector2d k1 = rhs(t, y);
            const Eigen::Vector2d k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
            const Eigen::Vector2d k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
            const Eigen::Vector2d k4 = rhs(t + h, y + h * k3);
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            ys.push_back(y);
        }
        return ys;
    };
    const auto fwd = sweep(1.0), bwd = sweep(-1.0);
    Trajectory tr;
    for (int i = steps; i >= 1; --i) {
        tr.t.push_back(-T * i / steps);
        tr.y.push_back(bwd[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i <= steps; ++i) {
        tr.t.push_back(T * i / steps);
        tr.y.push_back(fwd[static_cast<std::size_t>(i)]);
    }
    return tr;
}

Trajectory integrate_parity_system(const ProblemSpec& p, const Eigen::Vector2d& x0, int steps) {
    const FunMatrix2 M = system_matrix(p);
    VecFn F = [h = p.h](double t) {
        const double hp = h(t), hm = h(-t);
        return Eigen::Vector2d(0.5 * (hp + hm), 0.5 * (hp - hm));
    };
    return integrate_system([M](double t) { return M(t); }, F, x0, p.T, steps);
}

Eigen::Matrix2d FunMatrix2::operator()(double t) const {
    Eigen::Matrix2d m;
    m << entries[0](t), entries[1](t), entries[2](t), entries[3](t);
    return m;
}

namespace {

RealFn even_part(RealFn f) {
    return [f = std::move(f)](double t) { return 0.5 * (f(t) + f(-t)); };
}
RealFn odd_part(RealFn f) {
    return [f = std::move(f)](double t) { return 0.5 * (f(t) - f(-t)); };
}

FunMatrix2 parity_layout(RealFn ae, RealFn ao, RealFn be, RealFn bo) {
    return {{
        [ao, bo](double t) { return ao(t) - bo(t); },
        [ae, be](double t) { return -ae(t) - be(t); },
        [ae, be](double t) { return ae(t) - be(t); },
        [ao, bo](double t) { return -ao(t) - bo(t); },
    }};
}

}  // namespace

FunMatrix2 system_matrix(const ProblemSpec& p) {
    const RealFn& a = p.a.function();
    const RealFn& b = p.b.function();
    return parity_layout(even_part(a), odd_part(a), even_part(b), odd_part(b));
}

FunMatrix2 system_primitive(const ProblemSpec& p) {
    // int_0^t f_e is the odd part of the primitive of f, int_0^t f_o the even part.
    const Primitive A = p.a.primitive(), B = p.b.primitive();
    RealFn Af = [A](double t) { return A(t); };
    RealFn Bf = [B](double t) { return B(t); };
    return parity_layout(odd_part(Af), even_part(Af), odd_part(Bf), even_part(Bf));
}

Eigen::Matrix2d commutator(const FunMatrix2& M, double t, double s) {
    const Eigen::Matrix2d mt = M(t), ms = M(s);
    return mt * ms - ms * mt;
}

Eigen::Matrix2d expm_series(const Eigen::Matrix2d& X) {
    const double norm = X.lpNorm<1>();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Eigen::Matrix2d Y = X / std::ldexp(1.0, squarings);
    Eigen::Matrix2d term = Eigen::Matrix2d::Identity(), sum = term;
    for (int n = 1; n <= 12; ++n) {
        term = term * Y / n;
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

Eigen::Matrix2d matexp(const CaseTag& tag, const ProblemSpec& p, double t, ExpMode mode) {
    if (tag.kind == CaseKind::Mixed)
        throw InputError("no exponential form for Mixed coefficients: M(t) and M(s) do not commute");
    if (mode == ExpMode::Series) return expm_series(system_primitive(p)(t));

    const Primitive& Ap = p.a.primitive();
    const Primitive& Bp = p.b.primitive();
    const double A = 0.5 * (Ap(t) - Ap(-t));
    const double Be = 0.5 * (Bp(t) + Bp(-t));
    const double k = tag.k;
    Eigen::Matrix2d E;
    switch (tag.kind) {
        case CaseKind::C1: {
            const double w = std::sqrt(1.0 - k * k);
            const double c = std::cos(w * A), s = std::sin(w * A);
            E << c, -(1.0 + k) * s / w, (1.0 - k) * s / w, c;
            break;
        }
        case CaseKind::C2: {
            const double th = std::sqrt(k * k - 1.0);
            const double c = std::cosh(th * A), s = std::sinh(th * A);
            E << c, -(1.0 + k) * s / th, (1.0 - k) * s / th, c;
            break;
        }
        case CaseKind::C3: E << 1.0, -2.0 * A, 0.0, 1.0; break;
        case CaseKind::C4: E << 1.0, 0.0, 2.0 * A, 1.0; break;
        case CaseKind::C5: {
            // a odd: its primitive is even.
            const double Ae = 0.5 * (Ap(t) + Ap(-t));
            E << std::exp(Ae - Be), 0.0, 0.0, std::exp(-Ae - Be);
            return E;
        }
        case CaseKind::Mixed: break;
    }
    return std::exp(-Be) * E;
}

RealFn homogeneous_solution(const CaseTag& tag, const ProblemSpec& p, double alpha) {
    return [tag, p, alpha](double t) {
        const Eigen::Matrix2d E = matexp(tag, p, t, ExpMode::Closed);
        return alpha * (E(0, 1) + E(1, 1));
    };
}

}  // namespace refl
