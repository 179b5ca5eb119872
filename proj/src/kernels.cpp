#include "refl/kernels.hpp"

#include "refl/error.hpp"
#include "refl/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace refl {

Region region_of(double t, double s) noexcept {
    if (t >= std::fabs(s)) return Region::TAbove;
    if (s >= std::fabs(t)) return Region::SAbove;
    if (-t >= std::fabs(s)) return Region::TBelow;
    return Region::SBelow;
}

Kernel::Kernel(std::string name, double half_width, std::array<BivariateFn, 4> pieces,
               BivariateFn prefactor)
    : name_(std::move(name)), T_(half_width), pieces_(std::move(pieces)), prefactor_(std::move(prefactor)) {}

double Kernel::piece(Region r, double t, double s) const {
    const double v = pieces_[static_cast<std::size_t>(r)](t, s);
    return prefactor_ ? prefactor_(t, s) * v : v;
}

double Kernel::jump(double t) const {
    if (t > 0.0) return piece(Region::TAbove, t, t) - piece(Region::SAbove, t, t);
    if (t < 0.0) return piece(Region::SBelow, t, t) - piece(Region::TBelow, t, t);
    throw InputError("the diagonal jump is taken at t != 0, where two regions meet");
}

std::vector<double> Kernel::closure_values(double t, double s) const {
    std::vector<double> out;
    const double at = std::fabs(t), as = std::fabs(s);
    if (t >= as) out.push_back(piece(Region::TAbove, t, s));
    if (s >= at) out.push_back(piece(Region::SAbove, t, s));
    if (-t >= as) out.push_back(piece(Region::TBelow, t, s));
    if (-s >= at) out.push_back(piece(Region::SBelow, t, s));
    return out;
}

namespace {

// (sign of t - s, sign of t + s) inside each region.
struct RegionSigns {
    double minus;
    double plus;
};

constexpr std::array<RegionSigns, 4> kSigns{{
    {+1.0, +1.0},  // TAbove
    {-1.0, +1.0},  // SAbove
    {-1.0, -1.0},  // TBelow
    {+1.0, -1.0},  // SBelow
}};

void check_not_degenerate(double a, double b) {
    if (std::fabs(a * a - b * b) <= 1e-12 * (a * a + b * b))
        throw ResonanceError("|a| = |b|: the constant-coefficient kernel degenerates (use the C3/C4 routes)");
}

}  // namespace

namespace detail {

std::array<BivariateFn, 4> const_pieces(double a, double b, double T) {
    check_not_degenerate(a, b);
    std::array<BivariateFn, 4> pieces;
    const double d = a * a - b * b;
    if (d > 0.0) {
        // a G(t,-s) - b G(t,s) + dG/dt(t,s) with G(t,s) = cos(w(|t-s| - T)) / (2 w sin(wT)).
        const double w = std::sqrt(d);
        const double x = w * T / std::numbers::pi;
        if (std::fabs(x - std::round(x)) <= 1e-12 * std::max(1.0, std::fabs(x)))
            throw ResonanceError("omega T is a multiple of pi: the problem is resonant");
        const double denom = 2.0 * w * std::sin(w * T);
        for (std::size_t r = 0; r < 4; ++r) {
            const auto [sm, sp] = kSigns[r];
            pieces[r] = [=](double t, double s) {
                const double diff = w * (sm * (t - s) - T);
                return (a * std::cos(w * (sp * (t + s) - T)) - b * std::cos(diff) - w * sm * std::sin(diff)) / denom;
            };
        }
    } else {
        // Same construction with G(t,s) = -cosh(th(|t-s| - T)) / (2 th sinh(th T)).
        const double th = std::sqrt(-d);
        if (T == 0.0) throw ResonanceError("zero half-width");
        const double denom = 2.0 * th * std::sinh(th * T);
        for (std::size_t r = 0; r < 4; ++r) {
            const auto [sm, sp] = kSigns[r];
            pieces[r] = [=](double t, double s) {
                const double diff = th * (sm * (t - s) - T);
                return (-a * std::cosh(th * (sp * (t + s) - T)) + b * std::cosh(diff) - th * sm * std::sinh(diff)) / denom;
            };
        }
    }
    return pieces;
}

std::array<BivariateFn, 4> c3_pieces(double a, double T) {
    if (a == 0.0) throw InputError("the C3 kernel needs a != 0");
    if (T == 0.0) throw ResonanceError("the C3 kernel needs a nonzero half-width");
    // Common part 1/(4aT) - (t - s)/(2T) - a t s / T plus one affine term per region.
    auto common = [a, T](double t, double s) {
        return 1.0 / (4.0 * a * T) - (t - s) / (2.0 * T) - a * t * s / T;
    };
    return {
        [=](double t, double s) { return common(t, s) + 0.5 + a * s; },
        [=](double t, double s) { return common(t, s) - 0.5 + a * t; },
        [=](double t, double s) { return common(t, s) - 0.5 - a * s; },
        [=](double t, double s) { return common(t, s) + 0.5 - a * t; },
    };
}

}  // namespace detail

Kernel const_kernel(double a, double b, double T) {
    if (!(T > 0.0)) throw InputError("half-width T must be positive");
    return Kernel("const", T, detail::const_pieces(a, b, T));
}

Kernel c3_kernel(double a, double T) {
    if (!(T > 0.0)) throw InputError("half-width T must be positive");
    return Kernel("c3", T, detail::c3_pieces(a, T));
}

Kernel composed_kernel(const ProblemSpec& p, const CaseTag& tag) {
    if (tag.kind != CaseKind::C1 && tag.kind != CaseKind::C2 && tag.kind != CaseKind::C3)
        throw InputError("composed kernel exists for C1, C2 and C3 only (got " +
                         std::string(case_name(tag.kind)) + ")");
    if (tag.A_T == 0.0) throw ResonanceError("A(T) = 0: no Green's function");
    if (!check_uniqueness(tag))
        throw ResonanceError("uniqueness condition fails for " + std::string(case_name(tag.kind)) +
                             " with k = " + std::to_string(tag.k) + ", A(T) = " + std::to_string(tag.A_T));

    // Inner problem x' + x(-t) + k x(t) = h with half-width A(T), signed.
    const auto inner = tag.kind == CaseKind::C3 ? detail::c3_pieces(1.0, tag.A_T)
                                                : detail::const_pieces(1.0, tag.k, tag.A_T);
    const Primitive A = p.a.primitive();
    const Primitive Be = even_primitive_of_b(p.b);

    std::array<BivariateFn, 4> pieces;
    for (std::size_t r = 0; r < 4; ++r) {
        pieces[r] = [k = inner[r], A](double t, double s) { return k(A(t), A(s)); };
    }
    auto prefactor = [Be](double t, double s) { return std::exp(Be(s) - Be(t)); };
    return Kernel("composed-" + std::string(case_name(tag.kind)), p.T, std::move(pieces), std::move(prefactor));
}

Kernel ode_kernel(const ScalarFn& upsilon, double T) {
    const Primitive V = upsilon.half_width() == T ? upsilon.primitive() : Primitive(upsilon.function(), T);
    const double total = V(T) - V(-T);
    if (std::fabs(total) <= 1e-10) throw ResonanceError("integral of a + b vanishes: the ODE kernel does not exist");
    const double tau = 1.0 / (1.0 - std::exp(-total));
    BivariateFn lower = [V, tau](double t, double s) { return tau * std::exp(V(s) - V(t)); };
    BivariateFn upper = [V, tau](double t, double s) { return (tau - 1.0) * std::exp(V(s) - V(t)); };
    // s <= t in TAbove and SBelow, s > t in SAbove and TBelow.
    return Kernel("ode", T, {lower, upper, upper, lower});
}

double ode_kernel_bound(const ScalarFn& upsilon, double T) {
    const RealFn& v = upsilon.function();
    const double pos = quad::adaptive_simpson([&](double t) { return std::max(v(t), 0.0); }, -T, T, 1e-12);
    const double neg = quad::adaptive_simpson([&](double t) { return std::max(-v(t), 0.0); }, -T, T, 1e-12);
    const double gap = std::fabs(std::exp(pos) - std::exp(neg));
    if (gap == 0.0) throw ResonanceError("integral of a + b vanishes: F(v) is unbounded");
    return std::exp(pos + neg) / gap;
}

void export_kernel_csv(const Kernel& K, int points, std::ostream& out) {
    if (points < 2) throw InputError("kernel grid needs at least two points per axis");
    const double T = K.half_width();
    const double step = 2.0 * T / (points - 1);
    char buf[96];
    out << "t,s,G\n";
    for (int i = 0; i < points; ++i) {
        const double t = -T + step * i;
        for (int j = 0; j < points; ++j) {
            const double s = -T + step * j;
            if (std::fabs(t - s) < 0.5 * step) continue;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, s, K(t, s));
            out << buf;
        }
    }
}

}  // namespace refl
