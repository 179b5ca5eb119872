#include "refl/signs.hpp"

#include "refl/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace refl {

double sigma(double k) {
    if (std::isnan(k)) throw InputError("sigma of NaN");
    if (k <= -1.0) return std::numeric_limits<double>::infinity();
    const double x = k - 1.0;
    if (std::fabs(x) < 1e-6) return 0.5 - x / 6.0 + x * x / 15.0;
    if (k < 1.0) return std::acos(k) / (2.0 * std::sqrt(1.0 - k * k));
    return std::acosh(k) / (2.0 * std::sqrt(k * k - 1.0));
}

Phasor phasor(double alpha, double beta) {
    if (alpha == 0.0 && beta == 0.0) throw InputError("phasor of the zero pair");
    double theta = std::atan2(alpha, beta);
    if (theta >= std::numbers::pi) theta -= 2.0 * std::numbers::pi;
    return {std::hypot(alpha, beta), theta};
}

std::string_view branch_name(HypBranch b) noexcept {
    switch (b) {
        case HypBranch::Cosh: return "cosh";
        case HypBranch::NegCosh: return "-cosh";
        case HypBranch::Sinh: return "sinh";
        case HypBranch::NegSinh: return "-sinh";
        case HypBranch::ExpPlus: return "alpha*exp(gamma)";
        case HypBranch::ExpMinus: return "alpha*exp(-gamma)";
    }
    return "?";
}

HypPhasor hyperbolic_phasor(double alpha, double beta, double gamma) {
    if (alpha == beta) return {HypBranch::ExpPlus, alpha * std::exp(gamma)};
    if (alpha == -beta) return {HypBranch::ExpMinus, alpha * std::exp(-gamma)};
    const double amp = std::sqrt(std::fabs(alpha * alpha - beta * beta));
    const double shift = 0.5 * std::log(std::fabs((alpha + beta) / (alpha - beta)));
    if (alpha > std::fabs(beta)) return {HypBranch::Cosh, amp * std::cosh(shift + gamma)};
    if (-alpha > std::fabs(beta)) return {HypBranch::NegCosh, -amp * std::cosh(shift + gamma)};
    if (beta > std::fabs(alpha)) return {HypBranch::Sinh, amp * std::sinh(shift + gamma)};
    return {HypBranch::NegSinh, -amp * std::sinh(shift + gamma)};
}

std::string_view verdict_name(SignVerdict v) noexcept {
    switch (v) {
        case SignVerdict::StrictlyPositive: return "StrictlyPositive";
        case SignVerdict::StrictlyNegative: return "StrictlyNegative";
        case SignVerdict::VanishesOnP: return "VanishesOnP";
        case SignVerdict::Indefinite: return "Indefinite";
        case SignVerdict::ConstantSignByThreshold: return "ConstantSignByThreshold";
        case SignVerdict::Unknown: return "Unknown";
    }
    return "?";
}

std::string_view operator_verdict_name(OperatorVerdict v) noexcept {
    switch (v) {
        case OperatorVerdict::InversePositive: return "InversePositive";
        case OperatorVerdict::InverseNegative: return "InverseNegative";
        case OperatorVerdict::Neither: return "Neither";
    }
    return "?";
}

namespace {

constexpr double kThresholdTol = 1e-9;

// +1 / -1 if f keeps a strict sign on the grid, 0 otherwise.
int constant_sign(const RealFn& f, double T, int n = 513) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < n; ++i) {
        const double v = f(-T + 2.0 * T * i / (n - 1));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo > 0.0) return 1;
    if (hi < 0.0) return -1;
    return 0;
}

}  // namespace

SignReport classify_sign(const ProblemSpec& p, const CaseTag& tag, const Kernel& K) {
    if (tag.kind != CaseKind::C1 && tag.kind != CaseKind::C2 && tag.kind != CaseKind::C3)
        throw InputError("sign classification covers C1, C2 and C3 only (got " +
                         std::string(case_name(tag.kind)) + ")");
    const double T = p.T;
    SignReport r;
    r.A_T = tag.A_T;
    r.sigma = sigma(tag.k);

    const int n = kSignGridPoints;
    r.grid_min = std::numeric_limits<double>::infinity();
    r.grid_max = -r.grid_min;
    const Primitive& A = p.a.primitive();
    r.A_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double t = -T + 2.0 * T * i / (n - 1);
        r.A_max = std::max(r.A_max, A(t));
        for (int j = 0; j < n; ++j) {
            if (i == j || (i == n - 1 && j == 0)) continue;
            const double v = K(t, -T + 2.0 * T * j / (n - 1));
            r.grid_min = std::min(r.grid_min, v);
            r.grid_max = std::max(r.grid_max, v);
        }
    }

    const int sa = constant_sign(p.a.function(), T);
    const bool b_zero = sup_norm(p.b.function(), T) <= kClassifyTolerance;

    if (b_zero && sa != 0) {
        const double alpha = tag.A_T;
        const double q = std::numbers::pi / 4.0;
        r.basis = "b = 0, a of constant sign: A(T) against pi/4";
        if (std::fabs(alpha - q) <= kThresholdTol) {
            r.verdict = SignVerdict::VanishesOnP;
            r.sign = 1;
        } else if (std::fabs(alpha + q) <= kThresholdTol) {
            r.verdict = SignVerdict::VanishesOnP;
            r.sign = -1;
        } else if (alpha > 0.0 && alpha < q) {
            r.verdict = SignVerdict::StrictlyPositive;
            r.sign = 1;
        } else if (alpha < 0.0 && alpha > -q) {
            r.verdict = SignVerdict::StrictlyNegative;
            r.sign = -1;
        } else {
            r.verdict = SignVerdict::Indefinite;
        }
        if (alpha > 0.0 && alpha <= q + kThresholdTol) r.op = OperatorVerdict::InversePositive;
        if (alpha < 0.0 && alpha >= -q - kThresholdTol) r.op = OperatorVerdict::InverseNegative;
        if (r.verdict == SignVerdict::VanishesOnP) {
            const std::array<std::pair<double, double>, 4> P{{{-T, -T}, {0.0, 0.0}, {T, T}, {T, -T}}};
            for (const auto& [t, s] : P) {
                double smallest = std::numeric_limits<double>::infinity();
                for (double v : K.closure_values(t, s)) smallest = std::min(smallest, std::fabs(v));
                r.p_max_abs = std::max(r.p_max_abs, smallest);
            }
        }
        return r;
    }

    if (sa != 0) {
        r.basis = "a of constant sign: |A(T)| < sigma(k)";
        if (std::fabs(tag.A_T) < r.sigma) {
            r.verdict = SignVerdict::ConstantSignByThreshold;
            r.sign = tag.kind == CaseKind::C2 ? (tag.k > 0.0 ? sa : -sa) : sa;
        }
        return r;
    }

    r.basis = "a changes sign: max A(I) < sigma(k)";
    if (r.A_max < r.sigma) {
        r.verdict = SignVerdict::ConstantSignByThreshold;
        r.sign = constant_sign([&](double t) { return p.a(t) + p.b(t); }, T);
    }
    return r;
}

MixedPositivityReport check_mixed_positivity(const ProblemSpec& p, double omega, double w, double d) {
    const double T = p.T;
    if (!(omega > 0.0)) throw InputError("omega must be positive");
    if (std::fabs(w - (T - d)) > 1e-12 * std::max(1.0, T)) throw InputError("window must satisfy w = T - d");
    if (!(w <= d) || w < -T || d > T) throw InputError("window [w, d] must lie inside [-T, T]");

    MixedPositivityReport r;
    r.coefficient_bounds = true;
    double h_inf = std::numeric_limits<double>::infinity();
    const int n = 513;
    for (int i = 0; i < n; ++i) {
        const double t = -T + 2.0 * T * i / (n - 1);
        const double a = p.a(t), b = std::fabs(p.b(t));
        if (!(0.0 < b && b < a && a < omega)) r.coefficient_bounds = false;
        h_inf = std::min(h_inf, p.h(t));
    }
    r.inf_h_positive = h_inf > 0.0;
    r.omega_below_pi_over_2T = omega < std::numbers::pi / (2.0 * T);
    r.omega_below_pi_T_over_2 = omega < std::numbers::pi * T / 2.0;
    const double quarter = std::numbers::pi / (4.0 * omega);
    r.window_ok = w > std::max(0.0, T - quarter) && w < T / 2.0;
    const double td = std::tan(omega * d), tw = std::tan(omega * w);
    r.c = (1.0 - td) * (1.0 - tw) / ((1.0 + td) * (1.0 + tw));
    r.interval_lo = std::max(0.0, T - quarter);
    r.interval_hi = std::min(T, quarter);
    return r;
}

}  // namespace refl
