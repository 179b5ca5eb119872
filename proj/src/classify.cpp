#include "refl/classify.hpp"

#include "refl/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace refl {

std::string_view case_name(CaseKind kind) noexcept {
    switch (kind) {
        case CaseKind::C1: return "C1";
        case CaseKind::C2: return "C2";
        case CaseKind::C3: return "C3";
        case CaseKind::C4: return "C4";
        case CaseKind::C5: return "C5";
        case CaseKind::Mixed: return "Mixed";
    }
    return "?";
}

CaseTag detect_case(const ProblemSpec& p, double tol) {
    const int n = kClassifyGridPoints;
    std::vector<double> ae(n), ao(n), be(n), av(n);
    for (int i = 0; i < n; ++i) {
        const double t = -p.T + 2.0 * p.T * i / (n - 1);
        const double a_pos = p.a(t), a_neg = p.a(-t);
        const double b_pos = p.b(t), b_neg = p.b(-t);
        av[i] = a_pos;
        ae[i] = 0.5 * (a_pos + a_neg);
        ao[i] = 0.5 * (a_pos - a_neg);
        be[i] = 0.5 * (b_pos + b_neg);
    }
    auto sup = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    };

    CaseTag tag;
    tag.a_sup = sup(av);
    tag.a_even_sup = sup(ae);
    tag.a_odd_sup = sup(ao);
    tag.b_even_sup = sup(be);
    if (tag.a_sup <= tol) throw InputError("coefficient a vanishes identically; the problem is a plain ODE");
    tag.A_T = p.a.primitive()(p.T);

    if (tag.a_even_sup <= tol && tag.b_even_sup <= tol) {
        tag.kind = CaseKind::C5;
        tag.k = 0.0;
        tag.fit_residual = tag.b_even_sup;
        return tag;
    }

    // L2 projection of b_e onto a (trapezoid weights), then a sup-norm check of the residual.
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        num += w * be[i] * av[i];
        den += w * av[i] * av[i];
    }
    const double k = num / den;
    double resid = 0.0;
    for (int i = 0; i < n; ++i) resid = std::max(resid, std::fabs(be[i] - k * av[i]));
    tag.k = k;
    tag.fit_residual = resid;

    const double scale = tol * (1.0 + tag.a_sup);
    if (resid > scale || tag.a_odd_sup > scale) {
        tag.kind = CaseKind::Mixed;
        return tag;
    }
    if (std::fabs(k - 1.0) <= tol) {
        tag.kind = CaseKind::C3;
        tag.k = 1.0;
    } else if (std::fabs(k + 1.0) <= tol) {
        tag.kind = CaseKind::C4;
        tag.k = -1.0;
    } else if (std::fabs(k) < 1.0) {
        tag.kind = CaseKind::C1;
    } else {
        tag.kind = CaseKind::C2;
    }
    if (tag.kind != CaseKind::C4) tag.uniqueness_ok = check_uniqueness(tag);
    return tag;
}

bool check_uniqueness(const CaseTag& tag) {
    constexpr double margin = 1e-8;
    switch (tag.kind) {
        case CaseKind::C1: {
            // Excluded set {n pi} u {pi/2 + n pi}: all multiples of pi/2.
            const double x = std::sqrt(1.0 - tag.k * tag.k) * std::fabs(tag.A_T);
            const double quarter = 0.5 * std::numbers::pi;
            const double dist = std::fabs(x - std::round(x / quarter) * quarter);
            return dist > margin;
        }
        case CaseKind::C2: {
            // (1 - k^2) A(T)^2 <= 0 here, so only n = 0 can be hit.
            const double lhs = (1.0 - tag.k * tag.k) * tag.A_T * tag.A_T;
            double dist = std::fabs(lhs);
            for (int m = 1; m * std::numbers::pi <= std::sqrt(std::fabs(lhs)) + 1.0; ++m)
                dist = std::min(dist, std::fabs(lhs - std::pow(m * std::numbers::pi, 2)));
            return dist > margin;
        }
        case CaseKind::C3: return std::fabs(tag.A_T) > margin;
        default: break;
    }
    throw InputError("uniqueness conditions are defined for C1, C2 and C3 only (got " +
                     std::string(case_name(tag.kind)) + ")");
}

}  // namespace refl
