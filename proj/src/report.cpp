#include "refl/report.hpp"

#include "refl/error.hpp"

#include <cstdio>
#include <ostream>

namespace refl {

Json case_report(const CaseTag& tag) {
    Json j;
    j["case"] = std::string(case_name(tag.kind));
    j["k"] = tag.k;
    j["A_T"] = tag.A_T;
    j["uniqueness_ok"] = tag.uniqueness_ok;
    j["fit_residual"] = tag.fit_residual;
    return j;
}

void add_outcome(Json& j, const SolveOutcome& out) {
    std::visit(
        [&](const auto& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, Unique>) {
                j["outcome"] = "Unique";
            } else if constexpr (std::is_same_v<R, Family>) {
                j["outcome"] = "Family";
                j["family"] = "u_c = u + c*v";
            } else if constexpr (std::is_same_v<R, NoSolution>) {
                j["outcome"] = "NoSolution";
                j["violated_condition"] = r.condition;
            } else {
                j["outcome"] = "NotContractive";
            }
        },
        out.result);
    if (out.has_solution()) {
        j["residual_sup"] = out.report.residual_sup;
        j["bc_gap"] = out.report.bc_gap;
    }
    if (!std::holds_alternative<Unique>(out.result) || out.condition_value != 0.0)
        j["condition_value"] = out.condition_value;
    if (out.bound != 0.0) j["bound"] = out.bound;
    if (out.iterations > 0) j["iterations"] = out.iterations;
}

Json sign_report(const SignReport& r) {
    Json j;
    j["verdict"] = std::string(verdict_name(r.verdict));
    j["sign"] = r.sign;
    j["sigma"] = r.sigma;
    j["A_T"] = r.A_T;
    j["A_max"] = r.A_max;
    j["operator"] = std::string(operator_verdict_name(r.op));
    j["grid_min"] = r.grid_min;
    j["grid_max"] = r.grid_max;
    if (r.verdict == SignVerdict::VanishesOnP) j["p_max_abs"] = r.p_max_abs;
    j["basis"] = r.basis;
    return j;
}

Json mixed_positivity_report(const MixedPositivityReport& r) {
    Json j;
    j["coefficient_bounds"] = r.coefficient_bounds;
    j["inf_h_positive"] = r.inf_h_positive;
    j["omega_below_pi_over_2T"] = r.omega_below_pi_over_2T;
    j["omega_below_pi_T_over_2"] = r.omega_below_pi_T_over_2;
    j["window_ok"] = r.window_ok;
    j["c"] = r.c;
    j["positivity_interval"] = {r.interval_lo, r.interval_hi};
    j["passes_pi_over_2T"] = r.passes_first_reading();
    j["passes_pi_T_over_2"] = r.passes_second_reading();
    return j;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_solution_csv(std::ostream& out, const RealFn& u, const RealFn* direction, double lo, double hi,
                        int points) {
    if (points < 2) throw InputError("--grid needs at least two points");
    out << (direction ? "t,u,v\n" : "t,u\n");
    for (int i = 0; i < points; ++i) {
        const double t = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
        out << format_double(t) << ',' << format_double(u(t));
        if (direction) out << ',' << format_double((*direction)(t));
        out << '\n';
    }
}

}  // namespace refl
