#pragma once

#include "refl/classify.hpp"
#include "refl/kernels.hpp"
#include "refl/problem.hpp"

#include <string>
#include <string_view>

namespace refl {

/// Threshold on |A(T)| below which the composed kernel keeps one sign:
/// arccos(k) / (2 sqrt(1 - k^2)) on (-1, 1), 1/2 at k = 1, acosh(k) / (2 sqrt(k^2 - 1)) for k > 1.
/// Returns +infinity for k <= -1.
double sigma(double k);

struct Phasor {
    double amplitude;
    double theta;  ///< in [-pi, pi)
};

/// alpha cos(g) + beta sin(g) = amplitude sin(g + theta). Throws InputError on (0, 0).
Phasor phasor(double alpha, double beta);

enum class HypBranch { Cosh, NegCosh, Sinh, NegSinh, ExpPlus, ExpMinus };

std::string_view branch_name(HypBranch b) noexcept;

struct HypPhasor {
    HypBranch branch;
    double value;
};

/// alpha cosh(g) + beta sinh(g) through the six-branch hyperbolic phasor formula.
HypPhasor hyperbolic_phasor(double alpha, double beta, double gamma);

enum class SignVerdict { StrictlyPositive, StrictlyNegative, VanishesOnP, Indefinite, ConstantSignByThreshold, Unknown };
enum class OperatorVerdict { InversePositive, InverseNegative, Neither };

std::string_view verdict_name(SignVerdict v) noexcept;
std::string_view operator_verdict_name(OperatorVerdict v) noexcept;

inline constexpr int kSignGridPoints = 101;

struct SignReport {
    SignVerdict verdict = SignVerdict::Unknown;
    int sign = 0;  ///< +1 / -1 when the verdict fixes a sign, else 0
    double sigma = 0.0;
    double A_T = 0.0;
    double A_max = 0.0;  ///< max of A over the sample grid
    OperatorVerdict op = OperatorVerdict::Neither;
    /// Extrema over the off-diagonal sample grid; the corner (T, -T) is left out because it
    /// belongs to P, where the kernel may vanish at the threshold.
    double grid_min = 0.0;
    double grid_max = 0.0;
    /// For VanishesOnP: the largest |K| over the four points of P (smallest closure value each).
    double p_max_abs = 0.0;
    std::string basis;
};

/// Threshold-based sign verdict plus empirical extrema on a 101 x 101 grid.
/// Throws InputError for C4, C5 and Mixed tags.
SignReport classify_sign(const ProblemSpec& p, const CaseTag& tag, const Kernel& K);

struct MixedPositivityReport {
    bool coefficient_bounds = false;  ///< 0 < |b| < a < omega on the grid
    bool inf_h_positive = false;
    bool omega_below_pi_over_2T = false;  ///< reading omega < pi / (2T)
    bool omega_below_pi_T_over_2 = false; ///< reading omega < pi T / 2
    bool window_ok = false;               ///< w in (max(0, T - pi/(4 omega)), T/2)
    double c = 0.0;
    double interval_lo = 0.0;  ///< positivity interval of the solution
    double interval_hi = 0.0;

    bool passes_first_reading() const noexcept {
        return coefficient_bounds && inf_h_positive && omega_below_pi_over_2T && window_ok;
    }
    bool passes_second_reading() const noexcept {
        return coefficient_bounds && inf_h_positive && omega_below_pi_T_over_2 && window_ok;
    }
};

/// Checks the hypotheses of the mixed-case positivity result on a 513-point grid and evaluates
/// c = [1 - tan(omega d)][1 - tan(omega w)] / ([1 + tan(omega d)][1 + tan(omega w)]).
/// Throws InputError unless omega > 0, w = T - d and -T <= w <= d <= T.
MixedPositivityReport check_mixed_positivity(const ProblemSpec& p, double omega, double w, double d);

}  // namespace refl
