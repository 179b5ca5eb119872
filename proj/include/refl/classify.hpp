#pragma once

#include "refl/problem.hpp"

#include <string_view>

namespace refl {

/// Commuting-coefficient regimes of the reflection equation.
///   C1: b_e = k a, |k| < 1      C2: b_e = k a, |k| > 1
///   C3: b_e = a                 C4: b_e = -a
///   C5: a_e = b_e = 0           Mixed: none of the above
enum class CaseKind { C1, C2, C3, C4, C5, Mixed };

std::string_view case_name(CaseKind kind) noexcept;

inline constexpr double kClassifyTolerance = 1e-9;
inline constexpr int kClassifyGridPoints = 513;

struct CaseTag {
    CaseKind kind = CaseKind::Mixed;
    double k = 0.0;             ///< fitted proportionality b_e = k a (1 for C3, -1 for C4)
    double A_T = 0.0;           ///< A(T) = int_0^T a
    bool uniqueness_ok = false; ///< starred condition for C1-C3; false otherwise
    double fit_residual = 0.0;  ///< sup |b_e - k a| on the classification grid
    double a_odd_sup = 0.0;
    double a_even_sup = 0.0;
    double b_even_sup = 0.0;
    double a_sup = 0.0;
};

/// Classifies `p` (the forcing h is ignored). Throws InputError when a vanishes identically.
CaseTag detect_case(const ProblemSpec& p, double tol = kClassifyTolerance);

/// Starred uniqueness condition for C1/C2/C3 with a 1e-8 margin.
/// Throws InputError for any other case.
bool check_uniqueness(const CaseTag& tag);

}  // namespace refl
