#pragma once

#include "refl/kernels.hpp"
#include "refl/problem.hpp"

#include <string>
#include <variant>
#include <vector>

namespace refl {

struct ResidualReport {
    double residual_sup = 0.0;  ///< sup |u' + a u(-t) + b u - h| on the sample grid
    double bc_gap = 0.0;        ///< |u(T) - u(-T)|
};

/// Sup of the equation residual at n cell midpoints of [-T, T], with u' from a five-point
/// central difference of step 1e-5 T. An odd n is bumped to n + 1 so that t = 0, where
/// coefficients assembled from parity parts may have a kink, is never a sample.
ResidualReport residual(const ProblemSpec& p, const RealFn& u, int n_points = 200);

struct Unique {
    RealFn u;
};

/// u_c = particular + c * direction.
struct Family {
    RealFn particular;
    RealFn direction;
    RealFn member(double c) const;
};

struct NoSolution {
    std::string condition;
    double condition_value = 0.0;
};

struct NotContractive {
    double bound = 0.0;
};

struct SolveOutcome {
    std::variant<Unique, Family, NoSolution, NotContractive> result;
    /// Residual of the unique solution, or the worst of the family members c in {-1, 0, 1}.
    ResidualReport report;
    double condition_value = 0.0;  ///< solvability integral (C4/C5)
    double bound = 0.0;            ///< contraction bound (Mixed)
    int iterations = 0;            ///< Picard sweeps (Mixed)
    std::vector<double> increments;

    bool has_solution() const noexcept {
        return std::holds_alternative<Unique>(result) || std::holds_alternative<Family>(result);
    }
    /// The unique solution or the c = 0 family member; throws if there is none.
    const RealFn& solution() const;
};

/// u(t) = int K(t, s) h(s) ds, integrated separately over [-T, -|t|], [-|t|, |t|], [|t|, T]
/// so that every panel sees one analytic piece of the kernel.
SolveOutcome solve_green(const ProblemSpec& p, const Kernel& K);

/// Case C4 (b_e = -a). Solvable iff int_0^T e^{B_e} h_e = 0; the test is
/// |condition| <= tol (1 + int_0^T e^{B_e} |h_e|).
SolveOutcome solve_c4(const ProblemSpec& p, double tol = 1e-6);

/// Case C5 (a_e = b_e = 0). Solvable iff int_0^T e^{B - A} h_e = 0, same scaling as C4.
SolveOutcome solve_c5(const ProblemSpec& p, double tol = 1e-6);

/// F(v) |a|_1 min_{p in {1, 2, inf}} (2T)^{1/p} (|a|_{p*} + |b|_{p*}) with v = a + b.
double contraction_bound(const ProblemSpec& p);

inline constexpr int kMixedIntervals = 512;

/// Picard iteration x <- Hx + beta on the symmetric grid with kMixedIntervals intervals,
/// starting from beta, until the sup increment drops below tol. Returns NotContractive
/// without iterating when contraction_bound(p) >= 1.
SolveOutcome solve_mixed(const ProblemSpec& p, double tol = 1e-11, int max_iter = 200);

/// Dispatch on the case tag: composed kernel for C1-C3, solvability routes for C4/C5,
/// Picard iteration for Mixed.
SolveOutcome solve(const ProblemSpec& p, const CaseTag& tag, double tol = 1e-6);

}  // namespace refl
