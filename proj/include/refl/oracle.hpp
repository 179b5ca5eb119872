#pragma once

#include "refl/classify.hpp"
#include "refl/problem.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

namespace refl {

/// Collocation values on the symmetric grid t_i = -T + 2 T i / N, with x_N = x_0.
struct GridSolution {
    int N = 0;
    int order = 2;
    std::vector<double> t;
    std::vector<double> x;
    double condition = 0.0;  ///< 2-norm condition number of the dense system

    /// Piecewise linear interpolation of the grid values.
    double operator()(double s) const;
};

/// Trapezoid discretization of x(t_i) = x(t_0) + int_{-T}^{t_i} (h - a x(-.) - b x), closed by
/// x_N = x_0 and solved densely. Throws InputError unless N is even and >= 8, and
/// ResonanceError when the system is numerically singular (condition > 1e15).
GridSolution collocation_solve(const ProblemSpec& p, int N);

/// Condition number of the collocation matrix alone.
double collocation_condition(const ProblemSpec& p, int N);

using MatFn = std::function<Eigen::Matrix2d(double)>;
using VecFn = std::function<Eigen::Vector2d(double)>;

struct Trajectory {
    std::vector<double> t;  ///< ascending, from -T to T
    std::vector<Eigen::Vector2d> y;
};

/// Classical RK4 for y' = M(t) y + F(t) from y(0) = y0, `steps` steps towards each end.
Trajectory integrate_system(const MatFn& M, const VecFn& F, const Eigen::Vector2d& y0, double T, int steps);

/// The (x_o, x_e) parity system of the problem; the forcing is (h_e, h_o).
Trajectory integrate_parity_system(const ProblemSpec& p, const Eigen::Vector2d& x0, int steps);

/// 2x2 matrix of functions.
struct FunMatrix2 {
    std::array<RealFn, 4> entries;  ///< row-major
    Eigen::Matrix2d operator()(double t) const;
};

/// M(t) of the parity system.
FunMatrix2 system_matrix(const ProblemSpec& p);

/// Mbar(t) = int_0^t M, entries built from primitives of the parity parts of a and b.
FunMatrix2 system_primitive(const ProblemSpec& p);

/// M(t) M(s) - M(s) M(t).
Eigen::Matrix2d commutator(const FunMatrix2& M, double t, double s);

enum class ExpMode { Closed, Series };

/// e^{Mbar(t)}: the closed form of the case or a scaling-and-squaring Taylor series.
/// Throws InputError for Mixed.
Eigen::Matrix2d matexp(const CaseTag& tag, const ProblemSpec& p, double t, ExpMode mode);

/// Scaling and squaring with a 12-term Taylor polynomial at scaled norm <= 0.5.
Eigen::Matrix2d expm_series(const Eigen::Matrix2d& X);

/// Solution of the homogeneous equation with x_o(0) = 0, x_e(0) = alpha:
/// alpha times the sum of the second column of the closed-form e^{Mbar(t)}.
RealFn homogeneous_solution(const CaseTag& tag, const ProblemSpec& p, double alpha);

}  // namespace refl
