#pragma once

#include "refl/funcspace.hpp"
#include "refl/problem.hpp"
#include "refl/solver.hpp"

#include <Eigen/Dense>

#include <functional>

namespace refl {

/// Change of variable t = f(s) carrying an involution phi on [phi(T), T] to the reflection
/// s -> -s on [-S, S], with f(-s) = phi(f(s)).
struct InvolutionSpec {
    RealFn phi;
    double T = 0.0;   ///< right end of the original interval; the left end is phi(T)
    double t0 = 0.0;  ///< fixed point of phi
    double S = 1.0;
    RealFn g;         ///< increasing map [-S, 0] -> [phi(T), t0]
    RealFn g_inv;
    RealFn f;
    RealFn f_inv;
    RealFn f_prime;

    double left() const { return phi(T); }
};

/// Builds f(s) = g(s) on [-S, 0] and phi(g(-s)) on (0, S]. When `g` is empty the affine map
/// g(s) = t0 + s (t0 - phi(T)) / S is used. Throws InputError when phi is not an involution
/// on [phi(T), T] (1e-10), when g misses its endpoints, or when f is not increasing.
InvolutionSpec build_f(RealFn phi, double T, double t0, double S = 1.0, RealFn g = {});

/// Reflection x -> -x on [-T, T]: f is the identity.
InvolutionSpec reflection_involution(double T);

/// d(t) x'(t) + a(t) x(phi(t)) + b(t) x(t) = h(t) on [phi(T), T], x(phi(T)) = x(T).
struct InvolutionProblem {
    RealFn a;
    RealFn b;
    RealFn h;
    RealFn d;  ///< empty means d = 1
};

/// Reflection-form problem on [-S, S] with coefficients a(f) f'/d(f), b(f) f'/d(f), h(f) f'/d(f).
/// Throws NumericalError when d(f(s)) or f'(s) vanishes on the sample grid.
ProblemSpec transform_problem(const InvolutionProblem& q, const InvolutionSpec& inv);

/// x(t) = y(f^{-1}(t)).
RealFn transport_back(const RealFn& y, const InvolutionSpec& inv);

/// Residual of the original equation at n cell midpoints of [phi(T), T], plus |x(phi(T)) - x(T)|.
ResidualReport involution_residual(const InvolutionProblem& q, const InvolutionSpec& inv, const RealFn& x,
                                   int n_points = 200);

/// Coefficients of d x'(t) + c x'(-t) + a x(-t) + b x(t) = h on [-T, T].
struct GeneralCoeffs {
    double T = 1.0;
    RealFn a;
    RealFn b;
    RealFn c;
    RealFn d;
    RealFn h;
};

/// Matrix multiplying (x_o', x_e') once the equation is split into even and odd parts:
/// ((d_e + c_e, d_o - c_o), (d_o + c_o, d_e - c_e)).
Eigen::Matrix2d lambda_matrix(const GeneralCoeffs& gc, double t);

/// det of lambda_matrix, equal to d(t) d(-t) - c(t) c(-t).
double lambda_det(const GeneralCoeffs& gc, double t);

/// Parity-system matrix ((a_o - b_o, -a_e - b_e), (a_e - b_e, -a_o - b_o)).
Eigen::Matrix2d parity_matrix(const RealFn& a, const RealFn& b, double t);

struct ReducedSystem {
    std::function<Eigen::Matrix2d(double)> matrix;  ///< Lambda^{-1} M
    std::function<Eigen::Vector2d(double)> forcing; ///< Lambda^{-1} (h_e, h_o)
    double min_abs_det = 0.0;
};

/// (x_o, x_e)' = Lambda^{-1} M (x_o, x_e) + Lambda^{-1} (h_e, h_o). Throws NumericalError when
/// |det Lambda| <= 1e-10 somewhere on a 513-point grid.
ReducedSystem reduce_general(const GeneralCoeffs& gc);

}  // namespace refl
