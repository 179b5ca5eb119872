#pragma once

#include "refl/classify.hpp"
#include "refl/problem.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace refl {

/// The four open regions of [-T, T]^2 cut out by the diagonals s = t and s = -t.
enum class Region : int {
    TAbove = 0,  ///< t > |s|
    SAbove = 1,  ///< s > |t|
    TBelow = 2,  ///< -t > |s|
    SBelow = 3,  ///< -s > |t|
};

/// Region whose closure contains (t, s), ties resolved in the order TAbove, SAbove, TBelow, SBelow.
Region region_of(double t, double s) noexcept;

using BivariateFn = std::function<double(double, double)>;

/// Piecewise bivariate Green's function.
///
/// Each region carries an evaluator that is analytic on a neighbourhood of its region, so
/// one-sided limits on the seams are obtained by evaluating the piece directly. The optional
/// prefactor multiplies every piece (e^{B_e(s) - B_e(t)} for the composed kernel).
class Kernel {
public:
    Kernel(std::string name, double half_width, std::array<BivariateFn, 4> pieces,
           BivariateFn prefactor = {});

    double operator()(double t, double s) const { return piece(region_of(t, s), t, s); }
    double piece(Region r, double t, double s) const;
    double prefactor(double t, double s) const { return prefactor_ ? prefactor_(t, s) : 1.0; }

    /// K(t, t^-) - K(t, t^+) from the two pieces adjacent to the diagonal; t != 0.
    double jump(double t) const;

    /// Values of every piece whose region closure contains (t, s).
    std::vector<double> closure_values(double t, double s) const;

    double half_width() const noexcept { return T_; }
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
    double T_;
    std::array<BivariateFn, 4> pieces_;
    BivariateFn prefactor_;
};

/// Green's function of x' + a x(-t) + b x(t) = h on [-T, T], x(-T) = x(T), a and b constant.
/// Trigonometric for a^2 > b^2 (omega = sqrt(a^2 - b^2)), hyperbolic for b^2 > a^2.
/// Throws ResonanceError when |a| = |b| or omega T is a multiple of pi.
Kernel const_kernel(double a, double b, double T);

/// Green's function of x' + a (x(t) + x(-t)) = h on [-T, T], x(-T) = x(T), a != 0.
Kernel c3_kernel(double a, double T);

/// Kernel for variable coefficients in cases C1-C3:
/// G1(t, s) = e^{B_e(s) - B_e(t)} k_j(A(t), A(s)) where j is the region of (t, s) and k_j are
/// the pieces of the constant-coefficient kernel for x' + x(-t) + k x(t) with half-width A(T).
/// Throws ResonanceError when the uniqueness condition fails, InputError for other cases.
Kernel composed_kernel(const ProblemSpec& p, const CaseTag& tag);

/// Periodic Green's function of the ODE x' + v(t) x = h:
/// tau e^{V(s) - V(t)} for s <= t, (tau - 1) e^{V(s) - V(t)} for s > t,
/// tau = 1 / (1 - e^{-int v}). Throws ResonanceError when |int v| <= 1e-10.
Kernel ode_kernel(const ScalarFn& upsilon, double T);

/// F(v) = e^{|v|_1} / |e^{|v+|_1} - e^{|v-|_1}|, the uniform bound on |G3|.
double ode_kernel_bound(const ScalarFn& upsilon, double T);

/// CSV rows `t,s,G` (17 significant digits) over a uniform (points x points) grid,
/// row-major in t, skipping the diagonal band |t - s| < step / 2.
void export_kernel_csv(const Kernel& K, int points, std::ostream& out);

namespace detail {
/// Region pieces of the constant-coefficient kernel. `T` may be negative: the pieces are the
/// analytic formulas with T as a parameter, which is what the composed kernel needs when A(T) < 0.
std::array<BivariateFn, 4> const_pieces(double a, double b, double T);
std::array<BivariateFn, 4> c3_pieces(double a, double T);
}  // namespace detail

}  // namespace refl
