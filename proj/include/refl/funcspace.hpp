#pragma once

#include "refl/expr.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace refl {

using RealFn = std::function<double(double)>;

/// Absolute tolerance used for cumulative primitives unless a caller asks otherwise.
inline constexpr double kPrimitiveTolerance = 1e-10;
/// Number of cached panels on [-T, T].
inline constexpr int kPrimitivePanels = 2048;

/// Cumulative integral t -> int_0^t f(s) ds on [-T, T].
///
/// Built once from a dense partition: every panel is integrated by adaptive Simpson and the
/// running sums are stored at the panel nodes together with f itself. Evaluation between nodes
/// uses the cubic Hermite interpolant of (F, F' = f); panels where that interpolant misses the
/// tolerance at the midpoint (kinks, jumps, steep layers) fall back to a local adaptive
/// quadrature from the left node. Outside [-T, T] the value is continued by quadrature from the
/// nearest end node. Immutable and cheap to copy.
class Primitive {
public:
    Primitive() = default;
    Primitive(RealFn integrand, double half_width, double tol = kPrimitiveTolerance,
              int panels = kPrimitivePanels);

    double operator()(double t) const;
    /// The integrand itself, i.e. the derivative of the primitive.
    double integrand(double t) const { return table_->f(t); }
    double half_width() const noexcept { return table_->T; }
    double tolerance() const noexcept { return table_->tol; }
    /// Number of panels that needed the quadrature fallback; exposed for diagnostics.
    std::size_t fallback_panels() const noexcept;

private:
    struct Table {
        RealFn f;
        double T = 0.0;
        double tol = 0.0;
        double h = 0.0;
        int panels = 0;
        std::vector<double> F;   // primitive at nodes
        std::vector<double> df;  // integrand at nodes
        std::vector<unsigned char> fallback;
    };
    std::shared_ptr<const Table> table_;
};

/// Evaluable real function on [-T, T] with a lazily built, cached primitive.
class ScalarFn {
public:
    ScalarFn() = default;
    ScalarFn(RealFn fn, double half_width, std::string label = {});

    static ScalarFn from_expr(const expr::Expr& e, double half_width);
    static ScalarFn constant(double value, double half_width);

    double operator()(double t) const { return fn_(t); }
    double half_width() const noexcept;
    const std::string& label() const noexcept;
    const RealFn& function() const noexcept { return fn_; }

    /// Primitive at the default tolerance, computed on first use and shared by copies.
    const Primitive& primitive() const;

private:
    struct State;
    std::shared_ptr<State> state_;
    RealFn fn_;
};

struct ParityPair {
    ScalarFn even;
    ScalarFn odd;
};

/// f_e(t) = (f(t) + f(-t)) / 2 and f_o(t) = (f(t) - f(-t)) / 2, as closures over f.
ParityPair parity_decompose(const ScalarFn& f);

/// A(t) = int_0^t f. Throws NumericalError when the quadrature budget is exceeded.
Primitive cumulative_primitive(const ScalarFn& f, double tol = kPrimitiveTolerance);

/// B_e(t) = int_0^t b_o, the even part of the primitive of b.
Primitive even_primitive_of_b(const ScalarFn& b, double tol = kPrimitiveTolerance);

/// sup |f| sampled on `points` uniform nodes of [-T, T].
double sup_norm(const RealFn& f, double half_width, int points = 513);

}  // namespace refl
