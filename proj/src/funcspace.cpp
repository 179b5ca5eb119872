#include "refl/funcspace.hpp"

#include "refl/error.hpp"
#include "refl/grid.hpp"
#include "refl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace refl {

Primitive::Primitive(RealFn integrand, double half_width, double tol, int panels) {
    if (!(half_width > 0.0)) throw InputError("primitive needs a positive half-width");
    if (!(tol > 0.0)) throw InputError("primitive tolerance must be positive");
    auto table = std::make_shared<Table>();
    table->f = std::move(integrand);
    table->T = half_width;
    table->tol = tol;
    table->panels = panels;

    const SymmetricGrid grid(half_width, panels);
    table->h = grid.step();
    const auto n_nodes = grid.size();
    table->F.assign(n_nodes, 0.0);
    table->df.resize(n_nodes);
    table->fallback.assign(static_cast<std::size_t>(panels), 0);

    const RealFn& f = table->f;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        table->df[i] = f(grid[i]);
        if (!std::isfinite(table->df[i]))
            throw NumericalError("integrand not finite at t = " + std::to_string(grid[i]));
    }

    const double panel_tol = std::max(tol / panels, 1e-17);
    std::vector<double> pieces(static_cast<std::size_t>(panels));
    for (int i = 0; i < panels; ++i) {
        pieces[static_cast<std::size_t>(i)] =
            quad::adaptive_simpson(f, grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(i) + 1], panel_tol);
    }
    const std::size_t centre = static_cast<std::size_t>(panels / 2);
    for (std::size_t i = centre; i < static_cast<std::size_t>(panels); ++i)
        table->F[i + 1] = table->F[i] + pieces[i];
    for (std::size_t i = centre; i-- > 0;)
        table->F[i] = table->F[i + 1] - pieces[i];

    // Flag panels where the Hermite cubic misses the midpoint value.
    for (std::size_t i = 0; i < static_cast<std::size_t>(panels); ++i) {
        const double a = grid[i];
        const double mid = a + 0.5 * table->h;
        const double hermite =
            0.5 * (table->F[i] + table->F[i + 1]) + table->h * (table->df[i] - table->df[i + 1]) / 8.0;
        const double exact = table->F[i] + quad::adaptive_simpson(f, a, mid, panel_tol);
        if (std::fabs(hermite - exact) > 0.25 * tol) table->fallback[i] = 1;
    }
    table_ = std::move(table);
}

std::size_t Primitive::fallback_panels() const noexcept {
    return static_cast<std::size_t>(std::count(table_->fallback.begin(), table_->fallback.end(), 1));
}

double Primitive::operator()(double t) const {
    const Table& tb = *table_;
    if (t == 0.0) return 0.0;
    const double local_tol = std::max(tb.tol / tb.panels, 1e-17);
    if (t > tb.T) return tb.F.back() + quad::adaptive_simpson(tb.f, tb.T, t, tb.tol);
    if (t < -tb.T) return tb.F.front() - quad::adaptive_simpson(tb.f, t, -tb.T, tb.tol);

    const double x = (t + tb.T) / tb.h;
    auto i = static_cast<std::size_t>(std::clamp(std::floor(x), 0.0, static_cast<double>(tb.panels - 1)));
    const double left = -tb.T + static_cast<double>(i) * tb.h;
    if (tb.fallback[i]) return tb.F[i] + quad::adaptive_simpson(tb.f, left, t, local_tol);

    const double u = (t - left) / tb.h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    return h00 * tb.F[i] + h10 * tb.h * tb.df[i] + h01 * tb.F[i + 1] + h11 * tb.h * tb.df[i + 1];
}

struct ScalarFn::State {
    RealFn fn;
    double T = 0.0;
    std::string label;
    std::once_flag once;
    Primitive primitive;
};

ScalarFn::ScalarFn(RealFn fn, double half_width, std::string label)
    : state_(std::make_shared<State>()) {
    if (!(half_width > 0.0)) throw InputError("function domain half-width must be positive");
    state_->fn = std::move(fn);
    state_->T = half_width;
    state_->label = std::move(label);
    fn_ = state_->fn;
}

double ScalarFn::half_width() const noexcept { return state_->T; }
const std::string& ScalarFn::label() const noexcept { return state_->label; }

ScalarFn ScalarFn::from_expr(const expr::Expr& e, double half_width) {
    return ScalarFn([e](double t) { return e(t); }, half_width, expr::print(e));
}

ScalarFn ScalarFn::constant(double value, double half_width) {
    return ScalarFn([value](double) { return value; }, half_width, std::to_string(value));
}

const Primitive& ScalarFn::primitive() const {
    State& st = *state_;
    std::call_once(st.once, [&st] { st.primitive = Primitive(st.fn, st.T); });
    return st.primitive;
}

ParityPair parity_decompose(const ScalarFn& f) {
    const RealFn& fn = f.function();
    ScalarFn even([fn](double t) { return 0.5 * (fn(t) + fn(-t)); }, f.half_width(), f.label() + "_e");
    ScalarFn odd([fn](double t) { return 0.5 * (fn(t) - fn(-t)); }, f.half_width(), f.label() + "_o");
    return {std::move(even), std::move(odd)};
}

Primitive cumulative_primitive(const ScalarFn& f, double tol) {
    if (tol == kPrimitiveTolerance) return f.primitive();
    return Primitive(f.function(), f.half_width(), tol);
}

Primitive even_primitive_of_b(const ScalarFn& b, double tol) {
    return Primitive(parity_decompose(b).odd.function(), b.half_width(), tol);
}

double sup_norm(const RealFn& f, double half_width, int points) {
    double best = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = -half_width + 2.0 * half_width * i / (points - 1);
        best = std::max(best, std::fabs(f(t)));
    }
    return best;
}

}  // namespace refl
