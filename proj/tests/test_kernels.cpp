#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "refl/error.hpp"
#include "refl/kernels.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace refl;
using support::problem;

namespace {

// d/dt K(t, s) + a(t) K(-t, s) + b(t) K(t, s), by central differences away from the diagonals.
double ode_residual(const Kernel& K, const ProblemSpec& p, double t, double s) {
    const double d = 1e-5;
    const double dK = (K(t - 2 * d, s) - 8 * K(t - d, s) + 8 * K(t + d, s) - K(t + 2 * d, s)) / (12 * d);
    return dK + p.a(t) * K(-t, s) + p.b(t) * K(t, s);
}

}  // namespace

TEST_CASE("region_of follows the diagonals") {
    CHECK(region_of(0.5, 0.1) == Region::TAbove);
    CHECK(region_of(0.1, 0.5) == Region::SAbove);
    CHECK(region_of(-0.5, 0.1) == Region::TBelow);
    CHECK(region_of(0.1, -0.5) == Region::SBelow);
    CHECK(region_of(0.3, 0.3) == Region::TAbove);
}

TEST_CASE("defining properties on every benchmark kernel") {
    for (const auto& b : support::kernel_benchmarks()) {
        CAPTURE(b.name);
        const ProblemSpec p = problem(b.T, b.a, b.b, "0");
        const CaseTag tag = detect_case(p);
        REQUIRE(tag.uniqueness_ok);
        const Kernel K = composed_kernel(p, tag);
        const double T = p.T;
        for (double u = -0.95; u <= 0.96; u += 0.15) {
            const double t = u * T;
            if (std::fabs(t) > 1e-9) CHECK(std::fabs(K.jump(t) - 1.0) < 1e-6);
            CHECK(std::fabs(K(T, t) - K(-T, t)) < 1e-8);
        }
        auto g = support::rng();
        std::uniform_real_distribution<double> U(-T, T);
        int checked = 0;
        while (checked < 60) {
            const double t = U(g), s = U(g);
            if (std::fabs(std::fabs(t) - std::fabs(s)) < 1e-3 || std::fabs(t) < 1e-3) continue;
            CHECK(std::fabs(ode_residual(K, p, t, s)) < 1e-5);
            ++checked;
        }
    }
}

TEST_CASE("worked example matches its closed-form kernel") {
    const ProblemSpec p = problem(1.5, "cos(pi*t)", "sinh(t)", "0");
    const Kernel K = composed_kernel(p, detect_case(p));
    auto g = support::rng(3);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        const double t = U(g), s = U(g);
        CHECK(std::fabs(K(t, s) - support::example_kernel(t, s)) < 1e-9);
    }
}

TEST_CASE("constant kernel reduces to the region-by-region closed form") {
    const Kernel K = const_kernel(1.0, 0.0, 1.0);
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
            const double t = -1.0 + 2.0 * (i + 0.5) / 50, s = -1.0 + 2.0 * (j + 0.25) / 50;
            CHECK(std::fabs(K(t, s) - support::region_kernel(1.0, 1.0, t, s)) < 1e-10);
        }
}

TEST_CASE("b = 0 kernel from the oscillator kernel") {
    const double a = 1.3, T = 0.9;
    const Kernel K = const_kernel(a, 0.0, T);
    const double d = 1e-5;
    for (double t = -0.85; t < 0.9; t += 0.17)
        for (double s = -0.83; s < 0.9; s += 0.19) {
            if (std::fabs(std::fabs(t) - std::fabs(s)) < 1e-2) continue;
            auto G = [&](double ss) { return support::oscillator_kernel(a, T, t, ss); };
            const double dG = (G(s + d) - G(s - d)) / (2 * d);
            CHECK(std::fabs(K(t, s) - (a * support::oscillator_kernel(a, T, t, -s) - dG)) < 1e-6);
        }
}

TEST_CASE("C3 kernel value and the k -> 1 limit") {
    const Kernel K = c3_kernel(1.0, 1.0);
    CHECK(K(0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    const Kernel near = const_kernel(1.0, 1.0 - 1e-7, 1.0);
    for (double t : {-0.7, -0.2, 0.4, 0.9})
        for (double s : {-0.8, -0.1, 0.3, 0.6}) CHECK(std::fabs(K(t, s) - near(t, s)) < 1e-5);
}

TEST_CASE("hyperbolic constant kernel satisfies the equation") {
    const ProblemSpec p = problem(1.0, "1", "2", "0");
    const Kernel K = const_kernel(1.0, 2.0, 1.0);
    CHECK(std::fabs(K.jump(0.4) - 1.0) < 1e-12);
    CHECK(std::fabs(ode_residual(K, p, 0.3, 0.7)) < 1e-6);
    CHECK(std::fabs(ode_residual(K, p, -0.6, 0.2)) < 1e-6);
}

TEST_CASE("resonant and degenerate constant kernels are rejected") {
    CHECK_THROWS_AS(const_kernel(1.0, 0.0, std::numbers::pi), ResonanceError);
    CHECK_THROWS_AS(const_kernel(1.0, 1.0 + 1e-15, 1.0), ResonanceError);
    CHECK_THROWS_AS(c3_kernel(0.0, 1.0), Error);
    const ProblemSpec bad = problem(std::numbers::pi, "1", "0", "0");
    CHECK_THROWS_AS(composed_kernel(bad, detect_case(bad)), ResonanceError);
    const ProblemSpec c4 = problem(1.0, "1", "-1", "0");
    CHECK_THROWS_AS(composed_kernel(c4, detect_case(c4)), InputError);
}

TEST_CASE("periodic ODE kernel") {
    const ScalarFn one = ScalarFn::constant(1.0, 1.0);
    const Kernel G = ode_kernel(one, 1.0);
    const double tau = 1.0 / (1.0 - std::exp(-2.0));
    CHECK(tau == doctest::Approx(1.15652).epsilon(1e-5));
    CHECK(G(0.5, 0.5 - 1e-12) == doctest::Approx(tau));
    CHECK(std::fabs(G.jump(0.3) - 1.0) < 1e-12);
    CHECK(std::fabs(G(1.0, 0.2) - G(-1.0, 0.2)) < 1e-12);
    const double F = ode_kernel_bound(one, 1.0);
    CHECK(F == doctest::Approx(std::exp(2.0) / (std::exp(2.0) - 1.0)));
    for (double t = -1.0; t <= 1.0; t += 0.1)
        for (double s = -1.0; s <= 1.0; s += 0.1) CHECK(std::fabs(G(t, s)) <= F + 1e-12);

    const ScalarFn v = ScalarFn::from_expr(expr::parse("1 + t"), 1.0);
    const double Fv = ode_kernel_bound(v, 1.0);
    const Kernel Gv = ode_kernel(v, 1.0);
    for (double t = -1.0; t <= 1.0; t += 0.05)
        for (double s = -1.0; s <= 1.0; s += 0.05) CHECK(std::fabs(Gv(t, s)) <= Fv + 1e-9);
    CHECK_THROWS_AS(ode_kernel(ScalarFn::from_expr(expr::parse("t"), 1.0), 1.0), ResonanceError);
}

TEST_CASE("kernel CSV export is stable and skips the diagonal") {
    const Kernel K = const_kernel(1.0, 0.0, 1.0);
    std::ostringstream a, b;
    export_kernel_csv(K, 11, a);
    export_kernel_csv(K, 11, b);
    CHECK(a.str() == b.str());
    std::istringstream in(a.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,s,G");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 11 * 11 - 11);
}
