#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "refl/error.hpp"
#include "refl/oracle.hpp"
#include "refl/solver.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace refl;
using support::problem;

namespace {

double grid_error(const GridSolution& g, const RealFn& u) {
    double m = 0.0;
    for (std::size_t i = 0; i < g.t.size(); ++i) m = std::max(m, std::fabs(g.x[i] - u(g.t[i])));
    return m;
}

}  // namespace

TEST_CASE("collocation reproduces the constant solution") {
    const GridSolution g = collocation_solve(problem(1.5, "cos(pi*t)", "sinh(t)", "cos(pi*t)+sinh(t)"), 64);
    CHECK(grid_error(g, [](double) { return 1.0; }) < 1e-12);
    CHECK(g.t.front() == -1.5);
    CHECK(g.t.back() == 1.5);
    CHECK(g.x.front() == g.x.back());
}

TEST_CASE("collocation converges at second order to the kernel solution") {
    const ProblemSpec p = problem(1.5, "cos(pi*t)", "sinh(t)", "exp(t)");
    const SolveOutcome out = solve(p, detect_case(p));
    const double e1 = grid_error(collocation_solve(p, 200), out.solution());
    const double e2 = grid_error(collocation_solve(p, 400), out.solution());
    CHECK(e2 < 1e-3);
    CHECK(e1 / e2 >= 3.0);
    CHECK(e1 / e2 <= 5.0);
}

TEST_CASE("collocation input checks and conditioning") {
    const ProblemSpec p = problem(1.0, "1", "0", "1");
    CHECK_THROWS_AS(collocation_solve(p, 7), InputError);
    CHECK_THROWS_AS(collocation_solve(p, 4), InputError);
    CHECK(collocation_condition(p, 64) < 1e4);
    // Near-singular at resonance: the condition number grows like N^3 instead of N.
    const ProblemSpec res = problem(std::numbers::pi, "1", "0", "1");
    const double c1 = collocation_condition(res, 100), c2 = collocation_condition(res, 200);
    CHECK(c2 / c1 > 6.0);
    CHECK(collocation_condition(problem(3.0, "1", "0", "1"), 200) / collocation_condition(problem(3.0, "1", "0", "1"), 100) < 2.5);
}

TEST_CASE("RK4 on the parity system agrees with the matrix exponential") {
    const ProblemSpec p = problem(1.0, "2+t^2", "1+t^2/2+t", "0");
    const CaseTag tag = detect_case(p);
    const Eigen::Vector2d x0(0.3, -0.7);
    const Trajectory tr = integrate_parity_system(p, x0, 400);
    for (std::size_t i = 0; i < tr.t.size(); i += 37) {
        const Eigen::Vector2d y = matexp(tag, p, tr.t[i], ExpMode::Closed) * x0;
        CHECK((tr.y[i] - y).norm() < 1e-7);
    }
}

TEST_CASE("closed-form and series exponentials agree") {
    const std::pair<double, std::array<const char*, 2>> cases[] = {
        {1.5, {"cos(pi*t)", "sinh(t)"}},   // C1
        {1.0, {"1+t^2", "3+3*t^2+t"}},     // C2
        {1.0, {"cos(t)", "cos(t)+t"}},     // C3
        {1.0, {"1", "-1+t"}},              // C4
        {1.0, {"t", "t^3"}},               // C5
    };
    for (const auto& [T, ab] : cases) {
        CAPTURE(ab[0]);
        const ProblemSpec p = problem(T, ab[0], ab[1], "0");
        const CaseTag tag = detect_case(p);
        for (int i = 0; i < 20; ++i) {
            const double t = -T + 2.0 * T * (i + 0.5) / 20;
            const Eigen::Matrix2d d = matexp(tag, p, t, ExpMode::Closed) - matexp(tag, p, t, ExpMode::Series);
            CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    const ProblemSpec mixed = problem(1.0, "0.2", "0.1*cos(pi*t)", "0");
    CHECK_THROWS_AS(matexp(detect_case(mixed), mixed, 0.5, ExpMode::Closed), InputError);
}

TEST_CASE("homogeneous solutions solve the equation") {
    const std::pair<double, std::array<const char*, 2>> cases[] = {
        {1.5, {"cos(pi*t)", "sinh(t)"}},
        {1.0, {"1+t^2", "3+3*t^2+t"}},
        {1.0, {"cos(t)", "cos(t)+t"}},
        {1.0, {"1", "-1+t"}},
        {1.0, {"t", "t^3"}},
    };
    for (const auto& [T, ab] : cases) {
        CAPTURE(ab[0]);
        const ProblemSpec p = problem(T, ab[0], ab[1], "0");
        const RealFn x = homogeneous_solution(detect_case(p), p, 1.3);
        CHECK(residual(p, x).residual_sup < 1e-8);
    }
}

TEST_CASE("parity matrices commute except in the mixed case") {
    const FunMatrix2 c1 = system_matrix(problem(1.0, "2+t^2", "1+t^2/2+t", "0"));
    CHECK(commutator(c1, 0.3, -0.8).norm() < 1e-12);
    const FunMatrix2 mixed = system_matrix(problem(1.0, "0.2", "0.1*cos(pi*t)", "0"));
    CHECK(commutator(mixed, 0.3, 0.8).norm() > 1e-3);
}

TEST_CASE("series exponential of a rotation generator") {
    Eigen::Matrix2d X;
    X << 0.0, -2.5, 2.5, 0.0;
    const Eigen::Matrix2d E = expm_series(X);
    CHECK(E(0, 0) == doctest::Approx(std::cos(2.5)).epsilon(1e-14));
    CHECK(E(1, 0) == doctest::Approx(std::sin(2.5)).epsilon(1e-14));
}
