#pragma once

#include "refl/funcspace.hpp"

namespace refl {

/// x'(t) + a(t) x(-t) + b(t) x(t) = h(t) on [-T, T] with x(-T) = x(T).
struct ProblemSpec {
    double T = 1.0;
    ScalarFn a;
    ScalarFn b;
    ScalarFn h;

    /// Same coefficients, different forcing.
    ProblemSpec with_forcing(ScalarFn forcing) const { return {T, a, b, std::move(forcing)}; }
};

/// Builds a problem from expression strings; throws ParseError on bad input.
ProblemSpec make_problem(double T, std::string_view a, std::string_view b, std::string_view h);

}  // namespace refl
