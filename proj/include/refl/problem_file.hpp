#pragma once

#include "refl/involution.hpp"
#include "refl/problem.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace refl {

/// Text problem description, one `key = value` per line, `#` starts a comment.
///
///     T = 1.5                  # right end; the interval is [phi(T), T], [-T, T] by default
///     a = cos(pi*t)
///     b = sinh(t)
///     h = cos(pi*t) + sinh(t)
///     d = 1                    # optional leading coefficient
///     involution = 1/t         # optional phi, needs fixed_point
///     fixed_point = 1
///     S = 1                    # optional half-width of the reflected problem
///
/// A coefficient may also be `table:<file>:<column>`, a CSV with header whose first column is
/// a uniform grid on [-T, T] containing 0 as a node.
struct ProblemFile {
    double T = 0.0;
    std::string a, b, h;
    std::optional<std::string> d;
    std::optional<std::string> involution;
    std::optional<double> fixed_point;
    std::optional<double> S;
    std::filesystem::path base_dir;

    /// True when the problem has to go through a change of variable before solving.
    bool needs_transform() const noexcept { return involution.has_value() || d.has_value(); }
};

/// Throws InputError on unknown or duplicate keys, missing a/b/h/T, or a malformed number.
ProblemFile parse_problem_file(std::string_view text, std::filesystem::path base_dir = {});
ProblemFile load_problem_file(const std::filesystem::path& path);

/// Expression or `table:` coefficient as a function on [-half_width, half_width].
ScalarFn make_coefficient(std::string_view source, double half_width, const std::filesystem::path& base_dir = {});

/// Problem as posed in the file together with the change of variable that brings it to
/// reflection form (the identity when no involution or d is given).
struct LoadedProblem {
    ProblemFile file;
    InvolutionProblem original;
    InvolutionSpec inv;
    ProblemSpec reflected;
    bool transformed = false;
};

LoadedProblem load_problem(const ProblemFile& file);

}  // namespace refl
