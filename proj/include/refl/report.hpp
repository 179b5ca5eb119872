#pragma once

#include "refl/classify.hpp"
#include "refl/signs.hpp"
#include "refl/solver.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace refl {

using Json = nlohmann::ordered_json;

/// Field names: case, k, A_T, uniqueness_ok, fit_residual.
Json case_report(const CaseTag& tag);

/// Adds outcome, residual_sup, bc_gap, condition_value, bound, iterations to `j`.
void add_outcome(Json& j, const SolveOutcome& out);

Json sign_report(const SignReport& r);
Json mixed_positivity_report(const MixedPositivityReport& r);

/// %.17g, as used in every CSV.
std::string format_double(double v);

/// `t,u` rows on `points` uniform nodes of [lo, hi]; a third column `v` when `direction` is set.
void write_solution_csv(std::ostream& out, const RealFn& u, const RealFn* direction, double lo, double hi,
                        int points);

}  // namespace refl
