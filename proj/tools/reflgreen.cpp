// Command-line front end: classify, solve, kernel, sign, verify, transform.

#include "refl/classify.hpp"
#include "refl/error.hpp"
#include "refl/involution.hpp"
#include "refl/kernels.hpp"
#include "refl/oracle.hpp"
#include "refl/problem_file.hpp"
#include "refl/report.hpp"
#include "refl/signs.hpp"
#include "refl/solver.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace refl;

namespace {

struct Options {
    std::string file;
    int grid = 201;
    double tol = 1e-6;
    std::string out = "-";
    std::string format = "csv";
    std::string prefix;
    double omega = 0.0;
    double window = -1.0;
};

constexpr int kOracleN = 400;

// Write to a sibling temporary and rename, so readers never see a partial file.
void emit(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        std::cout.flush();
        return;
    }
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw InputError("cannot write " + tmp.string());
        f << data;
        if (!f) throw NumericalError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json base_report(const LoadedProblem& lp, const CaseTag& tag) {
    Json j = case_report(tag);
    if (lp.transformed) j["transformed"] = true;
    return j;
}

int cmd_classify(const Options& o) {
    const auto lp = load_problem(load_problem_file(o.file));
    emit(o.out, dump(base_report(lp, detect_case(lp.reflected))));
    return 0;
}

int cmd_solve(const Options& o) {
    const auto lp = load_problem(load_problem_file(o.file));
    const CaseTag tag = detect_case(lp.reflected);
    Json j = base_report(lp, tag);
    const SolveOutcome out = solve(lp.reflected, tag, o.tol);
    add_outcome(j, out);
    if (const auto* ns = std::get_if<NoSolution>(&out.result)) {
        std::cerr << "no solution: " << ns->condition << " = " << format_double(ns->condition_value) << "\n";
        if (o.format == "report") emit(o.out, dump(j));
        return 4;
    }
    if (const auto* nc = std::get_if<NotContractive>(&out.result)) {
        std::cerr << "contraction bound " << format_double(nc->bound) << " >= 1: Picard iteration not attempted\n";
        if (o.format == "report") emit(o.out, dump(j));
        return 3;
    }
    if (o.format == "report") {
        emit(o.out, dump(j));
        return 0;
    }
    const RealFn u = transport_back(out.solution(), lp.inv);
    std::ostringstream csv;
    if (const auto* fam = std::get_if<Family>(&out.result)) {
        const RealFn v = transport_back(fam->direction, lp.inv);
        write_solution_csv(csv, u, &v, lp.inv.left(), lp.inv.T, o.grid);
    } else {
        write_solution_csv(csv, u, nullptr, lp.inv.left(), lp.inv.T, o.grid);
    }
    emit(o.out, csv.str());
    return 0;
}

int cmd_kernel(const Options& o) {
    const auto lp = load_problem(load_problem_file(o.file));
    const CaseTag tag = detect_case(lp.reflected);
    const Kernel K = composed_kernel(lp.reflected, tag);
    std::ostringstream csv;
    export_kernel_csv(K, o.grid, csv);
    emit(o.out, csv.str());
    return 0;
}

int cmd_sign(const Options& o) {
    const auto lp = load_problem(load_problem_file(o.file));
    const ProblemSpec& p = lp.reflected;
    const CaseTag tag = detect_case(p);
    Json j = base_report(lp, tag);
    if (o.omega > 0.0) {
        const double w = o.window >= 0.0 ? o.window : p.T / 4.0;
        j["mixed_positivity"] = mixed_positivity_report(check_mixed_positivity(p, o.omega, w, p.T - w));
    }
    if (tag.kind == CaseKind::C1 || tag.kind == CaseKind::C2 || tag.kind == CaseKind::C3) {
        j["sign"] = sign_report(classify_sign(p, tag, composed_kernel(p, tag)));
    } else if (o.omega <= 0.0) {
        throw InputError("sign classification covers C1, C2 and C3 (got " + std::string(case_name(tag.kind)) +
                         "); pass --omega for the mixed positivity check");
    }
    emit(o.out, dump(j));
    return 0;
}

int cmd_verify(const Options& o) {
    const auto lp = load_problem(load_problem_file(o.file));
    const ProblemSpec& p = lp.reflected;
    const CaseTag tag = detect_case(p);
    Json j = base_report(lp, tag);
    bool ok = true;
    auto check = [&](const char* name, double value, double limit) {
        j["checks"][name] = {{"value", value}, {"limit", limit}, {"pass", value <= limit}};
        ok = ok && value <= limit;
    };

    if ((tag.kind == CaseKind::C1 || tag.kind == CaseKind::C2 || tag.kind == CaseKind::C3) && !tag.uniqueness_ok) {
        j["uniqueness"] = "violated";
        emit(o.out, dump(j));
        std::cerr << "uniqueness condition fails for " << case_name(tag.kind) << "\n";
        return 4;
    }
    const SolveOutcome out = solve(p, tag, o.tol);
    add_outcome(j, out);
    if (!out.has_solution()) {
        emit(o.out, dump(j));
        return std::holds_alternative<NoSolution>(out.result) ? 4 : 3;
    }
    check("residual_sup", out.report.residual_sup, o.tol);
    check("bc_gap", out.report.bc_gap, 1e-8);
    if (std::holds_alternative<Unique>(out.result)) {
        const GridSolution g = collocation_solve(p, kOracleN);
        double diff = 0.0;
        for (std::size_t i = 0; i < g.t.size(); ++i) diff = std::max(diff, std::fabs(g.x[i] - out.solution()(g.t[i])));
        check("oracle_sup_diff", diff, 5e-4);
        j["oracle_condition"] = g.condition;
    }
    if (lp.transformed) {
        const RealFn x = transport_back(out.solution(), lp.inv);
        const ResidualReport r = involution_residual(lp.original, lp.inv, x);
        check("original_residual_sup", r.residual_sup, o.tol);
        check("original_bc_gap", r.bc_gap, 1e-8);
    }
    j["pass"] = ok;
    emit(o.out, dump(j));
    return ok ? 0 : 3;
}

int cmd_transform(const Options& o) {
    const ProblemFile file = load_problem_file(o.file);
    if (!file.involution) throw InputError("transform needs an involution and a fixed_point");
    const auto lp = load_problem(file);
    const ProblemSpec& p = lp.reflected;

    std::string prefix = o.prefix;
    if (prefix.empty()) prefix = o.out == "-" ? "transform" : fs::path(o.out).replace_extension().string();
    const std::string table = prefix + ".table.csv";
    const std::string map = prefix + ".map.csv";
    const std::string table_name = fs::path(table).filename().string();

    constexpr int intervals = 2048;
    std::ostringstream tab, fmap;
    tab << "s,a,b,h\n";
    fmap << "s,f\n";
    for (int i = 0; i <= intervals; ++i) {
        const double s = i == intervals / 2 ? 0.0 : -p.T + 2.0 * p.T * i / intervals;
        tab << format_double(s) << ',' << format_double(p.a(s)) << ',' << format_double(p.b(s)) << ','
            << format_double(p.h(s)) << '\n';
    }
    for (int i = 0; i < o.grid; ++i) {
        const double s = -p.T + 2.0 * p.T * i / (o.grid - 1);
        fmap << format_double(s) << ',' << format_double(lp.inv.f(s)) << '\n';
    }
    std::ostringstream pf;
    pf << "# reflection form of " << fs::path(o.file).filename().string() << " under t = f(s)\n";
    pf << "T = " << format_double(p.T) << '\n';
    pf << "a = table:" << table_name << ":a\n";
    pf << "b = table:" << table_name << ":b\n";
    pf << "h = table:" << table_name << ":h\n";
    emit(table, tab.str());
    emit(map, fmap.str());
    emit(o.out, pf.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green's functions for x'(t) + a(t)x(-t) + b(t)x(t) = h(t), x(-T) = x(T)"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool grid) {
        sub->add_option("file", o.file, "problem file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output path, - for stdout");
        if (grid) sub->add_option("--grid", o.grid, "number of output grid points")->check(CLI::Range(2, 100000));
        sub->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--format", o.format, "csv or report")->check(CLI::IsMember({"csv", "report"}));
    };
    auto* classify = app.add_subcommand("classify", "print the case of the problem");
    add_common(classify, false);
    auto* solve_cmd = app.add_subcommand("solve", "solve and write t,u (and v for a family)");
    add_common(solve_cmd, true);
    auto* kernel = app.add_subcommand("kernel", "write the Green's function as t,s,G rows");
    add_common(kernel, true);
    auto* sign = app.add_subcommand("sign", "sign report of the Green's function");
    add_common(sign, false);
    sign->add_option("--omega", o.omega, "run the mixed positivity check with this omega");
    sign->add_option("--w", o.window, "left end w of the window [w, T - w]");
    auto* verify = app.add_subcommand("verify", "kernel path, oracle and residual checks");
    add_common(verify, true);
    auto* transform = app.add_subcommand("transform", "rewrite an involution problem in reflection form");
    add_common(transform, true);
    transform->add_option("--prefix", o.prefix, "path prefix for the coefficient table and the map f");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*classify) return cmd_classify(o);
        if (*solve_cmd) return cmd_solve(o);
        if (*kernel) return cmd_kernel(o);
        if (*sign) return cmd_sign(o);
        if (*verify) return cmd_verify(o);
        if (*transform) return cmd_transform(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
