#include "refl/problem_file.hpp"

#include "refl/error.hpp"
#include "refl/expr.hpp"
#include "refl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace refl {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Numbers may be written as constant expressions ("3/2", "pi").
double parse_number(const std::string& key, const std::string& text) {
    const expr::Expr e = expr::parse(text);
    const double v0 = expr::eval(e, 0.0), v1 = expr::eval(e, 1.0);
    if (v0 != v1) throw InputError("value of '" + key + "' must not depend on t");
    if (!std::isfinite(v0)) throw InputError("value of '" + key + "' is not finite");
    return v0;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

ScalarFn load_table(std::string_view spec, double half_width, const std::filesystem::path& base_dir) {
    const auto colon = spec.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
        throw InputError("table coefficient must read table:<file>:<column>");
    const std::filesystem::path file = base_dir / std::string(spec.substr(0, colon));
    const std::string column(spec.substr(colon + 1));
    std::ifstream in(file);
    if (!in) throw InputError("cannot open table " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw InputError("empty table " + file.string());
    const auto header = split_csv(line);
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end() || it == header.begin())
        throw InputError("table " + file.string() + " has no value column '" + column + "'");
    const auto idx = static_cast<std::size_t>(it - header.begin());
    std::vector<double> grid, values;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) throw InputError("ragged row in table " + file.string());
        try {
            grid.push_back(std::stod(cells[0]));
            values.push_back(std::stod(cells[idx]));
        } catch (const std::exception&) {
            throw InputError("bad number in table " + file.string());
        }
    }
    if (grid.size() < 8) throw InputError("table " + file.string() + " needs at least 8 rows");
    const double step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::fabs(grid[i] - (grid.front() + step * static_cast<double>(i))) > 1e-9 * step)
            throw InputError("table " + file.string() + " is not on a uniform grid");
    if (grid.front() > -half_width + 1e-9 * step || grid.back() < half_width - 1e-9 * step)
        throw InputError("table " + file.string() + " does not cover [-T, T]");
    GridInterpolant interp(grid.front(), step, std::move(values), true);
    return ScalarFn([interp](double t) { return interp(t); }, half_width, std::string("table:") + std::string(spec));
}

}  // namespace

ProblemFile parse_problem_file(std::string_view text, std::filesystem::path base_dir) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        static const std::array<std::string_view, 8> known{"T", "a", "b", "h", "d", "involution", "fixed_point", "S"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InputError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (value.empty()) throw InputError("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
        if (!kv.emplace(key, value).second)
            throw InputError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    for (const char* req : {"T", "a", "b", "h"})
        if (!kv.count(req)) throw InputError(std::string("missing required key '") + req + "'");

    ProblemFile f;
    f.base_dir = std::move(base_dir);
    f.T = parse_number("T", kv["T"]);
    f.a = kv["a"];
    f.b = kv["b"];
    f.h = kv["h"];
    if (kv.count("d")) f.d = kv["d"];
    if (kv.count("involution")) f.involution = kv["involution"];
    if (kv.count("fixed_point")) f.fixed_point = parse_number("fixed_point", kv["fixed_point"]);
    if (kv.count("S")) f.S = parse_number("S", kv["S"]);
    if (f.involution && !f.fixed_point) throw InputError("involution given without fixed_point");
    if (!f.involution && f.fixed_point) throw InputError("fixed_point given without involution");
    if (!f.involution && !(f.T > 0.0)) throw InputError("T must be positive");
    return f;
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open problem file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_file(ss.str(), path.parent_path());
}

ScalarFn make_coefficient(std::string_view source, double half_width, const std::filesystem::path& base_dir) {
    constexpr std::string_view prefix = "table:";
    if (source.substr(0, prefix.size()) == prefix)
        return load_table(source.substr(prefix.size()), half_width, base_dir);
    return ScalarFn::from_expr(expr::parse(source), half_width);
}

ProblemSpec make_problem(double T, std::string_view a, std::string_view b, std::string_view h) {
    if (!(T > 0.0)) throw InputError("T must be positive");
    return ProblemSpec{T, make_coefficient(a, T), make_coefficient(b, T), make_coefficient(h, T)};
}

LoadedProblem load_problem(const ProblemFile& file) {
    LoadedProblem lp;
    lp.file = file;
    if (!file.needs_transform()) {
        lp.reflected = ProblemSpec{file.T, make_coefficient(file.a, file.T, file.base_dir),
                                   make_coefficient(file.b, file.T, file.base_dir),
                                   make_coefficient(file.h, file.T, file.base_dir)};
        lp.original = {lp.reflected.a.function(), lp.reflected.b.function(), lp.reflected.h.function(), {}};
        lp.inv = reflection_involution(file.T);
        return lp;
    }

    if (file.involution) {
        const expr::Expr phi = expr::parse(*file.involution);
        lp.inv = build_f([phi](double t) { return expr::eval(phi, t); }, file.T, *file.fixed_point, file.S.value_or(1.0));
    } else {
        lp.inv = reflection_involution(file.T);
    }
    const double span = std::max(std::fabs(file.T), std::fabs(lp.inv.left()));
    auto fn = [&](const std::string& src) { return make_coefficient(src, span, file.base_dir).function(); };
    lp.original = {fn(file.a), fn(file.b), fn(file.h), file.d ? fn(*file.d) : RealFn{}};
    lp.reflected = transform_problem(lp.original, lp.inv);
    lp.transformed = true;
    return lp;
}

}  // namespace refl
