#include "saddle/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "saddle/errors.hpp"

namespace saddle {

namespace pt = boost::property_tree;

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t[");
        const auto e = item.find_last_not_of(" \t]");
        if (b == std::string::npos) continue;
        std::size_t used = 0;
        const std::string tok = item.substr(b, e - b + 1);
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("not a number: " + tok);
        out.push_back(v);
    }
    return out;
}

std::string format_list(const std::vector<double>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

namespace {

const std::set<std::string> kKeys = {
    "kernel.family", "kernel.gamma", "kernel.m", "kernel.lambda", "kernel.Lambda", "kernel.c_norm",
    "kernel.power", "kernel.table", "grid.R", "grid.h", "grid.R_out", "solver.max_iters",
    "solver.grad_tol", "solver.seed", "solver.mu0", "solver.R_schedule", "solver.override_positivity",
    "experiment.S_list", "experiment.competitor_S", "experiment.samples", "output.out", "output.plots"};

template <class T>
void read(const pt::ptree& tree, const std::string& key, T& dst, std::vector<std::string>& bad) {
    const auto v = tree.get_optional<std::string>(key);
    if (!v) return;
    try {
        if constexpr (std::is_same_v<T, std::string>) {
            dst = *v;
        } else if constexpr (std::is_same_v<T, bool>) {
            if (*v == "true" || *v == "1" || *v == "yes") dst = true;
            else if (*v == "false" || *v == "0" || *v == "no") dst = false;
            else throw std::invalid_argument("bool");
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            dst = parse_list(*v);
        } else {
            std::size_t used = 0;
            if constexpr (std::is_integral_v<T>) dst = T(std::stoll(*v, &used));
            else dst = T(std::stod(*v, &used));
            if (used != v->size()) throw std::invalid_argument("trailing");
        }
    } catch (const std::exception&) {
        bad.push_back(key + ": cannot parse '" + *v + "'");
    }
}

}  // namespace

RunConfig parse_config(const std::string& path) {
    pt::ptree tree;
    try {
        pt::read_ini(path, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError({"cannot read config " + path + ": " + e.message()});
    }
    std::vector<std::string> bad;
    for (const auto& [sec, body] : tree)
        for (const auto& [key, v] : body)
            if (!kKeys.count(sec + "." + key)) bad.push_back(sec + "." + key + ": unknown key");
    RunConfig c;
    read(tree, "kernel.family", c.family, bad);
    read(tree, "kernel.gamma", c.gamma, bad);
    read(tree, "kernel.m", c.m, bad);
    read(tree, "kernel.lambda", c.lambda, bad);
    read(tree, "kernel.Lambda", c.Lambda, bad);
    read(tree, "kernel.c_norm", c.c_norm, bad);
    read(tree, "kernel.power", c.power, bad);
    read(tree, "kernel.table", c.table, bad);
    read(tree, "grid.R", c.R, bad);
    read(tree, "grid.h", c.h, bad);
    read(tree, "grid.R_out", c.R_out, bad);
    read(tree, "solver.max_iters", c.max_iters, bad);
    read(tree, "solver.grad_tol", c.grad_tol, bad);
    read(tree, "solver.seed", c.seed, bad);
    read(tree, "solver.mu0", c.mu0, bad);
    read(tree, "solver.R_schedule", c.R_schedule, bad);
    read(tree, "solver.override_positivity", c.override_positivity, bad);
    read(tree, "experiment.S_list", c.S_list, bad);
    read(tree, "experiment.competitor_S", c.competitor_S, bad);
    read(tree, "experiment.samples", c.samples, bad);
    read(tree, "output.out", c.out, bad);
    read(tree, "output.plots", c.plots, bad);
    for (const std::string& v : validate_config(c)) bad.push_back(v);
    if (!bad.empty()) throw ConfigError(bad);
    return c;
}

std::vector<std::string> validate_config(const RunConfig& c) {
    std::vector<std::string> v;
    auto num = [](double x) {
        std::ostringstream os;
        os << x;
        return os.str();
    };
    try {
        kernel_family_from_string(c.family);
    } catch (const std::exception&) {
        v.push_back("kernel.family: unknown family '" + c.family + "'");
    }
    if (!(c.gamma > 0 && c.gamma < 1)) v.push_back("kernel.gamma: must lie in (0,1), got " + num(c.gamma));
    if (c.m < 1) v.push_back("kernel.m: must be >= 1");
    if (!(c.lambda > 0)) v.push_back("kernel.lambda: must be positive");
    if (!(c.Lambda >= c.lambda)) v.push_back("kernel.Lambda: must be >= lambda");
    if (!(c.power > 0)) v.push_back("kernel.power: must be positive");
    if (c.c_norm != "standard") {
        try {
            if (!(std::stod(c.c_norm) > 0)) v.push_back("kernel.c_norm: must be positive or 'standard'");
        } catch (const std::exception&) {
            v.push_back("kernel.c_norm: must be a number or 'standard'");
        }
    }
    if (c.family == "tabulated" && c.table.empty()) v.push_back("kernel.table: required for the tabulated family");
    if (!(c.h > 0)) v.push_back("grid.h: must be positive");
    if (!(c.h < c.R)) v.push_back("grid.h: must be below R (h=" + num(c.h) + ", R=" + num(c.R) + ")");
    if (c.R_out != 0 && !(c.R_out >= c.R + c.h)) v.push_back("grid.R_out: must be 0 or >= R + h");
    if (c.max_iters < 1) v.push_back("solver.max_iters: must be >= 1");
    if (!(c.grad_tol > 0)) v.push_back("solver.grad_tol: must be positive");
    if (!(c.mu0 > 0)) v.push_back("solver.mu0: must be positive");
    for (std::size_t i = 0; i < c.R_schedule.size(); ++i) {
        if (!(c.R_schedule[i] > c.h)) v.push_back("solver.R_schedule: every R must exceed h");
        if (i > 0 && !(c.R_schedule[i] > c.R_schedule[i - 1])) v.push_back("solver.R_schedule: must increase");
    }
    for (std::size_t i = 0; i < c.S_list.size(); ++i) {
        const double S = c.S_list[i];
        if (!(c.R > S + 4))
            v.push_back("experiment.S_list: S=" + num(S) + " violates R > S + 4 (R=" + num(c.R) + ")");
        if (!(S > 1)) v.push_back("experiment.S_list: S=" + num(S) + " must exceed 1");
        if (i > 0 && !(S > c.S_list[i - 1])) v.push_back("experiment.S_list: must increase");
    }
    if (c.competitor_S != 0 && !(c.competitor_S >= 2 && c.competitor_S + 4 < c.R))
        v.push_back("experiment.competitor_S: needs S >= 2 and R > S + 4");
    if (c.samples < 1) v.push_back("experiment.samples: must be >= 1");
    return v;
}

void require_valid(const RunConfig& c) {
    auto v = validate_config(c);
    if (!v.empty()) throw ConfigError(v);
}

double resolve_c_norm(const RunConfig& c) {
    return c.c_norm == "standard" ? standard_c_norm(c.m, c.gamma) : std::stod(c.c_norm);
}

RadialKernel make_kernel(const RunConfig& c) {
    const double cn = resolve_c_norm(c);
    switch (kernel_family_from_string(c.family)) {
        case KernelFamily::fractional: return make_fractional(c.m, c.gamma, cn);
        case KernelFamily::piecewise: return make_piecewise(c.m, c.gamma);
        case KernelFamily::gaussian: return make_gaussian(c.m, c.power);
        case KernelFamily::tabulated: return load_tabulated(c.table, c.m, c.gamma, c.lambda, c.Lambda, cn);
    }
    throw DomainError("unknown kernel family");
}

SolverConfig make_solver_config(const RunConfig& c) {
    SolverConfig s;
    s.R = c.R;
    s.h = c.h;
    s.R_out = c.R_out;
    s.gamma = c.gamma;
    s.m = c.m;
    s.max_iters = c.max_iters;
    s.grad_tol = c.grad_tol;
    s.seed = c.seed;
    s.mu0 = c.mu0;
    s.R_schedule = c.R_schedule;
    return s;
}

double default_competitor_S(const RunConfig& c) {
    if (c.competitor_S != 0) return c.competitor_S;
    return std::min(std::floor(c.R / 2), std::ceil(c.R - 4) - 1);
}

}  // namespace saddle
