// saddle: command-line front end for kernel checks, operator checks, saddle solves and scans.

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "saddle/config.hpp"
#include "saddle/errors.hpp"
#include "saddle/io.hpp"

using namespace saddle;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kError = 1, kFailed = 2;

struct Overrides {
    std::optional<std::string> family, c_norm, table, s_list, r_schedule, profile;
    std::optional<double> gamma, lambda, Lambda, power, R, h, R_out, grad_tol, mu0, competitor_S;
    std::optional<int> m, max_iters;
    std::optional<long> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool override_positivity = false;
    bool no_plots = false;
};

void apply(const Overrides& o, RunConfig& c) {
    if (o.family) c.family = *o.family;
    if (o.c_norm) c.c_norm = *o.c_norm;
    if (o.table) c.table = *o.table;
    if (o.s_list) c.S_list = parse_list(*o.s_list);
    if (o.r_schedule) c.R_schedule = parse_list(*o.r_schedule);
    if (o.gamma) c.gamma = *o.gamma;
    if (o.lambda) c.lambda = *o.lambda;
    if (o.Lambda) c.Lambda = *o.Lambda;
    if (o.power) c.power = *o.power;
    if (o.R) c.R = *o.R;
    if (o.h) c.h = *o.h;
    if (o.R_out) c.R_out = *o.R_out;
    if (o.grad_tol) c.grad_tol = *o.grad_tol;
    if (o.mu0) c.mu0 = *o.mu0;
    if (o.competitor_S) c.competitor_S = *o.competitor_S;
    if (o.m) c.m = *o.m;
    if (o.max_iters) c.max_iters = *o.max_iters;
    if (o.samples) c.samples = *o.samples;
    if (o.seed) c.seed = *o.seed;
    if (o.out) c.out = *o.out;
    if (o.override_positivity) c.override_positivity = true;
    if (o.no_plots) c.plots = false;
}

std::string at(const RunConfig& c, const std::string& name) { return (fs::path(c.out) / name).string(); }

json run_header(const RunConfig& c) {
    return {{"family", c.family}, {"gamma", c.gamma}, {"m", c.m}, {"c_norm", resolve_c_norm(c)}};
}

int kernel_check(const RunConfig& c) {
    const RadialKernel k = make_kernel(c);
    const ConvexityReport rep = check_sqrt_convexity(k, default_tau_grid());
    std::vector<double> radii;
    for (int i = 0; i <= 200; ++i) radii.push_back(std::pow(10.0, -3 + 6.0 * i / 200));
    json j = run_header(c);
    j.update(to_json(rep));
    j["ellipticity"] = ellipticity_holds(k, radii);
    write_json(at(c, "kernel_check.json"), j);
    std::cout << "verdict " << to_string(rep.verdict) << "\n";
    return rep.verdict == Convexity::fails ? kFailed : kOk;
}

int verify_inequality(const RunConfig& c) {
    const RadialKernel k = make_kernel(c);
    const InequalityReport rep = verify_kernel_inequality(k, c.seed, c.samples, RuleLadder::make(c.m));
    json j = run_header(c);
    j.update(to_json(rep));
    write_json(at(c, "verify_inequality.json"), j);
    std::cout << "violations " << rep.violations << " of " << rep.n_samples << "\n";
    return rep.violations > 0 ? kFailed : kOk;
}

int check_operator(const RunConfig& c) {
    const RadialKernel k = make_kernel(c);
    const Grid g = build_grid(c.R, c.h, c.m, c.R_out);
    const KernelTable t = build_kernel_table(g, k);
    const DiscreteOperator op = assemble(t);
    const MaxPrincipleReport rep = check_max_principle_structure(op, g, k, c.seed);
    json j = run_header(c);
    j.update(to_json(rep));
    j["R"] = c.R;
    j["h"] = c.h;
    j["nodes"] = g.n_inner;
    write_json(at(c, "check_operator.json"), j);
    const bool ok = rep.z_pattern && rep.row_sums_positive && rep.monotone_probe && rep.max_row_sum_error <= 1e-3;
    std::cout << "z_pattern " << rep.z_pattern << " row_sums_positive " << rep.row_sums_positive
              << " monotone_probe " << rep.monotone_probe << " max_row_sum_error " << rep.max_row_sum_error << "\n";
    return ok ? kOk : kFailed;
}

struct Solved {
    Grid g;
    KernelTable t;
    DiscreteOperator op;
    Profile u;
    bool ok = true;
};

json energy_json(const EnergyBreakdown& e, double S, const Grid& g) {
    json j = to_json(e);
    j["S"] = S;
    j["h"] = g.h;
    j["R"] = g.R;
    return j;
}

// Solves, or loads the profile given with --profile, and writes the solve artifacts when solving.
Solved solve_or_load(const RunConfig& c, const std::optional<std::string>& profile) {
    const RadialKernel k = make_kernel(c);
    Solved s;
    s.g = build_grid(c.R, c.h, c.m, c.R_out);
    s.t = build_kernel_table(s.g, k);
    s.op = assemble(s.t);
    const Potential G = allen_cahn();
    if (profile) {
        s.u = read_profile_csv(*profile, s.g);
        return s;
    }
    const double dmin = s.t.min_difference();
    if (!(dmin > 0) && !c.override_positivity)
        throw PreconditionError("kernel table has a nonpositive difference entry (" + std::to_string(dmin) +
                                "); pass --override-positivity to solve anyway");
    const SolverConfig sc = make_solver_config(c);
    SolveResult r;
    if (sc.R_schedule.size() > 1) {
        if (sc.R_schedule.back() != c.R) throw PreconditionError("R_schedule must end at grid.R");
        r = continuation(sc, k, G).stages.back().result;
    } else {
        r = minimize(s.g, s.t, s.op, G, initial_guess(s.g, c.mu0), sc);
    }
    s.u = r.u;
    bool monotone = true;
    for (std::size_t i = 1; i < r.trace.size(); ++i) monotone = monotone && r.trace[i] <= r.trace[i - 1];
    const Residual res = residual(s.op, s.u, G, probe_set(s.g, 2 * c.h));
    json j = run_header(c);
    j["R"] = c.R;
    j["h"] = c.h;
    j["nodes"] = s.g.n_inner;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["status"] = r.status;
    j["pg_initial"] = r.pg_initial;
    j["pg_final"] = r.pg_final;
    j["trace_monotone"] = monotone;
    j["trace_length"] = r.trace.size();
    j["energy"] = energy_json(r.energy, c.R, s.g);
    j["residual"] = res.sup;
    j["min_difference"] = dmin;
    write_json(at(c, "solve.json"), j);
    write_profile_csv(at(c, "profile.csv"), s.g, s.u);
    if (c.plots) write_profile_svg(at(c, "profile.svg"), s.g, s.u);
    s.ok = r.converged && monotone;
    std::cout << "status " << r.status << " iterations " << r.iterations << " energy " << r.energy.total << "\n";
    return s;
}

int solve(const RunConfig& c) { return solve_or_load(c, std::nullopt).ok ? kOk : kFailed; }

int energy_scan_cmd(const RunConfig& c, const std::optional<std::string>& profile) {
    RunConfig cc = c;
    if (cc.S_list.empty())
        for (double S = 2; S + 4 < c.R; S += 2) cc.S_list.push_back(S);
    require_valid(cc);
    const Solved s = solve_or_load(cc, profile);
    const ScalingReport rep = energy_scan(s.g, s.t, s.u, allen_cahn(), cc.S_list, cc.gamma);
    json j = run_header(cc);
    j.update(to_json(rep));
    write_json(at(cc, "energy_scan.json"), j);
    write_scan_csv(at(cc, "energy_scan.csv"), rep);
    if (cc.plots) write_scan_svg(at(cc, "energy_scan.svg"), rep);
    std::cout << "slope " << rep.slope << " theoretical " << rep.theoretical_exponent << "\n";
    return s.ok && rep.slope < 2.0 * cc.m ? kOk : kFailed;
}

int competitor_cmd(const RunConfig& c, const std::optional<std::string>& profile) {
    const Solved s = solve_or_load(c, profile);
    const double S = default_competitor_S(c);
    const double mu = lipschitz_estimate(s.g, s.u, S + 3);
    const Competitor comp = build_competitor(s.g, s.t, s.u, allen_cahn(), S, mu);
    json j = run_header(c);
    j.update(to_json(comp.report));
    j["R"] = c.R;
    j["h"] = c.h;
    write_json(at(c, "competitor.json"), j);
    write_profile_csv(at(c, "competitor_profile.csv"), s.g, comp.w);
    const auto& r = comp.report;
    std::cout << "H1 " << r.H1 << " H2 " << r.H2 << " H3 " << r.H3 << " H4 " << r.H4 << " H5 " << r.H5
              << " energy_ok " << r.energy_ok << "\n";
    return s.ok && r.all() ? kOk : kFailed;
}

void write_error(const RunConfig& c, const std::string& type, const std::string& msg,
                 const std::vector<std::string>& violations = {}) {
    std::cerr << "error (" << type << "): " << msg << "\n";
    try {
        fs::create_directories(c.out);
        write_json(at(c, "error.json"), {{"error", msg}, {"type", type}, {"violations", violations}});
    } catch (const std::exception&) {
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Saddle-shaped solutions of nonlocal Allen-Cahn equations: kernels, operator, solver, scans"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1, 1);
    app.fallthrough();
    std::string config_path;
    Overrides o;
    app.add_option("--config", config_path, "INI config file");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--family", o.family, "fractional | piecewise-counterexample | gaussian | tabulated");
    app.add_option("--gamma", o.gamma);
    app.add_option("--m", o.m, "half dimension, space is R^{2m}");
    app.add_option("--lambda", o.lambda);
    app.add_option("--Lambda", o.Lambda);
    app.add_option("--c-norm", o.c_norm, "number or 'standard'");
    app.add_option("--power", o.power, "gaussian exponent p in exp(-r^p)");
    app.add_option("--table", o.table, "CSV r,K for the tabulated family");
    app.add_option("--R", o.R);
    app.add_option("--h", o.h);
    app.add_option("--R-out", o.R_out);
    app.add_option("--max-iters", o.max_iters);
    app.add_option("--grad-tol", o.grad_tol);
    app.add_option("--mu0", o.mu0);
    app.add_option("--R-schedule", o.r_schedule, "comma separated, increasing, ending at R");
    app.add_option("--S-list", o.s_list, "comma separated");
    app.add_option("--competitor-S", o.competitor_S);
    app.add_option("--samples", o.samples);
    app.add_option("--profile", o.profile, "profile CSV (s,t,u) to use instead of solving");
    app.add_option("--potential", "only allen-cahn is available")->check(CLI::IsMember({"allen-cahn"}));
    app.add_flag("--override-positivity", o.override_positivity);
    app.add_flag("--no-plots", o.no_plots);

    auto* k_check = app.add_subcommand("kernel-check", "sqrt-convexity and ellipticity of the kernel");
    auto* v_ineq = app.add_subcommand("verify-inequality", "sample Kbar(x,y) > Kbar(x,y*) on O x O");
    auto* c_op = app.add_subcommand("check-operator", "maximum-principle structure of the assembled operator");
    auto* s_solve = app.add_subcommand("solve", "projected descent for the saddle profile");
    auto* e_scan = app.add_subcommand("energy-scan", "E(u, B_S) over S and the log-log slope");
    auto* c_comp = app.add_subcommand("competitor", "competitor w = min{u, Psi_S} and hypotheses H1-H5");

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = parse_config(config_path);
        apply(o, cfg);
        require_valid(cfg);
        fs::create_directories(cfg.out);
        if (k_check->parsed()) return kernel_check(cfg);
        if (v_ineq->parsed()) return verify_inequality(cfg);
        if (c_op->parsed()) return check_operator(cfg);
        if (s_solve->parsed()) return solve(cfg);
        if (e_scan->parsed()) return energy_scan_cmd(cfg, o.profile);
        if (c_comp->parsed()) return competitor_cmd(cfg, o.profile);
    } catch (const ConfigError& e) {
        if (o.out) cfg.out = *o.out;
        write_error(cfg, "config", e.what(), e.violations);
        return kError;
    } catch (const std::exception& e) {
        write_error(cfg, "runtime", e.what());
        return kError;
    }
    return kError;
}
