#include "saddle/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "saddle/errors.hpp"

namespace saddle {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
}

// JSON has no infinities; report them as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_profile_csv(const std::string& path, const Grid& g, const Profile& u) {
    if (std::size_t(u.size()) != g.n_inner) throw PreconditionError("profile does not match the grid");
    std::ofstream f = open_out(path);
    f << "s,t,u\n";
    for (std::size_t x = 0; x < g.n_inner; ++x)
        f << fmt17(g.nodes[x].s) << ',' << fmt17(g.nodes[x].t) << ',' << fmt17(u(long(x))) << '\n';
}

Profile read_profile_csv(const std::string& path, const Grid& g) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(f, line) || line != "s,t,u") throw PreconditionError(path + ": header must be s,t,u");
    Profile u(long(g.n_inner));
    std::size_t x = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (x >= g.n_inner) throw PreconditionError(path + ": more rows than grid nodes");
        double s, t, v;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &s, &t, &v) != 3)
            throw PreconditionError(path + ": bad row " + std::to_string(x + 2));
        if (std::abs(s - g.nodes[x].s) > 1e-9 || std::abs(t - g.nodes[x].t) > 1e-9)
            throw PreconditionError(path + ": row " + std::to_string(x + 2) + " does not match the grid");
        u(long(x++)) = v;
    }
    if (x != g.n_inner) throw PreconditionError(path + ": fewer rows than grid nodes");
    return u;
}

void write_scan_csv(const std::string& path, const ScalingReport& r) {
    std::ofstream f = open_out(path);
    f << "S,E_total,E_kin,E_pot\n";
    for (std::size_t i = 0; i < r.S.size(); ++i)
        f << fmt17(r.S[i]) << ',' << fmt17(r.E_total[i]) << ',' << fmt17(r.E_kin[i]) << ','
          << fmt17(r.E_pot[i]) << '\n';
}

void write_json(const std::string& path, const json& j) {
    std::ofstream f = open_out(path);
    f << j.dump(2) << '\n';
}

json to_json(const EnergyBreakdown& e) {
    return {{"kinetic_in_in", e.kinetic_in_in},
            {"kinetic_in_out", e.kinetic_in_out},
            {"potential", e.potential},
            {"total", e.total}};
}

json to_json(const ConvexityReport& r) {
    json w = json::array();
    for (const Witness& x : r.witnesses) w.push_back({{"tau1", x.tau1}, {"tau2", x.tau2}, {"gap", x.gap}});
    json iv = json::array();
    for (auto [a, b] : r.concavity_intervals) iv.push_back({a, b});
    return {{"verdict", to_string(r.verdict)},
            {"witnesses", w},
            {"concavity_intervals", iv},
            {"min_gap", num(r.min_gap)},
            {"pairs_checked", r.pairs_checked}};
}

json to_json(const InequalityReport& r) {
    return {{"n_samples", r.n_samples},
            {"violations", r.violations},
            {"indeterminate", r.indeterminate},
            {"flagged", r.flagged},
            {"min_gap", num(r.min_gap)},
            {"min_rel_gap", num(r.min_rel_gap)},
            {"worst_p", {r.worst_p.s, r.worst_p.t}},
            {"worst_q", {r.worst_q.s, r.worst_q.t}},
            {"seed", r.seed}};
}

json to_json(const MaxPrincipleReport& r) {
    return {{"z_pattern", r.z_pattern},
            {"row_sums_positive", r.row_sums_positive},
            {"monotone_probe", r.monotone_probe},
            {"min_offdiag", num(r.min_offdiag)},
            {"max_row_sum_error", num(r.max_row_sum_error)},
            {"probes", r.probes},
            {"probes_passed", r.probes_passed},
            {"singular_solves", r.singular_solves},
            {"min_probe_value", num(r.min_probe_value)}};
}

json to_json(const ScalingReport& r) {
    json j = {{"S", r.S},
              {"E_total", r.E_total},
              {"E_kin", r.E_kin},
              {"E_pot", r.E_pot},
              {"fit_from", r.fit_from},
              {"slope", r.slope},
              {"intercept", r.intercept},
              {"fit_residual", r.fit_residual},
              {"theoretical_exponent", r.theoretical_exponent},
              {"regime", r.regime}};
    if (r.flatness >= 0) {
        j["flatness"] = r.flatness;
        j["flatness_values"] = r.flatness_values;
    } else {
        j["flatness"] = nullptr;
    }
    return j;
}

json to_json(const CompetitorReport& r) {
    return {{"S", r.S},
            {"mu", r.mu},
            {"H1", r.H1},
            {"H2", r.H2},
            {"H3", r.H3},
            {"H4", r.H4},
            {"H5", r.H5},
            {"max_h3_gap", r.max_h3_gap},
            {"lipschitz_w", r.lipschitz_w},
            {"h5_constant", r.h5_constant},
            {"h5_worst_ratio", r.h5_worst_ratio},
            {"energy_u", r.energy_u},
            {"energy_w", r.energy_w},
            {"energy_ok", r.energy_ok}};
}

void write_scan_svg(const std::string& path, const ScalingReport& r) {
    const double W = 480, H = 360, pad = 50;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (std::size_t i = 0; i < r.S.size(); ++i) {
        const double x = std::log(r.S[i]), y = std::log(r.E_total[i]);
        x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) y1 = y0 + 1;
    auto px = [&](double x) { return pad + (x - x0) / (x1 - x0) * (W - 2 * pad); };
    auto py = [&](double y) { return H - pad - (y - y0) / (y1 - y0) * (H - 2 * pad); };
    std::ofstream f = open_out(path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
      << "\" stroke=\"black\"/>\n";
    f << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
      << "\" stroke=\"black\"/>\n";
    f << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < r.S.size(); ++i)
        f << px(std::log(r.S[i])) << ',' << py(std::log(r.E_total[i])) << ' ';
    f << "\"/>\n";
    f << "<line x1=\"" << px(x0) << "\" y1=\"" << py(r.intercept + r.slope * x0) << "\" x2=\"" << px(x1)
      << "\" y2=\"" << py(r.intercept + r.slope * x1) << "\" stroke=\"firebrick\" stroke-dasharray=\"4 3\"/>\n";
    f << "<text x=\"" << pad << "\" y=\"" << pad - 15 << "\" font-size=\"13\">log E vs log S, slope "
      << r.slope << " (theory " << r.theoretical_exponent << ")</text>\n";
    f << "</svg>\n";
}

void write_profile_svg(const std::string& path, const Grid& g, const Profile& u) {
    const double px = 480.0 / g.R;
    const double W = g.R * px, H = g.R * px;
    std::ofstream f = open_out(path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const double lo = std::min(0.0, u.minCoeff()), hi = std::max(1.0, u.maxCoeff());
    for (std::size_t x = 0; x < g.n_inner; ++x) {
        const double v = (u(long(x)) - lo) / (hi - lo);
        const int red = int(255 * v), blue = int(255 * (1 - v));
        f << "<rect x=\"" << (g.nodes[x].s - g.h / 2) * px << "\" y=\"" << H - (g.nodes[x].t + g.h / 2) * px
          << "\" width=\"" << g.h * px << "\" height=\"" << g.h * px << "\" fill=\"rgb(" << red << ",0," << blue
          << ")\"/>\n";
    }
    f << "</svg>\n";
}

}  // namespace saddle
