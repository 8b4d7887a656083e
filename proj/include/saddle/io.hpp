#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "saddle/energy.hpp"
#include "saddle/experiments.hpp"
#include "saddle/kernels.hpp"
#include "saddle/operator.hpp"
#include "saddle/solver.hpp"

namespace saddle {

using nlohmann::json;

// Header is exactly `s,t,u`; one row per inner node, grid order.
void write_profile_csv(const std::string& path, const Grid& g, const Profile& u);
// Rows must match the grid's inner nodes to 1e-9.
Profile read_profile_csv(const std::string& path, const Grid& g);

void write_scan_csv(const std::string& path, const ScalingReport& r);
void write_json(const std::string& path, const json& j);

json to_json(const EnergyBreakdown& e);
json to_json(const ConvexityReport& r);
json to_json(const InequalityReport& r);
json to_json(const MaxPrincipleReport& r);
json to_json(const ScalingReport& r);
json to_json(const CompetitorReport& r);

// Log-log line plot of E(S) with the fitted line.
void write_scan_svg(const std::string& path, const ScalingReport& r);
// Heat map of u over the (s,t) half-quadrant.
void write_profile_svg(const std::string& path, const Grid& g, const Profile& u);

}  // namespace saddle
