#pragma once

#include <vector>

#include "vhfplan/allocation.hpp"

namespace vhfplan::testing {

inline PlanConfig config_1000() {
    PlanConfig cfg;
    cfg.users = 1000;
    cfg.area_radius_miles = 40.0;
    cfg.antenna_height_m = 15.0;
    cfg.coverage_cap_miles = 5.0;
    return cfg;
}

inline PlanConfig config_10000() {
    PlanConfig cfg;
    cfg.users = 10000;
    cfg.area_radius_miles = 40.0;
    cfg.antenna_height_m = 15.0;
    cfg.coverage_cap_miles = 2.0;
    return cfg;
}

// Built once per binary; the canonical fixtures are reused heavily.
inline const Plan& plan_1000() {
    static const Plan plan = build_plan(config_1000());
    return plan;
}

inline const Plan& plan_10000() {
    static const Plan plan = build_plan(config_10000());
    return plan;
}

// A straight strip of cells at (0,0)..(n-1,0), one single-cell cluster
// per repeater with tones 1..n. Handy for protocol walkthroughs.
inline Plan make_line_plan(int n, double r = 5.0) {
    Plan plan;
    plan.mode = PlanMode::Cell;
    plan.config.users = 0;
    plan.config.area_radius_miles = n * 2.0 * r;
    plan.config.antenna_height_m = 15.0;
    plan.channels = build_channel_table(145.0, 147.4, 0.1);
    plan.tess.R = plan.config.area_radius_miles;
    plan.tess.r = r;
    plan.tess.n_L = n - 1;
    for (int i = 0; i < n; ++i) {
        HexCoord c{i, 0};
        plan.tess.cells.push_back({c, hex_center(c, r), r, i});
        plan.tess.index.emplace(c, i);
        plan.clusters.push_back({i, {i}, i + 1, 0});
    }
    plan.partition = {0, n};
    plan.rebuild_cell_index();
    return plan;
}

// One user per repeater of the line plan, everyone on the same channel
// table but distinct carriers per cluster load.
inline void add_line_users(Plan& plan) {
    for (const auto& c : plan.clusters)
        plan.users.push_back({0, c.pl_tone, plan.channels.channels[1], c.id});
    plan.config.users = static_cast<int>(plan.users.size());
}

} // namespace vhfplan::testing
