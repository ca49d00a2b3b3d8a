#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vhfplan/coverage.hpp"
#include "vhfplan/errors.hpp"
#include "vhfplan/plan_io.hpp"
#include "vhfplan/render.hpp"
#include "vhfplan/routing.hpp"
#include "vhfplan/sensitivity.hpp"
#include "vhfplan/terrain.hpp"

using namespace vhfplan;

namespace {

constexpr int kExitInfeasible = 2;
constexpr int kExitUnknownId = 3;
constexpr int kExitNoRoute = 4;

struct ConfigFlags {
    std::string config_path;
    std::optional<int> users;
    std::optional<double> radius;
    std::optional<double> height;
    std::optional<double> cap;
    std::optional<double> f_lo;
    std::optional<double> f_hi;
    std::optional<double> delta_f;
    std::optional<int> tones;
    std::optional<std::string> mode;
    std::optional<int> auto_threshold;
    std::optional<double> reuse_min;
    std::optional<std::uint64_t> seed;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
    cmd->add_option("--config", f.config_path, "config file (key = value lines or JSON)");
    cmd->add_option("--users", f.users, "number of users to serve");
    cmd->add_option("--radius", f.radius, "service area radius R, miles");
    cmd->add_option("--height", f.height, "antenna height H, meters");
    cmd->add_option("--cap", f.cap, "administrative coverage cap, miles");
    cmd->add_option("--f-lo", f.f_lo, "carrier band lower edge, MHz");
    cmd->add_option("--f-hi", f.f_hi, "carrier band upper edge, MHz");
    cmd->add_option("--delta-f", f.delta_f, "channel spacing, MHz");
    cmd->add_option("--tones", f.tones, "PL tone catalog size");
    cmd->add_option("--mode", f.mode, "auto, cell or group");
    cmd->add_option("--auto-threshold", f.auto_threshold,
                    "user count above which auto mode picks group");
    cmd->add_option("--reuse-min", f.reuse_min, "minimum same-tone distance, miles");
    cmd->add_option("--seed", f.seed, "seed for simulated call generation");
}

PlanConfig resolve_config(const ConfigFlags& f) {
    PlanConfig cfg;
    if (!f.config_path.empty())
        cfg = config_from_text(read_file(f.config_path));
    if (f.users)
        cfg.users = *f.users;
    if (f.radius)
        cfg.area_radius_miles = *f.radius;
    if (f.height)
        cfg.antenna_height_m = *f.height;
    if (f.cap)
        cfg.coverage_cap_miles = *f.cap;
    if (f.f_lo)
        cfg.f_lo = *f.f_lo;
    if (f.f_hi)
        cfg.f_hi = *f.f_hi;
    if (f.delta_f)
        cfg.delta_f = *f.delta_f;
    if (f.tones)
        cfg.pl_catalog_size = *f.tones;
    if (f.mode) {
        if (*f.mode == "auto")
            cfg.mode = PlanConfig::Mode::Auto;
        else if (*f.mode == "cell")
            cfg.mode = PlanConfig::Mode::Cell;
        else if (*f.mode == "group")
            cfg.mode = PlanConfig::Mode::Group;
        else
            throw CLI::ValidationError("--mode", "must be auto, cell or group");
    }
    if (f.auto_threshold)
        cfg.auto_threshold_users = *f.auto_threshold;
    if (f.reuse_min)
        cfg.reuse_min_miles = *f.reuse_min;
    if (f.seed)
        cfg.seed = *f.seed;
    return cfg;
}

void print_summary(const Plan& plan) {
    std::cout << "mode: " << (plan.mode == PlanMode::Cell ? "cell" : "group") << "\n";
    std::cout << "cells (repeaters): " << plan.tess.cells.size() << "\n";
    if (plan.mode == PlanMode::Cell) {
        std::cout << "clusters: " << plan.clusters.size() << " (" << plan.partition.triples
                  << " triple-cell + " << plan.partition.singles << " single-cell)\n";
    } else {
        std::cout << "clusters: " << plan.clusters.size() << " (required for "
                  << plan.config.users << " users: "
                  << clusters_required(plan.config.users, plan.channels.count()) << ")\n";
        std::cout << "big composites: " << plan.layout.big_composites
                  << ", standalone Big54: " << plan.layout.standalone_big
                  << ", margin groups: " << plan.layout.small_groups;
        if (plan.layout.padded_clusters > 0)
            std::cout << " (+1 padded, " << plan.layout.padded_clusters << " clusters)";
        std::cout << "\n";
        std::cout << "group codes: " << plan.groups.size() << "\n";
    }
    std::cout << "channels: " << plan.channels.count() << "\n";
    int max_tone = 0;
    for (const auto& c : plan.clusters)
        max_tone = std::max(max_tone, c.pl_tone);
    std::cout << "PL tones used: " << max_tone << "\n";
    std::cout << "users assigned: " << plan.users.size() << "\n";
    char line[96];
    std::snprintf(line, sizeof(line), "seamless coverage radius: %.2f mi",
                  covered_inradius(plan.tess));
    std::cout << line << "\n";
    for (const auto& note : plan.notes)
        std::cerr << "note: " << note << "\n";
}

int cmd_plan(const ConfigFlags& flags, const std::string& out_path) {
    const PlanConfig cfg = resolve_config(flags);
    const Plan plan = build_plan(cfg);
    if (!out_path.empty()) {
        write_file(out_path, plan_to_json(plan));
        std::cerr << "plan written to " << out_path << "\n";
    }
    print_summary(plan);
    return 0;
}

int cmd_route(const std::string& plan_path, int src, int dst) {
    const Plan plan = plan_from_json(read_file(plan_path));
    const int n_users = static_cast<int>(plan.users.size());
    if (src < 0 || src >= n_users || dst < 0 || dst >= n_users) {
        std::cerr << "error: user ids must be in [0, " << n_users - 1 << "]\n";
        return kExitUnknownId;
    }
    const UserId& su = plan.users[src];
    const UserId& du = plan.users[dst];
    if (src == dst) {
        std::cout << "src and dst are the same user; zero-hop trace\n";
        return 0;
    }
    const RoutingTable table = build_routes(plan);
    Route route;
    try {
        route = table.route(plan.home_repeater(su), plan.home_repeater(du));
    } catch (const NoRouteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoRoute;
    }

    std::cout << "user " << src << " (repeater " << plan.home_repeater(su) << ") -> user "
              << dst << " (repeater " << plan.home_repeater(du) << "): "
              << route.repeaters.size() << " repeaters, " << route.total_transmissions()
              << " transmissions\n";
    Message msg;
    msg.src = su;
    msg.dst = du;
    msg.route = route;
    msg.carried_mhz = first_hop_frequency(du.channel_mhz, route.total_transmissions());
    msg.stamped_pl = plan.tone_of_cell(route.repeaters.front());
    char line[160];
    std::snprintf(line, sizeof(line), "uplink            -> repeater %-5d freq %.6f  pl %d",
                  route.repeaters.front(), msg.carried_mhz, msg.stamped_pl);
    std::cout << line << "\n";
    while (true) {
        const int holder = msg.route.repeaters[msg.hop_index];
        const RelayResult step = relay_step(plan, holder, msg);
        if (!step.forwarded) {
            std::cerr << "error: relay rejected the stamp (plan bug)\n";
            return 1;
        }
        if (step.delivered) {
            std::snprintf(line, sizeof(line),
                          "repeater %-8d -> user           freq %.6f  pl %d", holder,
                          step.tx_frequency, step.tx_pl);
            std::cout << line << "\n";
            break;
        }
        std::snprintf(line, sizeof(line),
                      "repeater %-8d -> repeater %-5d freq %.6f  pl %d", holder,
                      step.message.route.repeaters[step.message.hop_index],
                      step.tx_frequency, step.tx_pl);
        std::cout << line << "\n";
        msg = step.message;
    }
    return 0;
}

int cmd_simulate(const std::string& plan_path, int calls, std::optional<std::uint64_t> seed,
                 const std::string& out_path) {
    const Plan plan = plan_from_json(read_file(plan_path));
    if (plan.users.empty()) {
        std::cerr << "error: plan has no users to call\n";
        return 1;
    }
    const RoutingTable table = build_routes(plan);
    std::mt19937_64 rng(seed.value_or(plan.config.seed));
    std::uniform_int_distribution<int> pick(0, static_cast<int>(plan.users.size()) - 1);
    std::uniform_int_distribution<int> tick(1, std::max(2, calls / 4));
    std::vector<CallRequest> requests;
    requests.reserve(calls);
    for (int i = 0; i < calls; ++i)
        requests.push_back({pick(rng), pick(rng), tick(rng)});

    const SimResult result = simulate(plan, table, requests);
    const std::string jsonl = log_to_jsonl(result);
    if (out_path.empty())
        std::cout << jsonl;
    else
        write_file(out_path, jsonl);

    int delivered = 0, last_tick = 0;
    for (const auto& o : result.outcomes) {
        delivered += o.delivered ? 1 : 0;
        last_tick = std::max(last_tick, o.delivery_tick);
    }
    std::cerr << "delivered " << delivered << "/" << result.outcomes.size()
              << " calls by tick " << last_tick << "\n";
    return 0;
}

int cmd_terrain(const std::string& plan_path, double x, double y, double radius,
                double height_m, const std::string& mode_name, double inner_factor,
                const std::string& out_path) {
    const Plan plan = plan_from_json(read_file(plan_path));
    const Obstacle obstacle{{x, y}, radius, height_m};
    AugmentMode mode;
    if (mode_name == "emergency")
        mode = AugmentMode::Emergency;
    else if (mode_name == "mobile")
        mode = AugmentMode::Mobile;
    else {
        std::cerr << "error: --mode must be emergency or mobile\n";
        return 1;
    }
    const ObstacleClass cls = classify(plan, obstacle);
    const AugmentationPlan aug = augment(plan, obstacle, mode, inner_factor);
    std::cout << "classification: " << to_string(cls) << "\n";
    std::cout << "case: " << to_string(aug.case_label) << "\n";
    std::cout << "blocked links: " << blocked_links(plan, obstacle).size() << "\n";
    std::cout << "affected cells: " << aug.affected_cells.size() << "\n";
    std::cout << "added repeaters: " << aug.added_repeaters.size() << "\n";
    if (!aug.warning.empty())
        std::cerr << "warning: " << aug.warning << "\n";
    if (!out_path.empty()) {
        write_file(out_path, plan_to_json(plan, {{obstacle, aug}}));
        std::cerr << "augmented plan written to " << out_path << "\n";
    }
    return 0;
}

int cmd_sweep(const ConfigFlags& flags, const std::string& param_name,
              const std::string& values_csv, const std::string& out_path) {
    SweepParam param;
    if (param_name == "H")
        param = SweepParam::AntennaHeight;
    else if (param_name == "delta_f")
        param = SweepParam::DeltaF;
    else if (param_name == "R")
        param = SweepParam::ServiceRadius;
    else if (param_name == "users")
        param = SweepParam::Users;
    else {
        std::cerr << "error: --param must be H, delta_f, R or users\n";
        return 1;
    }
    std::vector<double> values;
    std::istringstream in(values_csv);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty())
            values.push_back(std::stod(tok));
    const SweepResult result = sweep(resolve_config(flags), param, values);
    const std::string csv = sweep_to_csv(result);
    if (out_path.empty())
        std::cout << csv;
    else
        write_file(out_path, csv);
    return 0;
}

int cmd_render(const std::string& plan_path, const std::string& out_path) {
    std::vector<ObstacleRecord> augs;
    const Plan plan = plan_from_json(read_file(plan_path), &augs);
    write_file(out_path, render_svg(plan, augs));
    std::cerr << "svg written to " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"VHF repeater network planner: hexagonal cells, PL tone reuse,\n"
                 "store-and-forward relay simulation, terrain augmentation"};
    app.require_subcommand(1);

    ConfigFlags plan_flags;
    std::string plan_out;
    auto* plan_cmd = app.add_subcommand("plan", "design a network and write the plan file");
    add_config_flags(plan_cmd, plan_flags);
    plan_cmd->add_option("--out", plan_out, "plan JSON output path");

    std::string route_plan;
    int route_src = 0, route_dst = 0;
    auto* route_cmd = app.add_subcommand("route", "print the relay trace between two users");
    route_cmd->add_option("--plan", route_plan, "plan JSON file")->required();
    route_cmd->add_option("--src", route_src, "source user index")->required();
    route_cmd->add_option("--dst", route_dst, "destination user index")->required();

    std::string sim_plan, sim_out;
    int sim_calls = 100;
    std::optional<std::uint64_t> sim_seed;
    auto* sim_cmd = app.add_subcommand("simulate", "run random calls through the relay protocol");
    sim_cmd->add_option("--plan", sim_plan, "plan JSON file")->required();
    sim_cmd->add_option("--calls", sim_calls, "number of calls to generate");
    sim_cmd->add_option("--seed", sim_seed, "request generator seed (default: plan seed)");
    sim_cmd->add_option("--out", sim_out, "delivery log path (JSON lines)");

    std::string ter_plan, ter_mode = "emergency", ter_out;
    double ter_x = 0, ter_y = 0, ter_radius = 1, ter_height = 100, ter_factor = 2.0;
    auto* ter_cmd = app.add_subcommand("terrain", "classify an obstacle and plan augmentation");
    ter_cmd->add_option("--plan", ter_plan, "plan JSON file")->required();
    ter_cmd->add_option("--x", ter_x, "obstacle center x, miles")->required();
    ter_cmd->add_option("--y", ter_y, "obstacle center y, miles")->required();
    ter_cmd->add_option("--obstacle-radius", ter_radius, "obstacle radius, miles")->required();
    ter_cmd->add_option("--height-m", ter_height, "obstacle height, meters")->required();
    ter_cmd->add_option("--mode", ter_mode, "emergency or mobile");
    ter_cmd->add_option("--inner-factor", ter_factor, "inner tessellation radius factor");
    ter_cmd->add_option("--out", ter_out, "augmented plan output path");

    ConfigFlags sweep_flags;
    std::string sweep_param, sweep_values, sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep, CSV output");
    add_config_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--param", sweep_param, "H, delta_f, R or users")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep_out, "CSV output path");

    std::string render_plan, render_out;
    auto* render_cmd = app.add_subcommand("render", "render the plan as an SVG map");
    render_cmd->add_option("--plan", render_plan, "plan JSON file")->required();
    render_cmd->add_option("--out", render_out, "SVG output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(plan_cmd))
            return cmd_plan(plan_flags, plan_out);
        if (app.got_subcommand(route_cmd))
            return cmd_route(route_plan, route_src, route_dst);
        if (app.got_subcommand(sim_cmd))
            return cmd_simulate(sim_plan, sim_calls, sim_seed, sim_out);
        if (app.got_subcommand(ter_cmd))
            return cmd_terrain(ter_plan, ter_x, ter_y, ter_radius, ter_height, ter_mode,
                               ter_factor, ter_out);
        if (app.got_subcommand(sweep_cmd))
            return cmd_sweep(sweep_flags, sweep_param, sweep_values, sweep_out);
        if (app.got_subcommand(render_cmd))
            return cmd_render(render_plan, render_out);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible (" << e.constraint() << "): " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
