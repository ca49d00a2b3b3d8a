#include "vhfplan/sensitivity.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vhfplan/coverage.hpp"
#include "vhfplan/errors.hpp"

namespace vhfplan {

const char* to_string(SweepParam p) {
    switch (p) {
    case SweepParam::AntennaHeight:
        return "H";
    case SweepParam::DeltaF:
        return "delta_f";
    case SweepParam::ServiceRadius:
        return "R";
    case SweepParam::Users:
        return "users";
    }
    return "?";
}

namespace {

PlanConfig apply(const PlanConfig& base, SweepParam param, double value) {
    PlanConfig c = base;
    switch (param) {
    case SweepParam::AntennaHeight:
        c.antenna_height_m = value;
        break;
    case SweepParam::DeltaF:
        c.delta_f = value;
        break;
    case SweepParam::ServiceRadius:
        c.area_radius_miles = value;
        break;
    case SweepParam::Users:
        c.users = static_cast<int>(std::llround(value));
        break;
    }
    return c;
}

// Stage-by-stage metrics so an infeasible plan still reports whatever
// was computable before the binding constraint fired.
SweepPoint evaluate(const PlanConfig& config, double value) {
    SweepPoint p;
    p.value = value;
    try {
        const ChannelTable table =
            build_channel_table(config.f_lo, config.f_hi, config.delta_f);
        p.channels = table.count();
        if (table.count() > 0)
            p.clusters = clusters_required(config.users, table.count());
        const double r = effective_radius_miles(
            {config.antenna_height_m, config.coverage_cap_miles});
        const Tessellation tess = tessellate(config.area_radius_miles, r);
        p.cells = static_cast<int>(tess.cells.size());
        p.repeaters = p.cells;
    } catch (const std::exception&) {
        // fall through; build_plan below reports the error
    }
    try {
        const Plan plan = build_plan(config);
        p.feasible = true;
        p.cells = static_cast<int>(plan.tess.cells.size());
        p.repeaters = p.cells;
        p.channels = plan.channels.count();
        p.group_codes =
            plan.mode == PlanMode::Group ? static_cast<int>(plan.groups.size()) : 0;
    } catch (const InfeasibleError& e) {
        p.error = std::string(e.constraint()) + ": " + e.what();
    } catch (const std::exception& e) {
        p.error = e.what();
    }
    return p;
}

} // namespace

SweepResult sweep(const PlanConfig& base, SweepParam param,
                  const std::vector<double>& values) {
    if (values.empty())
        throw std::invalid_argument("sweep: no values given");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("sweep: values must be strictly increasing");
    SweepResult result;
    result.param = param;
    result.points.reserve(values.size());
    for (double v : values)
        result.points.push_back(evaluate(apply(base, param, v), v));
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "param,value,feasible,cells,repeaters,channels,clusters,group_codes,error\n";
    for (const auto& p : result.points) {
        out << to_string(result.param) << ',' << p.value << ','
            << (p.feasible ? "true" : "false") << ',' << p.cells << ',' << p.repeaters
            << ',' << p.channels << ',' << p.clusters << ',' << p.group_codes << ",\"";
        for (char ch : p.error)
            out << (ch == '"' ? '\'' : ch);
        out << "\"\n";
    }
    return out.str();
}

} // namespace vhfplan
