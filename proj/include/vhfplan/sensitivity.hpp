#pragma once

#include <string>
#include <vector>

#include "vhfplan/allocation.hpp"

namespace vhfplan {

enum class SweepParam { AntennaHeight, DeltaF, ServiceRadius, Users };
const char* to_string(SweepParam p);

struct SweepPoint {
    double value = 0.0;
    bool feasible = false;
    // -1 when the stage never got far enough to compute the metric
    int cells = -1;
    int repeaters = -1;
    int channels = -1;
    int clusters = -1; // required by the user load
    int group_codes = -1;
    std::string error;
};

struct SweepResult {
    SweepParam param = SweepParam::ServiceRadius;
    std::vector<SweepPoint> points; // input order
};

// Rebuild the plan at each value, one variable at a time. Infeasible
// points are recorded with their error, never dropped.
SweepResult sweep(const PlanConfig& base, SweepParam param,
                  const std::vector<double>& values);

// header: param,value,feasible,cells,repeaters,channels,clusters,group_codes,error
std::string sweep_to_csv(const SweepResult& result);

} // namespace vhfplan
