#pragma once

#include <string>
#include <vector>

#include "vhfplan/plan_io.hpp"

namespace vhfplan {

// Deterministic SVG map: one polygon per cell colored by PL tone, one
// dot per repeater, the service circle, plus obstacle disks and added
// repeaters when augmentations are present.
std::string render_svg(const Plan& plan,
                       const std::vector<ObstacleRecord>& augmentations = {});

} // namespace vhfplan
