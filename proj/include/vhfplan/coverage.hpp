#pragma once

#include <optional>

namespace vhfplan {

inline constexpr double kMetersPerMile = 1609.344;
inline constexpr double kFeetPerMeter = 3.28084;
inline constexpr double kEarthRadiusM = 6378.0e3;

struct AntennaSpec {
    double height_m = 0.0;
    std::optional<double> cap_miles; // administrative coverage cap
};

// Line-of-sight horizon radius sqrt(2 * R_earth * H), in miles.
double los_radius_miles(double height_m);

// Rule-of-thumb radius sqrt(1.5 * H) with H in feet, result in miles.
double empirical_radius_miles(double height_ft);

// min(line-of-sight, rule-of-thumb, cap). The cap is what planners set;
// the two physics formulas keep it honest as an upper bound.
double effective_radius_miles(const AntennaSpec& spec);

} // namespace vhfplan
