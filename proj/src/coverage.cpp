#include "vhfplan/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vhfplan {

double los_radius_miles(double height_m) {
    if (height_m <= 0.0)
        throw std::invalid_argument("los_radius: antenna height must be positive");
    return std::sqrt(2.0 * kEarthRadiusM * height_m) / kMetersPerMile;
}

double empirical_radius_miles(double height_ft) {
    if (height_ft <= 0.0)
        throw std::invalid_argument("empirical_radius: antenna height must be positive");
    return std::sqrt(1.5 * height_ft);
}

double effective_radius_miles(const AntennaSpec& spec) {
    if (spec.cap_miles && *spec.cap_miles <= 0.0)
        throw std::invalid_argument("effective_radius: coverage cap must be positive");
    double r = std::min(los_radius_miles(spec.height_m),
                        empirical_radius_miles(spec.height_m * kFeetPerMeter));
    if (spec.cap_miles)
        r = std::min(r, *spec.cap_miles);
    return r;
}

} // namespace vhfplan
