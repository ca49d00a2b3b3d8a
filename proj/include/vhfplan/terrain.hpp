#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vhfplan/allocation.hpp"

namespace vhfplan {

// A mountain modelled as a flat-topped disk. It only matters when it is
// taller than the antennas.
struct Obstacle {
    Point center;
    double radius_miles = 0.0;
    double height_m = 0.0;
};

enum class ObstacleClass { Small, Large, NoEffect };
enum class AugmentMode { Emergency, Mobile };

enum class CaseLabel {
    EmergencySmall,
    EmergencyLarge,
    MobileSmall,
    MobileLarge,
    NoEffect,
};
const char* to_string(CaseLabel c);
const char* to_string(ObstacleClass c);

struct AddedRepeater {
    Point position;
    double radius_miles = 0.0;
    std::string note; // channel / PL inheritance
};

struct AugmentationPlan {
    CaseLabel case_label = CaseLabel::NoEffect;
    std::vector<AddedRepeater> added_repeaters;
    std::vector<int> affected_cells;
    std::string warning; // e.g. Small escalated to Large handling
};

// Adjacent repeater pairs whose connecting segment crosses the disk.
std::vector<std::pair<int, int>> blocked_links(const Plan& plan, const Obstacle& o);

// Large: covers at least one repeater center. Small: blocks at least one
// link but covers no center. NoEffect otherwise (including obstacles not
// taller than the antennas).
ObstacleClass classify(const Plan& plan, const Obstacle& o);

// The four prescriptions:
//   Emergency + Small -> one summit repeater (escalates to Large handling
//                        when it cannot reach two neighbours within R').
//   Emergency + Large -> inner tessellation of the disk at
//                        inner_radius_factor * r (taller, sparser antennas).
//   Mobile + Small    -> nothing to add.
//   Mobile + Large    -> one replacement per covered repeater, moved to the
//                        nearest cell-boundary point outside the disk,
//                        keeping its carriers and PL tone.
AugmentationPlan augment(const Plan& plan, const Obstacle& o, AugmentMode mode,
                         double inner_radius_factor = 2.0);

} // namespace vhfplan
