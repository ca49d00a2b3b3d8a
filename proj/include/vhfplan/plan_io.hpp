#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vhfplan/allocation.hpp"
#include "vhfplan/routing.hpp"
#include "vhfplan/terrain.hpp"

namespace vhfplan {

struct ObstacleRecord {
    Obstacle obstacle;
    AugmentationPlan augmentation;
};

// Versioned plan document; floats are rounded to six decimals so two
// runs of the same configuration produce byte-identical files.
std::string plan_to_json(const Plan& plan,
                         const std::vector<ObstacleRecord>& augmentations = {});

// Inverse of plan_to_json. Cell centers are recomputed from (q, s, r)
// so geometric invariants hold exactly; the stored x/y are checked
// against them. Augmentations (if any) are returned through `out`.
Plan plan_from_json(const std::string& text,
                    std::vector<ObstacleRecord>* out_augmentations = nullptr);

std::string log_to_jsonl(const SimResult& result);

// `key = value` lines (# comments) or a JSON object; keys match the
// PlanConfig field names.
PlanConfig config_from_text(const std::string& text, const PlanConfig& defaults = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace vhfplan
