#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "test_helpers.hpp"
#include "vhfplan/plan_io.hpp"
#include "vhfplan/render.hpp"

using namespace vhfplan;
using vhfplan::testing::plan_10000;
using vhfplan::testing::plan_1000;

namespace {

int count_occurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("cell-mode plan round trip") {
    const Plan& plan = plan_1000();
    const std::string json = plan_to_json(plan);
    const Plan loaded = plan_from_json(json);

    CHECK(loaded.mode == PlanMode::Cell);
    CHECK(loaded.tess.cells.size() == 91);
    CHECK(loaded.tess.r == doctest::Approx(5.0));
    CHECK(loaded.clusters.size() == 42);
    CHECK(loaded.partition.triples == 25);
    CHECK(loaded.partition.singles == 17);
    CHECK(loaded.channels.count() == 24);
    CHECK(loaded.users.size() == 1000);

    for (std::size_t i = 0; i < plan.clusters.size(); ++i) {
        CHECK(loaded.clusters[i].pl_tone == plan.clusters[i].pl_tone);
        CHECK(loaded.clusters[i].cell_ids == plan.clusters[i].cell_ids);
    }
    for (std::size_t i = 0; i < plan.users.size(); ++i) {
        CHECK(loaded.users[i].gc == plan.users[i].gc);
        CHECK(loaded.users[i].pl_tone == plan.users[i].pl_tone);
        CHECK(loaded.users[i].channel_mhz ==
              doctest::Approx(plan.users[i].channel_mhz).epsilon(1e-6));
        CHECK(loaded.users[i].cluster_id == plan.users[i].cluster_id);
    }

    // geometry is rebuilt exactly: adjacent spacing at 1e-9 relative
    const double want = std::sqrt(3.0) * loaded.tess.r;
    for (const auto& cell : loaded.tess.cells)
        for (const auto& n : neighbors(cell.coord)) {
            const int j = loaded.tess.index_of(n);
            if (j >= 0)
                CHECK(std::abs(distance(cell.center, loaded.tess.cells[j].center) - want) /
                          want <=
                      1e-9);
        }

    // serialization is stable end to end
    CHECK(plan_to_json(loaded) == json);
    CHECK(plan_to_json(plan_1000()) == json);
}

TEST_CASE("group-mode plan round trip keeps groups and layout") {
    const Plan& plan = plan_10000();
    const std::string json = plan_to_json(plan);
    const Plan loaded = plan_from_json(json);

    CHECK(loaded.mode == PlanMode::Group);
    CHECK(loaded.groups.size() == 20);
    CHECK(loaded.layout.big_composites == 7);
    CHECK(loaded.layout.small_groups == 6);
    for (std::size_t i = 0; i < plan.groups.size(); ++i) {
        CHECK(loaded.groups[i].gc == plan.groups[i].gc);
        CHECK((loaded.groups[i].kind == plan.groups[i].kind));
        CHECK(loaded.groups[i].cluster_ids == plan.groups[i].cluster_ids);
    }
    // cluster group codes are reconstructed from the group lists
    for (std::size_t i = 0; i < plan.clusters.size(); ++i)
        CHECK(loaded.clusters[i].gc == plan.clusters[i].gc);

    // user identities survive and stay unique
    std::set<std::tuple<int, int, double>> ids;
    for (const auto& u : loaded.users)
        CHECK(ids.insert({u.gc, u.pl_tone, u.channel_mhz}).second);
    CHECK(ids.size() == 10000);

    CHECK(plan_to_json(loaded) == json);
}

TEST_CASE("plan file validation") {
    CHECK_THROWS(plan_from_json("{}"));
    CHECK_THROWS(plan_from_json("not json at all"));

    std::string json = plan_to_json(plan_1000());
    // corrupt a stored center so it no longer matches (q, s, r)
    const auto pos = json.find("\"x\": 8.66");
    REQUIRE(pos != std::string::npos);
    json.replace(pos, 9, "\"x\": 9.99");
    CHECK_THROWS_AS(plan_from_json(json), std::runtime_error);
}

TEST_CASE("augmentations ride along in the plan document") {
    const Plan& plan = plan_1000();
    const Obstacle o{{0.0, 0.0}, 9.0, 300.0};
    const AugmentationPlan aug = augment(plan, o, AugmentMode::Mobile);
    const std::string json = plan_to_json(plan, {{o, aug}});

    std::vector<ObstacleRecord> loaded_augs;
    const Plan loaded = plan_from_json(json, &loaded_augs);
    REQUIRE(loaded_augs.size() == 1);
    CHECK(loaded_augs[0].obstacle.radius_miles == doctest::Approx(9.0));
    CHECK(loaded_augs[0].augmentation.case_label == CaseLabel::MobileLarge);
    CHECK(loaded_augs[0].augmentation.added_repeaters.size() ==
          aug.added_repeaters.size());
    CHECK(loaded_augs[0].augmentation.affected_cells == aug.affected_cells);
}

TEST_CASE("config text parsing") {
    const PlanConfig cfg = config_from_text(
        "# the 1000-user recipe\n"
        "users = 1000\n"
        "R = 40\n"
        "H = 15\n"
        "cap = 5\n"
        "delta_f = 0.1\n"
        "mode = cell\n"
        "seed = 42\n");
    CHECK(cfg.users == 1000);
    CHECK(cfg.area_radius_miles == doctest::Approx(40.0));
    CHECK(cfg.antenna_height_m == doctest::Approx(15.0));
    REQUIRE(cfg.coverage_cap_miles.has_value());
    CHECK(*cfg.coverage_cap_miles == doctest::Approx(5.0));
    CHECK(cfg.mode == PlanConfig::Mode::Cell);
    CHECK(cfg.seed == 42);

    const PlanConfig js = config_from_text(
        R"({"users": 10000, "area_radius_miles": 40, "coverage_cap_miles": 2,
            "mode": "group", "reuse_min_miles": 10.0})");
    CHECK(js.users == 10000);
    CHECK(js.mode == PlanConfig::Mode::Group);
    REQUIRE(js.coverage_cap_miles.has_value());
    CHECK(*js.coverage_cap_miles == doctest::Approx(2.0));

    CHECK_THROWS(config_from_text("nonsense = 1\n"));
    CHECK_THROWS(config_from_text("users 1000\n"));
    CHECK_THROWS(config_from_text("mode = sideways\n"));

    // cap can be cleared explicitly
    PlanConfig base;
    base.coverage_cap_miles = 5.0;
    CHECK_FALSE(config_from_text("cap = none\n", base).coverage_cap_miles.has_value());
}

TEST_CASE("svg rendering is deterministic and complete") {
    const Plan& plan = plan_1000();
    const std::string svg = render_svg(plan);
    CHECK(svg == render_svg(plan));
    CHECK(count_occurrences(svg, "<path") == 91);   // one hexagon per cell
    CHECK(count_occurrences(svg, "<circle") == 92); // 91 dots + service circle
    CHECK(svg.find("</svg>") != std::string::npos);

    PlanConfig tiny;
    tiny.users = 1;
    tiny.area_radius_miles = 1.0;
    tiny.coverage_cap_miles = 5.0;
    const std::string one = render_svg(build_plan(tiny));
    CHECK(count_occurrences(one, "<path") == 1);

    // obstacles and added repeaters are drawn on top
    const Obstacle o{{0.0, 0.0}, 9.0, 300.0};
    const AugmentationPlan aug = augment(plan, o, AugmentMode::Mobile);
    const std::string overlay = render_svg(plan, {{o, aug}});
    CHECK(count_occurrences(overlay, "<circle") ==
          92 + 1 + static_cast<int>(aug.added_repeaters.size()));
}

TEST_CASE("simulation log lines parse as json records") {
    const Plan& plan = plan_1000();
    const RoutingTable table = build_routes(plan);
    const SimResult result = simulate(plan, table, {{0, 500, 1}});
    const std::string jsonl = log_to_jsonl(result);
    CHECK(!jsonl.empty());
    CHECK(count_occurrences(jsonl, "\"action\":\"deliver\"") == 1);
    CHECK(jsonl.find("\"msg_id\":0") != std::string::npos);
    CHECK(count_occurrences(jsonl, "\n") == static_cast<int>(result.log.size()));
}
