#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "test_helpers.hpp"
#include "vhfplan/sensitivity.hpp"

using namespace vhfplan;
using vhfplan::testing::config_1000;

TEST_CASE("service radius sweep records the cell growth and the tone cliff") {
    const SweepResult result =
        sweep(config_1000(), SweepParam::ServiceRadius, {20.0, 40.0, 80.0});
    REQUIRE(result.points.size() == 3);

    CHECK(result.points[0].cells == 37);
    CHECK(result.points[1].cells == 91);
    CHECK(result.points[2].cells == 331);
    for (std::size_t i = 1; i < result.points.size(); ++i)
        CHECK(result.points[i].cells >= result.points[i - 1].cells);

    CHECK(result.points[1].feasible);
    // beyond some radius the 54-tone catalog cannot cover the cells
    CHECK_FALSE(result.points[2].feasible);
    CHECK(result.points[2].error.find("tones") != std::string::npos);
}

TEST_CASE("antenna height sweep shrinks the repeater count") {
    PlanConfig base = config_1000();
    base.coverage_cap_miles.reset(); // let the physics radius drive the cells
    const SweepResult result =
        sweep(base, SweepParam::AntennaHeight, {3.0, 4.5, 6.0, 8.0, 10.0});
    REQUIRE(result.points.size() == 5);
    int prev = 1 << 20;
    for (const auto& p : result.points) {
        CHECK(p.feasible);
        CHECK(p.repeaters <= prev);
        prev = p.repeaters;
    }
    CHECK(result.points.front().repeaters > result.points.back().repeaters);
}

TEST_CASE("channel spacing sweep cuts carriers and inflates the tone demand") {
    PlanConfig base = config_1000();
    base.mode = PlanConfig::Mode::Cell; // pin the mode the table row describes
    const SweepResult result = sweep(base, SweepParam::DeltaF, {0.1, 0.12, 0.15, 0.2});
    REQUIRE(result.points.size() == 4);
    CHECK(result.points[0].channels == 24);
    CHECK(result.points[3].channels == 12);
    int prev_channels = 1 << 20, prev_clusters = 0;
    for (const auto& p : result.points) {
        CHECK(p.channels <= prev_channels); // carriers shrink as delta_f grows
        CHECK(p.clusters >= prev_clusters); // required tones grow
        prev_channels = p.channels;
        prev_clusters = p.clusters;
    }
    // past 54 required tones the cell-mode plan is recorded infeasible
    CHECK(result.points[1].feasible);
    CHECK_FALSE(result.points[2].feasible);
    CHECK_FALSE(result.points[3].feasible);
    CHECK(result.points[3].clusters == 84);
    CHECK(result.points[3].error.find("tones") != std::string::npos);

    // auto mode rescues the same sweep by switching to group mode
    const SweepResult rescued =
        sweep(config_1000(), SweepParam::DeltaF, {0.1, 0.2});
    CHECK(rescued.points[1].feasible);
    CHECK(rescued.points[1].group_codes > 0);
}

TEST_CASE("user sweep crosses the mode threshold without breaking") {
    const SweepResult result =
        sweep(config_1000(), SweepParam::Users, {100.0, 1000.0, 2000.0});
    for (const auto& p : result.points) {
        CHECK(p.feasible);
        CHECK(p.cells == 91);
    }
    CHECK(result.points[0].group_codes == 0); // cell mode
    CHECK(result.points[2].group_codes > 0);  // auto switched to group mode
}

TEST_CASE("sweep validates its value list") {
    CHECK_THROWS_AS(sweep(config_1000(), SweepParam::Users, {}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(config_1000(), SweepParam::Users, {100.0, 100.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep(config_1000(), SweepParam::ServiceRadius, {40.0, 20.0}),
                    std::invalid_argument);
}

TEST_CASE("csv output carries the fixed header and one row per point") {
    const SweepResult result = sweep(config_1000(), SweepParam::ServiceRadius,
                                     {20.0, 40.0, 80.0});
    const std::string csv = sweep_to_csv(result);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "param,value,feasible,cells,repeaters,channels,clusters,group_codes,error");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty())
            ++rows;
    CHECK(rows == 3);
    CHECK(csv.find("R,40,true,91,91,24,42,0") != std::string::npos);
}
