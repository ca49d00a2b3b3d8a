#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "test_helpers.hpp"
#include "vhfplan/allocation.hpp"
#include "vhfplan/errors.hpp"

using namespace vhfplan;
using vhfplan::testing::config_10000;
using vhfplan::testing::config_1000;
using vhfplan::testing::plan_10000;
using vhfplan::testing::plan_1000;

namespace {

bool brute_force_cluster_size(int n_c) {
    for (int i = 0; i <= 40; ++i)
        for (int j = 0; j <= 40; ++j) {
            if (i + j == 0)
                continue;
            if (i * i + i * j + j * j == n_c)
                return true;
        }
    return false;
}

// exhaustive minimum of 3x + y over feasible (x, y)
PartitionCounts brute_force_partition(int num_cells, int num_clusters) {
    int best_x = -1;
    for (int x = 0; x <= num_clusters; ++x) {
        const int y = num_clusters - x;
        if (3 * x + y < num_cells)
            continue;
        best_x = x;
        break; // 3x + y increases with x, so the first feasible x is minimal
    }
    REQUIRE(best_x >= 0);
    return {best_x, num_clusters - best_x};
}

bool cluster_connected(const Tessellation& tess, const std::vector<int>& cells) {
    if (cells.size() <= 1)
        return true;
    std::set<int> todo(cells.begin() + 1, cells.end());
    std::deque<int> frontier{cells.front()};
    while (!frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop_front();
        for (const auto& n : neighbors(tess.cells[cur].coord)) {
            const int j = tess.index_of(n);
            if (j >= 0 && todo.erase(j))
                frontier.push_back(j);
        }
    }
    return todo.empty();
}

} // namespace

TEST_CASE("channel table defaults to 24 carriers") {
    const ChannelTable t = build_channel_table(145.0, 147.4, 0.1);
    CHECK(t.count() == 24);
    CHECK(t.channels.front() == doctest::Approx(145.0));
    CHECK(t.channels.back() == doctest::Approx(147.3));
    for (int i = 1; i < t.count(); ++i)
        CHECK(t.channels[i] - t.channels[i - 1] == doctest::Approx(0.1).epsilon(1e-9));
    for (double c : t.channels) {
        CHECK(c < 147.4);
        CHECK(c + t.duplex_offset <= 148.0 + 1e-9);
    }
}

TEST_CASE("channel table corner spacings") {
    CHECK(build_channel_table(145.0, 147.4, 2.4).channels ==
          std::vector<double>{145.0});
    const ChannelTable four = build_channel_table(145.0, 147.4, 0.6);
    REQUIRE(four.count() == 4);
    CHECK(four.channels[0] == doctest::Approx(145.0));
    CHECK(four.channels[1] == doctest::Approx(145.6));
    CHECK(four.channels[2] == doctest::Approx(146.2));
    CHECK(four.channels[3] == doctest::Approx(146.8));
}

TEST_CASE("channel table error paths") {
    CHECK_THROWS_AS(build_channel_table(147.4, 145.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_channel_table(145.0, 147.4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_channel_table(145.0, 147.4, -0.1), std::invalid_argument);
    // carriers near 148.0 break the duplex ceiling
    CHECK_THROWS_AS(build_channel_table(145.0, 148.0, 0.1), BandViolationError);
}

TEST_CASE("clusters_required") {
    CHECK(clusters_required(1000, 24) == 42);
    CHECK(clusters_required(10000, 24) == 417);
    CHECK(clusters_required(24, 24) == 1);
    CHECK(clusters_required(0, 24) == 0);
    CHECK_THROWS_AS(clusters_required(10, 0), std::invalid_argument);
    CHECK_THROWS_AS(clusters_required(-1, 24), std::invalid_argument);

    for (int users : {1, 23, 24, 25, 1000, 9999, 10000})
        for (int cap : {1, 7, 24, 54}) {
            const int n = clusters_required(users, cap);
            CHECK(n * cap >= users);
            if (users > 0)
                CHECK((n - 1) * cap < users);
        }
}

TEST_CASE("is_valid_cluster_size matches brute force up to 1000") {
    CHECK(is_valid_cluster_size(1));
    CHECK(is_valid_cluster_size(3));
    CHECK(is_valid_cluster_size(7));
    CHECK_FALSE(is_valid_cluster_size(2));
    CHECK_FALSE(is_valid_cluster_size(5));
    CHECK_FALSE(is_valid_cluster_size(6));
    for (int n = 1; n <= 1000; ++n)
        CHECK(is_valid_cluster_size(n) == brute_force_cluster_size(n));
}

TEST_CASE("solve_partition reproduces x=25, y=17") {
    const PartitionCounts pc = solve_partition(91, 42);
    CHECK(pc.triples == 25);
    CHECK(pc.singles == 17);
    CHECK(3 * pc.triples + pc.singles >= 91);

    const PartitionCounts small = solve_partition(7, 3);
    CHECK(small.triples == 2);
    CHECK(small.singles == 1);

    const PartitionCounts one = solve_partition(3, 1);
    CHECK(one.triples == 1);
    CHECK(one.singles == 0);
}

TEST_CASE("solve_partition is minimal for every cluster count up to 100") {
    for (int clusters = 1; clusters <= 100; ++clusters)
        for (int cells = clusters; cells <= 3 * clusters; ++cells) {
            const PartitionCounts got = solve_partition(cells, clusters);
            const PartitionCounts want = brute_force_partition(cells, clusters);
            CHECK(got.triples == want.triples);
            CHECK(got.singles == want.singles);
            CHECK(got.triples + got.singles == clusters);
            CHECK(3 * got.triples + got.singles >= cells);
        }
}

TEST_CASE("solve_partition infeasibility") {
    CHECK_THROWS_AS(solve_partition(7, 2), InfeasibleError);   // 3*2 < 7
    CHECK_THROWS_AS(solve_partition(3, 5), InfeasibleError);   // clusters > cells
    CHECK_THROWS_AS(solve_partition(0, 1), std::invalid_argument);
    try {
        solve_partition(7, 2);
    } catch (const InfeasibleError& e) {
        CHECK(e.constraint() == "partition");
    }
}

TEST_CASE("partition_cells builds connected triominoes over the 91-cell board") {
    const auto tess = tessellate(40.0, 5.0);
    const auto clusters = partition_cells(tess, 42);
    REQUIRE(clusters.size() == 42);

    int triples = 0, pairs = 0, singles = 0, covered = 0;
    std::set<int> seen;
    for (const auto& c : clusters) {
        covered += static_cast<int>(c.size());
        for (int cell : c)
            CHECK(seen.insert(cell).second); // no cell assigned twice
        if (c.size() == 3)
            ++triples;
        else if (c.size() == 2)
            ++pairs;
        else if (c.size() == 1)
            ++singles;
        CHECK(cluster_connected(tess, c));
    }
    CHECK(covered == 91);
    CHECK(triples == 24);
    CHECK(pairs == 1); // one nominal triple keeps only two real cells
    CHECK(singles == 17);
    CHECK(triples + pairs == 25); // nominal x
}

TEST_CASE("partition_cells covers a spread of boards") {
    struct Case {
        double R, r;
        int clusters;
    };
    for (const auto& [R, r, clusters] :
         {Case{2.0, 1.0, 3}, Case{40.0, 5.0, 42}, Case{40.0, 5.0, 31},
          Case{40.0, 5.0, 91}, Case{40.0, 2.0, 200}, Case{40.0, 2.0, 469},
          Case{13.0, 3.0, 25}}) {
        const auto tess = tessellate(R, r);
        const auto assignment = partition_cells(tess, clusters);
        CHECK(static_cast<int>(assignment.size()) == clusters);
        std::set<int> seen;
        for (const auto& c : assignment) {
            CHECK(!c.empty());
            CHECK(c.size() <= 3);
            CHECK(cluster_connected(tess, c));
            for (int cell : c)
                CHECK(seen.insert(cell).second);
        }
        CHECK(seen.size() == tess.cells.size());
    }
}

TEST_CASE("build_groups accounting") {
    const GroupLayout canonical = build_groups(469);
    CHECK(canonical.big_composites == 7);
    CHECK(canonical.standalone_big == 0);
    CHECK(canonical.small_groups == 6);
    CHECK(canonical.padded_clusters == 0);
    CHECK(canonical.group_codes() == 20);

    const GroupLayout composite = build_groups(61);
    CHECK(composite.big_composites == 1);
    CHECK(composite.group_codes() == 2);

    const GroupLayout bare = build_groups(54);
    CHECK(bare.big_composites == 0);
    CHECK(bare.standalone_big == 1);
    CHECK(bare.group_codes() == 1);

    CHECK_THROWS_AS(build_groups(0), std::invalid_argument);

    for (int n = 1; n <= 600; ++n)
        CHECK(build_groups(n).total_clusters() == n);
}

TEST_CASE("the 1000-user plan hits the reference counts") {
    const Plan& plan = plan_1000();
    CHECK(plan.mode == PlanMode::Cell);
    CHECK(plan.tess.cells.size() == 91);
    CHECK(plan.clusters.size() == 42);
    CHECK(plan.partition.triples == 25);
    CHECK(plan.partition.singles == 17);
    CHECK(plan.channels.count() == 24);
    CHECK(plan.groups.empty());

    std::set<int> tones;
    for (const auto& c : plan.clusters) {
        CHECK(c.pl_tone >= 1);
        CHECK(c.pl_tone <= 54);
        CHECK(tones.insert(c.pl_tone).second); // all distinct
    }
    CHECK(tones.size() == 42);

    const ReuseReport reuse = check_reuse_distance(plan);
    CHECK_FALSE(reuse.min_distance_miles.has_value()); // no same-tone pair at all
    CHECK(reuse.violations.empty());
}

TEST_CASE("the 10000-user plan hits the reference group layout") {
    const Plan& plan = plan_10000();
    CHECK(plan.mode == PlanMode::Group);
    CHECK(plan.tess.cells.size() == 469);
    CHECK(plan.clusters.size() == 469);
    CHECK(clusters_required(10000, plan.channels.count()) == 417);
    CHECK(plan.layout.big_composites == 7);
    CHECK(plan.layout.standalone_big == 0);
    CHECK(plan.layout.small_groups == 6);
    CHECK(plan.layout.padded_clusters == 0);
    CHECK(plan.groups.size() == 20);
    // the only note is the rim coverage shortfall of the 469-cell board
    REQUIRE(plan.notes.size() == 1);
    CHECK(plan.notes[0].find("coverage") != std::string::npos);

    int big54 = 0, small7 = 0;
    for (const auto& g : plan.groups) {
        std::set<int> tones;
        for (int cid : g.cluster_ids)
            CHECK(tones.insert(plan.clusters[cid].pl_tone).second);
        if (g.kind == GroupKind::Big54) {
            ++big54;
            CHECK(g.cluster_ids.size() == 54);
            CHECK(*tones.begin() == 1);
            CHECK(*tones.rbegin() == 54);
        } else {
            ++small7;
            CHECK(g.cluster_ids.size() == 7);
            CHECK_FALSE(g.padded);
        }
    }
    CHECK(big54 == 7);
    CHECK(small7 == 13); // 7 composite siblings + 6 margin groups

    // the 7 composite Small7 groups carry the template's central tones 1..7
    for (int k = 0; k < 7; ++k) {
        const Group& sibling = plan.groups[2 * k + 1];
        REQUIRE(sibling.kind == GroupKind::Small7);
        std::set<int> tones;
        for (int cid : sibling.cluster_ids)
            tones.insert(plan.clusters[cid].pl_tone);
        CHECK(tones == std::set<int>{1, 2, 3, 4, 5, 6, 7});
    }

    // every cluster belongs to exactly one group
    std::set<int> grouped;
    for (const auto& g : plan.groups)
        for (int cid : g.cluster_ids)
            CHECK(grouped.insert(cid).second);
    CHECK(grouped.size() == 469);

    for (const auto& c : plan.clusters) {
        CHECK(c.gc >= 1);
        CHECK(c.gc <= 20);
    }
}

TEST_CASE("Big54 tone layout repeats identically across composites") {
    const Plan& plan = plan_10000();
    // tone multiset in every Big54 is exactly 1..54, so the distribution
    // (which tone sits where) is pinned by the shared template
    for (const auto& g : plan.groups) {
        if (g.kind != GroupKind::Big54)
            continue;
        std::set<int> tones;
        for (int cid : g.cluster_ids)
            tones.insert(plan.clusters[cid].pl_tone);
        CHECK(tones.size() == 54);
    }
}

TEST_CASE("reuse distance on the 469-cluster plan is 10.4 miles") {
    const Plan& plan = plan_10000();
    const ReuseReport reuse = check_reuse_distance(plan);
    REQUIRE(reuse.min_distance_miles.has_value());
    CHECK(*reuse.min_distance_miles >= 10.0);
    CHECK(*reuse.min_distance_miles <= 10.8);
    CHECK(*reuse.min_distance_miles ==
          doctest::Approx(6.0 * std::sqrt(3.0)).epsilon(1e-9));
    CHECK(reuse.violations.empty());
}

TEST_CASE("check_reuse_distance reports violating pairs") {
    Plan plan = vhfplan::testing::make_line_plan(3, 2.0);
    plan.clusters[0].pl_tone = 9;
    plan.clusters[1].pl_tone = 9; // adjacent, 2*sqrt(3) miles apart
    plan.clusters[2].pl_tone = 1;
    plan.config.reuse_min_miles = 10.0;
    const ReuseReport reuse = check_reuse_distance(plan);
    REQUIRE(reuse.min_distance_miles.has_value());
    CHECK(*reuse.min_distance_miles == doctest::Approx(2.0 * std::sqrt(3.0)));
    REQUIRE(reuse.violations.size() == 1);
    CHECK(reuse.violations[0].cluster_a == 0);
    CHECK(reuse.violations[0].cluster_b == 1);
}

TEST_CASE("single-cluster plan has nothing to check") {
    PlanConfig cfg;
    cfg.users = 1;
    cfg.area_radius_miles = 1.0;
    cfg.coverage_cap_miles = 5.0;
    const Plan plan = build_plan(cfg);
    CHECK(plan.tess.cells.size() == 1);
    CHECK(plan.clusters.size() == 1);
    CHECK(plan.clusters[0].pl_tone == 1);
    const ReuseReport reuse = check_reuse_distance(plan);
    CHECK_FALSE(reuse.min_distance_miles.has_value());
    CHECK(reuse.violations.empty());
}

TEST_CASE("cell mode exhausts the tone catalog with a pointer to group mode") {
    PlanConfig cfg = config_10000();
    cfg.users = 2000;
    cfg.mode = PlanConfig::Mode::Cell; // 469 cells need 157 clusters > 54 tones
    try {
        build_plan(cfg);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.constraint() == "tones");
        CHECK(std::string(e.what()).find("group mode") != std::string::npos);
    }
}

TEST_CASE("a reuse floor above the template spacing is rejected") {
    PlanConfig cfg = config_10000();
    cfg.reuse_min_miles = 50.0; // no 54-tone layout can spread that far
    CHECK_THROWS_AS(build_plan(cfg), InfeasibleError);
}

TEST_CASE("coverage cap beyond line of sight is rejected") {
    PlanConfig cfg = config_1000();
    cfg.coverage_cap_miles = 12.0; // LOS bound at 15 m is 8.6 mi
    try {
        build_plan(cfg);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.constraint() == "coverage");
    }
}

TEST_CASE("assign_users round-robin fills and stays within capacity") {
    const Plan& plan = plan_1000();
    REQUIRE(plan.users.size() == 1000);

    std::map<int, int> load;
    std::set<std::tuple<int, int, double>> ids;
    for (const auto& u : plan.users) {
        ++load[u.cluster_id];
        CHECK(ids.insert({u.gc, u.pl_tone, u.channel_mhz}).second); // unique IDs
        CHECK(u.gc == 0);                                           // no GC in cell mode
    }
    int max_load = 0;
    for (const auto& [cid, n] : load)
        max_load = std::max(max_load, n);
    CHECK(max_load == 24);
    CHECK(load.size() == 42);
}

TEST_CASE("one big composite holds exactly 1464 users") {
    PlanConfig cfg;
    cfg.users = 1464;
    cfg.area_radius_miles = 14.0; // 61 cells at r = 2
    cfg.coverage_cap_miles = 2.0;
    cfg.mode = PlanConfig::Mode::Group;
    const Plan plan = build_plan(cfg);
    CHECK(plan.tess.cells.size() == 61);
    CHECK(plan.layout.big_composites == 1);
    CHECK(plan.groups.size() == 2);
    CHECK(plan.users.size() == 1464);

    std::map<int, int> load;
    for (const auto& u : plan.users)
        ++load[u.cluster_id];
    CHECK(load.size() == 61);
    for (const auto& [cid, n] : load)
        CHECK(n == 24); // exactly full

    CHECK_THROWS_AS(assign_users(plan, 1465), InfeasibleError);
    CHECK(assign_users(plan, 0).empty());
}

TEST_CASE("group-mode user IDs are unique across the whole plan") {
    const Plan& plan = plan_10000();
    std::set<std::tuple<int, int, double>> ids;
    for (const auto& u : plan.users) {
        CHECK(u.gc >= 1);
        CHECK(ids.insert({u.gc, u.pl_tone, u.channel_mhz}).second);
    }
    CHECK(ids.size() == 10000);
}

TEST_CASE("auto mode picks cell below the threshold and group above") {
    PlanConfig cfg = config_1000();
    CHECK(build_plan(cfg).mode == PlanMode::Cell); // 1000 <= 54*24
    PlanConfig big = config_10000();
    CHECK(build_plan(big).mode == PlanMode::Group); // 10000 > 1296

    // the threshold is selectable: the same load lands on either side
    PlanConfig alt = config_1000();
    alt.users = 2000;
    alt.pl_catalog_size = 100; // 84 clusters fit this catalog in cell mode
    CHECK(build_plan(alt).mode == PlanMode::Cell); // default threshold 100*24
    alt.auto_threshold_users = 1500;
    CHECK(build_plan(alt).mode == PlanMode::Group);
}

TEST_CASE("group structure holds together on non-canonical boards") {
    for (double R : {14.0, 26.0, 33.0}) { // 61, 169 and 271 cells at r = 2
        PlanConfig cfg;
        cfg.users = 100;
        cfg.area_radius_miles = R;
        cfg.coverage_cap_miles = 2.0;
        cfg.mode = PlanConfig::Mode::Group;
        const Plan plan = build_plan(cfg);

        std::set<int> grouped;
        for (const auto& g : plan.groups) {
            std::set<int> tones;
            for (int cid : g.cluster_ids) {
                CHECK(tones.insert(plan.clusters[cid].pl_tone).second);
                CHECK(grouped.insert(cid).second);
            }
            if (g.kind == GroupKind::Big54)
                CHECK(g.cluster_ids.size() == 54);
            else if (!g.padded)
                CHECK(g.cluster_ids.size() == 7);
        }
        CHECK(grouped.size() == plan.clusters.size());
        CHECK(check_reuse_distance(plan).violations.empty());
    }
}
