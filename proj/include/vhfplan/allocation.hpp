#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vhfplan/hexgrid.hpp"

namespace vhfplan {

inline constexpr double kDuplexOffsetMHz = 0.6;
inline constexpr double kBandCeilingMHz = 148.0;

struct ChannelTable {
    double f_lo = 0.0;
    double f_hi = 0.0;
    double delta_f = 0.0;
    double duplex_offset = kDuplexOffsetMHz;
    std::vector<double> channels; // ascending carriers in [f_lo, f_hi)

    int count() const { return static_cast<int>(channels.size()); }
};

// Carriers at f_lo, f_lo+delta_f, ... strictly below f_hi. Every carrier
// plus the duplex offset must stay at or below 148.0 MHz.
ChannelTable build_channel_table(double f_lo, double f_hi, double delta_f);

// ceil(users / capacity)
int clusters_required(int users, int capacity);

// true iff n_c = i^2 + i*j + j^2 for some i,j >= 0, not both zero
bool is_valid_cluster_size(int n_c);

// Cell-mode partition: x triple-cell clusters and y single-cell clusters
// with x + y = num_clusters and 3x + y >= num_cells, minimizing the
// over-provisioning 3x + y.
struct PartitionCounts {
    int triples = 0; // x
    int singles = 0; // y
};
PartitionCounts solve_partition(int num_cells, int num_clusters);

// Concrete assignment: triples are consecutive same-ring runs of the
// spiral enumeration (always connected); at most one triple holds only
// two cells when 3x + y exceeds num_cells by one. Returned lists hold
// cell indices; triples come first, then singles in spiral order.
std::vector<std::vector<int>> partition_cells(const Tessellation& tess, int num_clusters);

struct Cluster {
    int id = 0;
    std::vector<int> cell_ids; // indices into Tessellation::cells
    int pl_tone = 0;           // 1-based tone index, 0 = unassigned
    int gc = 0;                // 1-based group code, 0 = none (Cell mode)
};

enum class GroupKind { Big54, Small7 };

struct Group {
    int gc = 0;
    GroupKind kind = GroupKind::Small7;
    std::vector<int> cluster_ids;
    bool padded = false; // undersized margin group (< nominal size)
};

// Integer accounting for the group layout: 61-cluster composites
// (Big54 + Small7, two GCs each), then a bare Big54 if at least 54
// clusters remain, then 7-cluster groups, padding the final one.
struct GroupLayout {
    int big_composites = 0;
    int standalone_big = 0; // 0 or 1
    int small_groups = 0;   // full 7-cluster groups outside composites
    int padded_clusters = 0;

    int group_codes() const {
        return 2 * big_composites + standalone_big + small_groups +
               (padded_clusters > 0 ? 1 : 0);
    }
    int total_clusters() const {
        return 61 * big_composites + 54 * standalone_big + 7 * small_groups +
               padded_clusters;
    }
};
GroupLayout build_groups(int num_clusters);

enum class PlanMode { Cell, Group };

struct PlanConfig {
    int users = 0;
    double area_radius_miles = 40.0;
    double antenna_height_m = 15.0;
    std::optional<double> coverage_cap_miles;
    double f_lo = 145.0;
    double f_hi = 147.4;
    double delta_f = 0.1;
    int pl_catalog_size = 54;
    enum class Mode { Auto, Cell, Group } mode = Mode::Auto;
    // Auto mode switches to Group above this; default catalog * channels.
    std::optional<int> auto_threshold_users;
    double reuse_min_miles = 10.0;
    std::uint64_t seed = 1;
};

struct UserId {
    int gc = 0;           // 0 = absent (Cell mode)
    int pl_tone = 0;      // 1-based
    double channel_mhz = 0.0;
    int cluster_id = -1;  // derived; not part of the serialized identity
};

struct Plan {
    PlanMode mode = PlanMode::Cell;
    PlanConfig config;
    Tessellation tess;
    ChannelTable channels;
    std::vector<Cluster> clusters;
    std::vector<Group> groups; // empty in Cell mode
    std::vector<UserId> users;
    GroupLayout layout;            // Group mode accounting
    PartitionCounts partition;     // Cell mode x/y
    std::vector<std::string> notes; // layout warnings (padding, fallbacks)

    int cluster_of_cell(int cell_id) const; // cluster id
    int tone_of_cell(int cell_id) const;
    Point cluster_centroid(int cluster_id) const;
    // Deterministic home repeater for a user: cell_ids[channel_index % size].
    int home_repeater(const UserId& u) const;
    int channel_index(double channel_mhz) const; // -1 if not a carrier

    std::vector<int> cell_to_cluster; // built by finalize()
    void rebuild_cell_index();
};

// Tessellate, size clusters, partition cells (Cell mode) or group
// clusters (Group mode), assign tones, validate reuse, fill users.
Plan build_plan(const PlanConfig& config);

// Tone assignment: Cell mode uses tones 1..num_clusters (error past the
// catalog); Group mode lays the 54-tone template over the 61-cluster
// lattice. Throws InfeasibleError on tone exhaustion or reuse violation.
void assign_pl_tones(Plan& plan);

struct ReusePair {
    int cluster_a = 0;
    int cluster_b = 0;
    double distance_miles = 0.0;
};

struct ReuseReport {
    std::optional<double> min_distance_miles; // absent when no same-tone pair
    std::optional<std::pair<int, int>> min_pair;
    std::vector<ReusePair> violations; // < reuse_min, sorted by (distance, ids)
};
ReuseReport check_reuse_distance(const Plan& plan);

// Round-robin (gc, tone, channel) triples over the clusters.
std::vector<UserId> assign_users(const Plan& plan, int user_count);

} // namespace vhfplan
