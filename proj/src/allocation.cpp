#include "vhfplan/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vhfplan/coverage.hpp"
#include "vhfplan/errors.hpp"

namespace vhfplan {

ChannelTable build_channel_table(double f_lo, double f_hi, double delta_f) {
    if (!(f_lo < f_hi))
        throw std::invalid_argument("channel table: band is inverted or empty");
    if (delta_f <= 0.0)
        throw std::invalid_argument("channel table: delta_f must be positive");
    ChannelTable t;
    t.f_lo = f_lo;
    t.f_hi = f_hi;
    t.delta_f = delta_f;
    const int count = static_cast<int>(std::floor((f_hi - f_lo) / delta_f + 1e-9));
    t.channels.reserve(count);
    for (int i = 0; i < count; ++i)
        t.channels.push_back(f_lo + i * delta_f);
    if (!t.channels.empty() &&
        t.channels.back() + t.duplex_offset > kBandCeilingMHz + 1e-9) {
        std::ostringstream msg;
        msg << "channel " << t.channels.back() << " MHz plus the " << t.duplex_offset
            << " MHz duplex offset exceeds the " << kBandCeilingMHz << " MHz band ceiling";
        throw BandViolationError(msg.str());
    }
    return t;
}

int clusters_required(int users, int capacity) {
    if (capacity < 1)
        throw std::invalid_argument("clusters_required: capacity must be at least 1");
    if (users < 0)
        throw std::invalid_argument("clusters_required: negative user count");
    return (users + capacity - 1) / capacity;
}

bool is_valid_cluster_size(int n_c) {
    if (n_c < 1)
        return false;
    const int lim = static_cast<int>(std::sqrt(static_cast<double>(n_c))) + 1;
    for (int i = 0; i <= lim; ++i)
        for (int j = i; j <= lim; ++j) {
            if (i == 0 && j == 0)
                continue;
            if (i * i + i * j + j * j == n_c)
                return true;
        }
    return false;
}

PartitionCounts solve_partition(int num_cells, int num_clusters) {
    if (num_cells < 1 || num_clusters < 1)
        throw std::invalid_argument("partition: cell and cluster counts must be positive");
    if (num_clusters > num_cells)
        throw InfeasibleError("cells", "more clusters than cells: " +
                                            std::to_string(num_clusters) + " clusters but only " +
                                            std::to_string(num_cells) + " cells");
    if (3 * num_clusters < num_cells)
        throw InfeasibleError("partition", "3x + y >= " + std::to_string(num_cells) +
                                               " is unsatisfiable with x + y = " +
                                               std::to_string(num_clusters) +
                                               " clusters of size 3 or 1");
    // minimize 3x + y = num_clusters + 2x  =>  smallest feasible x
    const int x = std::max(0, (num_cells - num_clusters + 1) / 2);
    return {x, num_clusters - x};
}

std::vector<std::vector<int>> partition_cells(const Tessellation& tess, int num_clusters) {
    const int n = static_cast<int>(tess.cells.size());
    const PartitionCounts pc = solve_partition(n, num_clusters);
    const int excess = 3 * pc.triples + pc.singles - n; // 0 or 1

    std::vector<std::vector<int>> triples;
    std::vector<std::vector<int>> singles;
    int triples_left = pc.triples;
    int singles_left = pc.singles;

    int i = 0;
    while (i < n) {
        const int k = ring(tess.cells[i].coord);
        const int ring_end = 1 + 3 * k * (k + 1); // first index past ring k
        const int run_left = ring_end - i;
        const int want = (triples_left == 1 && excess == 1) ? 2 : 3;
        if (triples_left > 0 && run_left >= want) {
            std::vector<int> c(want);
            std::iota(c.begin(), c.end(), i);
            triples.push_back(std::move(c));
            i += want;
            --triples_left;
        } else if (singles_left > 0) {
            singles.push_back({i});
            ++i;
            --singles_left;
        } else {
            throw std::logic_error("partition_cells: ran out of cluster slots");
        }
    }
    if (triples_left != 0 || singles_left != 0)
        throw std::logic_error("partition_cells: accounting mismatch");

    std::vector<std::vector<int>> out;
    out.reserve(triples.size() + singles.size());
    for (auto& t : triples)
        out.push_back(std::move(t));
    for (auto& s : singles)
        out.push_back(std::move(s));
    return out;
}

GroupLayout build_groups(int num_clusters) {
    if (num_clusters < 1)
        throw std::invalid_argument("build_groups: cluster count must be positive");
    GroupLayout layout;
    int rem = num_clusters;
    layout.big_composites = rem / 61;
    rem %= 61;
    if (rem >= 54) {
        layout.standalone_big = 1;
        rem -= 54;
    }
    layout.small_groups = rem / 7;
    layout.padded_clusters = rem % 7;
    return layout;
}

// ---------------------------------------------------------------------------
// Group-mode spatial structure.
//
// 61-cluster super-hexagons tile the plane on the lattice spanned by
// (5,4) and its 60-degree rotation (-4,9). The tone template numbers the
// 61 offsets of a super-hexagon in spiral order: the translated central
// flower at offset (3,0) repeats tones 1..7 (that translation is three
// straight cell steps, i.e. 3*sqrt(3)*r = 10.39 miles at r = 2, the
// closest any two same-tone clusters ever get). Boundary super-hexagons
// are completed with the nearest leftover cells, which take over the
// tone of the slot they fill; every takeover is checked against the
// reuse floor before it is committed.
// ---------------------------------------------------------------------------

namespace {

constexpr int kCompositeSize = 61;
constexpr int kBigSize = 54;
constexpr int kSmallSize = 7;
const HexCoord kLatticeA{5, 4};
const HexCoord kLatticeB{-4, 9};
const HexCoord kSmallShift{3, 0};

struct GroupTemplate {
    std::vector<HexCoord> offsets;      // spiral(4), 61 entries
    std::vector<HexCoord> small_offsets; // translated central flower, 7 entries
    std::unordered_map<HexCoord, int, HexCoordHash> tone; // offset -> 1..54
    std::unordered_map<HexCoord, bool, HexCoordHash> is_small;
};

GroupTemplate make_group_template() {
    GroupTemplate t;
    t.offsets = spiral_coords(4);
    for (const auto& f : spiral_coords(1))
        t.small_offsets.push_back(f + kSmallShift);
    std::set<std::pair<int, int>> small;
    for (const auto& o : t.small_offsets)
        small.insert({o.q, o.s});
    int next = 1;
    for (const auto& o : t.offsets) {
        const bool is_small = small.count({o.q, o.s}) > 0;
        t.is_small[o] = is_small;
        if (!is_small)
            t.tone[o] = next++;
    }
    const auto flower = spiral_coords(1);
    for (std::size_t i = 0; i < flower.size(); ++i)
        t.tone[t.small_offsets[i]] = t.tone[flower[i]];
    return t;
}

HexCoord lattice_home(HexCoord c) {
    // invert [5 -4; 4 9] (det 61) and search the rounding neighborhood
    const double a0 = (9.0 * c.q + 4.0 * c.s) / 61.0;
    const double b0 = (-4.0 * c.q + 5.0 * c.s) / 61.0;
    const int ar = static_cast<int>(std::lround(a0));
    const int br = static_cast<int>(std::lround(b0));
    for (int da = -1; da <= 1; ++da)
        for (int db = -1; db <= 1; ++db) {
            const int a = ar + da, b = br + db;
            const HexCoord L{a * kLatticeA.q + b * kLatticeB.q,
                             a * kLatticeA.s + b * kLatticeB.s};
            if (hex_distance(c, L) <= 4)
                return L;
        }
    throw std::logic_error("lattice_home: tiling lookup failed");
}

double polar_angle(const Point& p) {
    double a = std::atan2(p.y, p.x);
    if (a < 0)
        a += 2.0 * std::acos(-1.0);
    return a;
}

struct Region {
    HexCoord center;
    std::vector<int> cells; // spiral order
};

// Order: largest first, then closer to the middle, then by angle.
std::vector<Region> board_regions(const Tessellation& tess) {
    std::unordered_map<HexCoord, std::vector<int>, HexCoordHash> by_home;
    for (const auto& cell : tess.cells)
        by_home[lattice_home(cell.coord)].push_back(cell.repeater_id);
    std::vector<Region> regions;
    regions.reserve(by_home.size());
    for (auto& [home, cells] : by_home)
        regions.push_back({home, std::move(cells)});
    std::sort(regions.begin(), regions.end(), [&](const Region& a, const Region& b) {
        if (a.cells.size() != b.cells.size())
            return a.cells.size() > b.cells.size();
        const int ra = ring(a.center), rb = ring(b.center);
        if (ra != rb)
            return ra < rb;
        const double aa = polar_angle(hex_center(a.center, 1.0));
        const double ab = polar_angle(hex_center(b.center, 1.0));
        if (aa != ab)
            return aa < ab;
        if (a.center.q != b.center.q)
            return a.center.q < b.center.q;
        return a.center.s < b.center.s;
    });
    return regions;
}

struct GroupBuilder {
    const Tessellation& tess;
    const GroupTemplate tmpl;
    std::vector<int> tone;       // per cell, mutable while donating
    std::vector<bool> consumed;  // claimed by a composite / standalone big
    std::vector<bool> reserved;  // belongs to a designated super-hexagon
    std::vector<int> quota;      // per region: donations it may still give
    std::vector<Region> regions;
    std::vector<int> region_of;  // per cell

    explicit GroupBuilder(const Tessellation& t)
        : tess(t), tmpl(make_group_template()), tone(t.cells.size(), 0),
          consumed(t.cells.size(), false), reserved(t.cells.size(), false),
          region_of(t.cells.size(), -1) {
        regions = board_regions(t);
        for (std::size_t ri = 0; ri < regions.size(); ++ri)
            for (int cid : regions[ri].cells)
                region_of[cid] = static_cast<int>(ri);
        for (const auto& cell : tess.cells) {
            const HexCoord off = cell.coord - regions[region_of[cell.repeater_id]].center;
            tone[cell.repeater_id] = tmpl.tone.at(off);
        }
        quota.resize(regions.size());
        for (std::size_t ri = 0; ri < regions.size(); ++ri)
            quota[ri] = std::max(0, static_cast<int>(regions[ri].cells.size()) - kSmallSize);
    }

    void set_reserved(int ri, bool value) {
        for (int cid : regions[ri].cells)
            reserved[cid] = value;
    }

    bool reuse_safe(int cell_id, int new_tone, double reuse_min) const {
        const Point& p = tess.cells[cell_id].center;
        for (const auto& cell : tess.cells) {
            const int cid = cell.repeater_id;
            if (cid == cell_id || tone[cid] != new_tone)
                continue;
            if (distance(p, cell.center) < reuse_min)
                return false;
        }
        return true;
    }

    // Nearest free margin cell able to take over `slot_tone` at `target`
    // without breaking the reuse floor.
    int find_donor(const Point& target, int slot_tone, double reuse_min,
                   bool respect_quota) const {
        int best = -1;
        double best_d2 = 0.0;
        for (const auto& cell : tess.cells) {
            const int cid = cell.repeater_id;
            if (consumed[cid] || reserved[cid])
                continue;
            if (respect_quota && quota[region_of[cid]] <= 0)
                continue;
            if (!reuse_safe(cid, slot_tone, reuse_min))
                continue;
            const double dx = cell.center.x - target.x;
            const double dy = cell.center.y - target.y;
            const double d2 = dx * dx + dy * dy;
            if (best < 0 || d2 < best_d2)
                best = cid, best_d2 = d2;
        }
        return best;
    }

    // Claim one cell per requested template offset for the region,
    // pulling in margin cells when the slot is off the board. Donated
    // cells take over the tone of the slot they fill. Returns
    // offset -> cell id, or nullopt when completion fails (rolled back).
    std::optional<std::unordered_map<HexCoord, int, HexCoordHash>>
    claim_region(int ri, const std::vector<HexCoord>& wanted_offsets, double reuse_min) {
        const Region& region = regions[ri];
        std::unordered_map<HexCoord, int, HexCoordHash> members;
        for (int cid : region.cells) {
            const HexCoord off = tess.cells[cid].coord - region.center;
            members.emplace(off, cid);
        }
        std::unordered_map<HexCoord, int, HexCoordHash> claimed;
        for (const auto& off : wanted_offsets) {
            auto it = members.find(off);
            if (it != members.end()) {
                claimed.emplace(off, it->second);
                consumed[it->second] = true; // not donatable to other slots
            }
        }
        std::vector<std::pair<int, int>> donations; // cell, old tone
        auto roll_back = [&] {
            for (auto [cid, old] : donations) {
                tone[cid] = old;
                consumed[cid] = false;
                ++quota[region_of[cid]];
            }
            for (auto& [off, cid] : claimed)
                consumed[cid] = false;
        };
        for (const auto& off : wanted_offsets) {
            if (claimed.count(off))
                continue;
            const Point target = hex_center(region.center + off, tess.r);
            const int slot_tone = tmpl.tone.at(off);
            int donor = find_donor(target, slot_tone, reuse_min, true);
            if (donor < 0)
                donor = find_donor(target, slot_tone, reuse_min, false);
            if (donor < 0) {
                roll_back();
                return std::nullopt;
            }
            donations.push_back({donor, tone[donor]});
            tone[donor] = slot_tone;
            consumed[donor] = true;
            --quota[region_of[donor]];
            claimed.emplace(off, donor);
        }
        return claimed;
    }
};

void build_group_structure(Plan& plan) {
    const int n = static_cast<int>(plan.tess.cells.size());
    if (plan.config.pl_catalog_size < kBigSize)
        throw InfeasibleError("tones", "group mode needs the full 54-tone catalog, got " +
                                           std::to_string(plan.config.pl_catalog_size));
    GroupBuilder b(plan.tess);
    const GroupLayout target = build_groups(n);
    const double reuse_min = plan.config.reuse_min_miles;
    const int num_regions = static_cast<int>(b.regions.size());

    std::vector<HexCoord> big_offsets;
    for (const auto& o : b.tmpl.offsets)
        if (!b.tmpl.is_small.at(o))
            big_offsets.push_back(o);

    // Designate candidate super-hexagons up front so donor lookups only
    // ever consume margin cells. A failed candidate is released to the
    // margin and the next region takes its slot.
    const int wanted = target.big_composites + target.standalone_big;
    int designated_end = std::min(wanted, num_regions);
    for (int ri = 0; ri < designated_end; ++ri)
        b.set_reserved(ri, true);

    struct Claimed {
        int region = -1;
        bool composite = false; // Big54 + Small7 sibling pair
        std::unordered_map<HexCoord, int, HexCoordHash> cells;
    };
    std::vector<Claimed> built;
    int composites_left = target.big_composites;
    int standalone_left = target.standalone_big;
    int cursor = 0;
    while ((composites_left > 0 || standalone_left > 0) && cursor < num_regions) {
        const int ri = cursor++;
        if (ri >= designated_end) {
            b.set_reserved(ri, true);
            designated_end = ri + 1;
        }
        const bool want_composite = composites_left > 0;
        b.set_reserved(ri, false); // own cells are claimable, not donor-locked
        auto claimed = b.claim_region(ri, want_composite ? b.tmpl.offsets : big_offsets,
                                      reuse_min);
        if (!claimed) {
            plan.notes.push_back("group layout: super-hexagon at ring " +
                                 std::to_string(ring(b.regions[ri].center)) +
                                 " could not be completed; its cells join the margin");
            continue;
        }
        built.push_back({ri, want_composite, std::move(*claimed)});
        if (want_composite)
            --composites_left;
        else
            --standalone_left;
    }

    int next_gc = 1;
    auto make_group = [&](GroupKind kind, std::vector<int> cluster_ids, bool padded) {
        Group g;
        g.gc = next_gc++;
        g.kind = kind;
        g.cluster_ids = std::move(cluster_ids);
        g.padded = padded;
        for (int cid : g.cluster_ids)
            plan.clusters[cid].gc = g.gc;
        plan.groups.push_back(std::move(g));
    };

    for (const auto& c : built) {
        std::vector<int> big_ids, small_ids;
        for (const auto& off : (c.composite ? b.tmpl.offsets : big_offsets)) {
            const int cid = c.cells.at(off);
            if (c.composite && b.tmpl.is_small.at(off))
                small_ids.push_back(cid);
            else
                big_ids.push_back(cid);
        }
        make_group(GroupKind::Big54, big_ids, false);
        if (c.composite)
            make_group(GroupKind::Small7, small_ids, false);
    }

    // Remaining cells become margin groups of up to 7 distinct tones.
    // Regions are visited centre-out so each margin keeps its own patch.
    std::vector<int> leftovers;
    {
        std::vector<int> order(b.regions.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int c) {
            const int ra = ring(b.regions[a].center), rc = ring(b.regions[c].center);
            if (ra != rc)
                return ra < rc;
            const double aa = polar_angle(hex_center(b.regions[a].center, 1.0));
            const double ac = polar_angle(hex_center(b.regions[c].center, 1.0));
            return aa < ac;
        });
        for (int ri : order)
            for (int cid : b.regions[ri].cells)
                if (!b.consumed[cid])
                    leftovers.push_back(cid);
    }
    std::vector<std::vector<int>> margin_groups;
    for (int cid : leftovers) {
        bool placed = false;
        for (auto& g : margin_groups) {
            if (static_cast<int>(g.size()) >= kSmallSize)
                continue;
            bool dup = false;
            for (int other : g)
                if (b.tone[other] == b.tone[cid])
                    dup = true;
            if (!dup) {
                g.push_back(cid);
                placed = true;
                break;
            }
        }
        if (!placed)
            margin_groups.push_back({cid});
    }

    GroupLayout achieved;
    for (const auto& c : built)
        (c.composite ? achieved.big_composites : achieved.standalone_big) += 1;
    for (const auto& g : margin_groups) {
        const bool padded = static_cast<int>(g.size()) < kSmallSize;
        if (padded) {
            achieved.padded_clusters += static_cast<int>(g.size());
            plan.notes.push_back("group layout: margin group of " +
                                 std::to_string(g.size()) + " clusters (below 7)");
        } else {
            ++achieved.small_groups;
        }
        make_group(GroupKind::Small7, g, padded);
    }

    for (int cid = 0; cid < n; ++cid)
        plan.clusters[cid].pl_tone = b.tone[cid];
    plan.layout = achieved;
}

} // namespace

void assign_pl_tones(Plan& plan) {
    if (plan.mode == PlanMode::Cell) {
        const int n = static_cast<int>(plan.clusters.size());
        if (n > plan.config.pl_catalog_size)
            throw InfeasibleError(
                "tones", std::to_string(n) + " clusters need " + std::to_string(n) +
                             " PL tones but the catalog holds " +
                             std::to_string(plan.config.pl_catalog_size) +
                             "; switch to group mode");
        for (int i = 0; i < n; ++i)
            plan.clusters[i].pl_tone = i + 1;
    } else {
        build_group_structure(plan);
    }
    const ReuseReport report = check_reuse_distance(plan);
    if (!report.violations.empty()) {
        std::ostringstream msg;
        msg << report.violations.size() << " same-tone cluster pair(s) closer than "
            << plan.config.reuse_min_miles << " miles:";
        for (std::size_t i = 0; i < report.violations.size() && i < 8; ++i)
            msg << " (" << report.violations[i].cluster_a << ","
                << report.violations[i].cluster_b << ")@"
                << report.violations[i].distance_miles;
        throw InfeasibleError("reuse", msg.str());
    }
}

ReuseReport check_reuse_distance(const Plan& plan) {
    ReuseReport report;
    std::unordered_map<int, std::vector<int>> by_tone;
    for (const auto& c : plan.clusters)
        by_tone[c.pl_tone].push_back(c.id);
    for (auto& [tone, ids] : by_tone) {
        (void)tone;
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                const double d = distance(plan.cluster_centroid(ids[i]),
                                          plan.cluster_centroid(ids[j]));
                if (!report.min_distance_miles || d < *report.min_distance_miles) {
                    report.min_distance_miles = d;
                    report.min_pair = {ids[i], ids[j]};
                }
                if (d < plan.config.reuse_min_miles)
                    report.violations.push_back({ids[i], ids[j], d});
            }
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const ReusePair& a, const ReusePair& b) {
                  if (a.distance_miles != b.distance_miles)
                      return a.distance_miles < b.distance_miles;
                  if (a.cluster_a != b.cluster_a)
                      return a.cluster_a < b.cluster_a;
                  return a.cluster_b < b.cluster_b;
              });
    return report;
}

std::vector<UserId> assign_users(const Plan& plan, int user_count) {
    if (user_count < 0)
        throw std::invalid_argument("assign_users: negative user count");
    const int num_clusters = static_cast<int>(plan.clusters.size());
    const int per_cluster = plan.channels.count();
    const long long capacity = static_cast<long long>(num_clusters) * per_cluster;
    if (user_count > capacity)
        throw InfeasibleError("channels",
                              "capacity " + std::to_string(capacity) + " users (" +
                                  std::to_string(num_clusters) + " clusters x " +
                                  std::to_string(per_cluster) + " channels) short by " +
                                  std::to_string(user_count - capacity) + " users");
    std::vector<UserId> users;
    users.reserve(user_count);
    for (int i = 0; i < user_count; ++i) {
        const int cid = i % num_clusters;
        const int chan = i / num_clusters;
        const Cluster& cluster = plan.clusters[cid];
        users.push_back({cluster.gc, cluster.pl_tone, plan.channels.channels[chan], cid});
    }
    return users;
}

int Plan::cluster_of_cell(int cell_id) const {
    return cell_to_cluster.at(cell_id);
}

int Plan::tone_of_cell(int cell_id) const {
    return clusters[cell_to_cluster.at(cell_id)].pl_tone;
}

Point Plan::cluster_centroid(int cluster_id) const {
    const Cluster& c = clusters.at(cluster_id);
    Point p;
    for (int cell : c.cell_ids) {
        p.x += tess.cells[cell].center.x;
        p.y += tess.cells[cell].center.y;
    }
    p.x /= static_cast<double>(c.cell_ids.size());
    p.y /= static_cast<double>(c.cell_ids.size());
    return p;
}

int Plan::channel_index(double channel_mhz) const {
    for (int i = 0; i < channels.count(); ++i)
        if (std::abs(channels.channels[i] - channel_mhz) < 1e-4)
            return i;
    return -1;
}

int Plan::home_repeater(const UserId& u) const {
    const Cluster& c = clusters.at(u.cluster_id);
    const int chan = channel_index(u.channel_mhz);
    const int idx = chan < 0 ? 0 : chan % static_cast<int>(c.cell_ids.size());
    return c.cell_ids[idx];
}

void Plan::rebuild_cell_index() {
    cell_to_cluster.assign(tess.cells.size(), -1);
    for (const auto& c : clusters)
        for (int cell : c.cell_ids)
            cell_to_cluster[cell] = c.id;
}

Plan build_plan(const PlanConfig& config) {
    if (config.users < 0)
        throw std::invalid_argument("plan: negative user count");
    if (config.area_radius_miles <= 0.0)
        throw std::invalid_argument("plan: service radius must be positive");
    if (config.antenna_height_m <= 0.0)
        throw std::invalid_argument("plan: antenna height must be positive");
    if (config.pl_catalog_size < 1)
        throw std::invalid_argument("plan: PL catalog must hold at least one tone");
    if (config.reuse_min_miles < 0.0)
        throw std::invalid_argument("plan: reuse distance cannot be negative");

    Plan plan;
    plan.config = config;
    plan.channels = build_channel_table(config.f_lo, config.f_hi, config.delta_f);

    const double physics_bound =
        std::min(los_radius_miles(config.antenna_height_m),
                 empirical_radius_miles(config.antenna_height_m * kFeetPerMeter));
    if (config.coverage_cap_miles && *config.coverage_cap_miles > physics_bound + 1e-9) {
        std::ostringstream msg;
        msg << "coverage cap " << *config.coverage_cap_miles
            << " mi exceeds the line-of-sight bound " << physics_bound << " mi at H = "
            << config.antenna_height_m << " m";
        throw InfeasibleError("coverage", msg.str());
    }
    const double r =
        effective_radius_miles({config.antenna_height_m, config.coverage_cap_miles});
    plan.tess = tessellate(config.area_radius_miles, r);
    const double reach = covered_inradius(plan.tess);
    if (reach < config.area_radius_miles - 1e-9) {
        char note[160];
        std::snprintf(note, sizeof(note),
                      "coverage: the ring recursion reaches %.2f of the %.2f mile "
                      "service radius; rim notches past that are uncovered",
                      reach, config.area_radius_miles);
        plan.notes.push_back(note);
    }
    const int num_cells = static_cast<int>(plan.tess.cells.size());
    const int per_cluster = plan.channels.count();
    if (per_cluster < 1)
        throw InfeasibleError("channels", "band and delta_f yield zero carriers");

    switch (config.mode) {
    case PlanConfig::Mode::Cell:
        plan.mode = PlanMode::Cell;
        break;
    case PlanConfig::Mode::Group:
        plan.mode = PlanMode::Group;
        break;
    case PlanConfig::Mode::Auto: {
        const int threshold = config.auto_threshold_users.value_or(
            config.pl_catalog_size * per_cluster);
        plan.mode = config.users <= threshold ? PlanMode::Cell : PlanMode::Group;
        break;
    }
    }

    if (plan.mode == PlanMode::Cell) {
        const int needed_by_users = clusters_required(config.users, per_cluster);
        const int needed_by_cells = (num_cells + 2) / 3;
        const int num_clusters = std::max({needed_by_users, needed_by_cells, 1});
        if (num_clusters > num_cells)
            throw InfeasibleError("channels",
                                  std::to_string(config.users) + " users need " +
                                      std::to_string(needed_by_users) + " clusters of " +
                                      std::to_string(per_cluster) + " channels but only " +
                                      std::to_string(num_cells) + " cells exist");
        plan.partition = solve_partition(num_cells, num_clusters);
        auto assignment = partition_cells(plan.tess, num_clusters);
        plan.clusters.reserve(assignment.size());
        for (std::size_t i = 0; i < assignment.size(); ++i)
            plan.clusters.push_back({static_cast<int>(i), std::move(assignment[i]), 0, 0});
    } else {
        const int needed_by_users = clusters_required(config.users, per_cluster);
        if (needed_by_users > num_cells)
            throw InfeasibleError("channels",
                                  std::to_string(config.users) + " users need " +
                                      std::to_string(needed_by_users) +
                                      " single-cell clusters but only " +
                                      std::to_string(num_cells) + " exist");
        plan.clusters.reserve(num_cells);
        for (int i = 0; i < num_cells; ++i)
            plan.clusters.push_back({i, {i}, 0, 0});
    }

    plan.rebuild_cell_index();
    assign_pl_tones(plan);
    plan.users = assign_users(plan, config.users);
    return plan;
}

} // namespace vhfplan
