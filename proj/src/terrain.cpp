#include "vhfplan/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vhfplan {

namespace {

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Point q{a.x + t * dx, a.y + t * dy};
    return distance(p, q);
}

bool segment_hits_disk(const Point& a, const Point& b, const Obstacle& o) {
    return point_segment_distance(o.center, a, b) <= o.radius_miles;
}

// Pointy-top hexagon corners, counter-clockwise from -30 degrees.
std::array<Point, 6> hexagon_corners(const Point& center, double r) {
    std::array<Point, 6> out;
    for (int k = 0; k < 6; ++k) {
        const double ang = (60.0 * k - 30.0) * std::acos(-1.0) / 180.0;
        out[k] = {center.x + r * std::cos(ang), center.y + r * std::sin(ang)};
    }
    return out;
}

void check_obstacle(const Obstacle& o) {
    if (o.radius_miles <= 0.0)
        throw std::invalid_argument("obstacle: radius must be positive");
    if (o.height_m <= 0.0)
        throw std::invalid_argument("obstacle: height must be positive");
}

std::vector<int> covered_cells(const Plan& plan, const Obstacle& o) {
    std::vector<int> out;
    for (const auto& cell : plan.tess.cells)
        if (distance(cell.center, o.center) <= o.radius_miles)
            out.push_back(cell.repeater_id);
    return out;
}

// Point on the hexagon boundary outside the disk, nearest to the cell
// center. Falls back to the corner farthest from the obstacle when the
// whole boundary is covered.
std::pair<Point, bool> boundary_escape_point(const Cell& cell, const Obstacle& o) {
    const auto corners = hexagon_corners(cell.center, cell.r);
    bool found = false;
    Point best{};
    double best_d = 0.0;

    auto consider = [&](const Point& p) {
        if (distance(p, o.center) < o.radius_miles)
            return;
        const double d = distance(p, cell.center);
        if (!found || d < best_d - 1e-12) {
            best = p;
            best_d = d;
            found = true;
        }
    };

    for (int e = 0; e < 6; ++e) {
        const Point& a = corners[e];
        const Point& b = corners[(e + 1) % 6];
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len2 = dx * dx + dy * dy;
        // closest approach of the edge to the cell center (its midpoint)
        double tc = ((cell.center.x - a.x) * dx + (cell.center.y - a.y) * dy) / len2;
        tc = std::clamp(tc, 0.0, 1.0);
        consider({a.x + tc * dx, a.y + tc * dy});
        consider(a);
        consider(b);
        // where the edge crosses the disk rim
        const double bx = a.x - o.center.x, by = a.y - o.center.y;
        const double qb = 2.0 * (bx * dx + by * dy);
        const double qc = bx * bx + by * by - o.radius_miles * o.radius_miles;
        const double disc = qb * qb - 4.0 * len2 * qc;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            for (double t : {(-qb - sq) / (2.0 * len2), (-qb + sq) / (2.0 * len2)})
                if (t >= 0.0 && t <= 1.0)
                    consider({a.x + t * dx, a.y + t * dy});
        }
    }
    if (found)
        return {best, true};

    // fully shadowed: keep the corner farthest from the summit
    Point far = corners[0];
    double far_d = distance(corners[0], o.center);
    for (int k = 1; k < 6; ++k) {
        const double d = distance(corners[k], o.center);
        if (d > far_d + 1e-12) {
            far = corners[k];
            far_d = d;
        }
    }
    return {far, false};
}

} // namespace

const char* to_string(CaseLabel c) {
    switch (c) {
    case CaseLabel::EmergencySmall:
        return "Emergency-Small";
    case CaseLabel::EmergencyLarge:
        return "Emergency-Large";
    case CaseLabel::MobileSmall:
        return "Mobile-Small";
    case CaseLabel::MobileLarge:
        return "Mobile-Large";
    case CaseLabel::NoEffect:
        return "NoEffect";
    }
    return "?";
}

const char* to_string(ObstacleClass c) {
    switch (c) {
    case ObstacleClass::Small:
        return "Small";
    case ObstacleClass::Large:
        return "Large";
    case ObstacleClass::NoEffect:
        return "NoEffect";
    }
    return "?";
}

std::vector<std::pair<int, int>> blocked_links(const Plan& plan, const Obstacle& o) {
    check_obstacle(o);
    std::vector<std::pair<int, int>> out;
    for (const auto& cell : plan.tess.cells) {
        for (const auto& nc : neighbors(cell.coord)) {
            const int j = plan.tess.index_of(nc);
            if (j < 0 || j <= cell.repeater_id)
                continue;
            if (segment_hits_disk(cell.center, plan.tess.cells[j].center, o))
                out.push_back({cell.repeater_id, j});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ObstacleClass classify(const Plan& plan, const Obstacle& o) {
    check_obstacle(o);
    if (o.height_m <= plan.config.antenna_height_m)
        return ObstacleClass::NoEffect; // antennas see over it
    if (!covered_cells(plan, o).empty())
        return ObstacleClass::Large;
    if (!blocked_links(plan, o).empty())
        return ObstacleClass::Small;
    return ObstacleClass::NoEffect;
}

namespace {

AugmentationPlan augment_large(const Plan& plan, const Obstacle& o, AugmentMode mode,
                               double inner_radius_factor) {
    AugmentationPlan a;
    a.affected_cells = covered_cells(plan, o);
    if (mode == AugmentMode::Emergency) {
        a.case_label = CaseLabel::EmergencyLarge;
        std::set<int> displaced;
        for (int cid : a.affected_cells)
            displaced.insert(plan.cluster_of_cell(cid));
        std::ostringstream share;
        share << "channels shared from displaced clusters:";
        for (int c : displaced)
            share << ' ' << c;
        const double inner_r = inner_radius_factor * plan.tess.r;
        const Tessellation inner = tessellate(o.radius_miles, inner_r);
        for (const auto& cell : inner.cells)
            a.added_repeaters.push_back({{cell.center.x + o.center.x,
                                          cell.center.y + o.center.y},
                                         inner_r,
                                         share.str()});
    } else {
        a.case_label = CaseLabel::MobileLarge;
        for (int cid : a.affected_cells) {
            const Cell& cell = plan.tess.cells[cid];
            const auto [pos, clear] = boundary_escape_point(cell, o);
            std::ostringstream note;
            note << "replaces repeater " << cid << "; inherits its carriers and PL tone "
                 << plan.tone_of_cell(cid);
            if (!clear)
                note << " (cell boundary fully shadowed; farthest corner used)";
            a.added_repeaters.push_back({pos, cell.r, note.str()});
        }
    }
    return a;
}

} // namespace

AugmentationPlan augment(const Plan& plan, const Obstacle& o, AugmentMode mode,
                         double inner_radius_factor) {
    check_obstacle(o);
    if (inner_radius_factor <= 0.0)
        throw std::invalid_argument("augment: inner radius factor must be positive");
    const ObstacleClass cls = classify(plan, o);
    AugmentationPlan a;
    if (cls == ObstacleClass::NoEffect)
        return a;

    if (cls == ObstacleClass::Large)
        return augment_large(plan, o, mode, inner_radius_factor);

    // Small obstacle
    const auto links = blocked_links(plan, o);
    std::set<int> touched;
    for (auto [i, j] : links) {
        touched.insert(i);
        touched.insert(j);
    }
    a.affected_cells.assign(touched.begin(), touched.end());
    if (mode == AugmentMode::Mobile) {
        a.case_label = CaseLabel::MobileSmall; // drivers go around; links reroute
        return a;
    }

    // Emergency: one summit antenna, provided R' reaches two repeaters
    const double reach = std::sqrt(3.0) * plan.tess.r + 1e-9;
    int reachable = 0;
    for (const auto& cell : plan.tess.cells)
        if (distance(cell.center, o.center) <= reach)
            ++reachable;
    if (reachable >= 2) {
        a.case_label = CaseLabel::EmergencySmall;
        a.added_repeaters.push_back(
            {o.center, plan.tess.r, "summit relay; no channel restrictions"});
        return a;
    }
    a = augment_large(plan, o, mode, inner_radius_factor);
    a.warning = "summit site reaches fewer than two repeaters; escalated to Large handling";
    return a;
}

} // namespace vhfplan
