#include "vhfplan/hexgrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vhfplan {

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

int ring(HexCoord c) {
    return (std::abs(c.q) + std::abs(c.s) + std::abs(c.q + c.s)) / 2;
}

int hex_distance(HexCoord a, HexCoord b) {
    return ring(a - b);
}

std::array<HexCoord, 6> neighbors(HexCoord c) {
    return {HexCoord{c.q + 1, c.s},     HexCoord{c.q - 1, c.s},
            HexCoord{c.q, c.s + 1},     HexCoord{c.q, c.s - 1},
            HexCoord{c.q + 1, c.s - 1}, HexCoord{c.q - 1, c.s + 1}};
}

Point hex_center(HexCoord c, double r) {
    if (r <= 0.0)
        throw std::invalid_argument("hex_center: cell radius must be positive");
    const double sqrt3 = std::sqrt(3.0);
    return {sqrt3 * r * (c.q + c.s / 2.0), 1.5 * r * c.s};
}

int Tessellation::index_of(HexCoord c) const {
    auto it = index.find(c);
    return it == index.end() ? -1 : it->second;
}

int rings_needed(double R, double r) {
    if (R <= 0.0 || r <= 0.0)
        throw std::invalid_argument("rings_needed: R and r must be positive");
    const double ratio2 = (R / r) * (R / r);
    int n = static_cast<int>(std::ceil(std::sqrt(std::max(0.0, (ratio2 - 1.0) / 3.0))));
    auto covers = [&](int k) { return r * std::sqrt(3.0 * k * k + 1.0) >= R; };
    while (n > 0 && covers(n - 1))
        --n;
    while (!covers(n))
        ++n;
    return n;
}

std::vector<HexCoord> spiral_coords(int rings) {
    std::vector<HexCoord> out;
    out.reserve(1 + 3 * rings * (rings + 1));
    out.push_back({0, 0});
    static const HexCoord dirs[6] = {{-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}, {0, 1}};
    for (int k = 1; k <= rings; ++k) {
        HexCoord c{k, 0};
        for (const auto& d : dirs) {
            for (int i = 0; i < k; ++i) {
                out.push_back(c);
                c = c + d;
            }
        }
    }
    return out;
}

Tessellation tessellate(double R, double r) {
    Tessellation t;
    t.R = R;
    t.r = r;
    t.n_L = rings_needed(R, r);
    const auto coords = spiral_coords(t.n_L);
    t.cells.reserve(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        t.cells.push_back({coords[i], hex_center(coords[i], r), r, static_cast<int>(i)});
        t.index.emplace(coords[i], static_cast<int>(i));
    }
    return t;
}

double covered_inradius(const Tessellation& tess) {
    // The union boundary is made of hexagon edges whose neighbour is off
    // the board. Edge k of a pointy-top hexagon faces the neighbour at
    // angle 60k and runs between the vertices at 60k -/+ 30 degrees.
    static const HexCoord by_angle[6] = {{1, 0},  {0, 1},  {-1, 1},
                                         {-1, 0}, {0, -1}, {1, -1}};
    const double pi = std::acos(-1.0);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cell : tess.cells) {
        if (ring(cell.coord) < tess.n_L)
            continue; // only rim cells expose boundary edges
        for (int k = 0; k < 6; ++k) {
            if (tess.index_of(cell.coord + by_angle[k]) >= 0)
                continue; // shared edge, interior
            const double a0 = (60.0 * k - 30.0) * pi / 180.0;
            const double a1 = (60.0 * k + 30.0) * pi / 180.0;
            const Point v0{cell.center.x + tess.r * std::cos(a0),
                           cell.center.y + tess.r * std::sin(a0)};
            const Point v1{cell.center.x + tess.r * std::cos(a1),
                           cell.center.y + tess.r * std::sin(a1)};
            const double dx = v1.x - v0.x, dy = v1.y - v0.y;
            double t = -(v0.x * dx + v0.y * dy) / (dx * dx + dy * dy);
            t = std::clamp(t, 0.0, 1.0);
            best = std::min(best, std::hypot(v0.x + t * dx, v0.y + t * dy));
        }
    }
    return best;
}

} // namespace vhfplan
