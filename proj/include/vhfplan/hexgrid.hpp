#pragma once

#include <array>
#include <cstddef>
#include <unordered_map>
#include <vector>

namespace vhfplan {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point& a, const Point& b);

// Axial hex coordinate, pointy-top orientation.
// ring(c) = (|q| + |s| + |q+s|) / 2 is the hop distance from the origin.
struct HexCoord {
    int q = 0;
    int s = 0;

    friend bool operator==(const HexCoord&, const HexCoord&) = default;
    HexCoord operator+(const HexCoord& o) const { return {q + o.q, s + o.s}; }
    HexCoord operator-(const HexCoord& o) const { return {q - o.q, s - o.s}; }
};

struct HexCoordHash {
    std::size_t operator()(const HexCoord& c) const {
        return std::hash<long long>()((static_cast<long long>(c.q) << 32) ^
                                      static_cast<unsigned int>(c.s));
    }
};

int ring(HexCoord c);
int hex_distance(HexCoord a, HexCoord b);
std::array<HexCoord, 6> neighbors(HexCoord c);

// Center of the hexagon at `c` with circumradius r (miles):
// x = sqrt(3)*r*(q + s/2), y = 1.5*r*s. Adjacent centers are exactly
// sqrt(3)*r apart. Throws std::invalid_argument for r <= 0.
Point hex_center(HexCoord c, double r);

struct Cell {
    HexCoord coord;
    Point center;
    double r = 0.0;      // coverage/circumscribed radius, miles
    int repeater_id = 0; // index in the tessellation
};

struct Tessellation {
    std::vector<Cell> cells; // spiral order, index == repeater_id
    double R = 0.0;          // service radius, miles
    double r = 0.0;          // cell radius, miles
    int n_L = 0;             // ring count

    // -1 when the coordinate is not part of the tessellation.
    int index_of(HexCoord c) const;

    std::unordered_map<HexCoord, int, HexCoordHash> index;
};

// Smallest n_L >= 0 with r*sqrt(3*n_L^2 + 1) >= R (equality counts as
// covered). Closed form plus an integer verification pass so exact
// boundary values are not lost to floating point.
int rings_needed(double R, double r);

// All coords with ring <= rings, enumerated ring by ring; within a ring
// the walk starts at (k, 0) and each step moves to a neighbor, so
// consecutive same-ring entries are always adjacent.
std::vector<HexCoord> spiral_coords(int rings);

Tessellation tessellate(double R, double r);

// Radius of the largest origin-centered disk fully inside the union of
// the tessellation's hexagons: the nearest rim notch vertex. This is
// the radius the board actually covers seamlessly; it can be smaller
// than what the ring recursion promises (exact from ring 3 outward
// only in the corner directions).
double covered_inradius(const Tessellation& tess);

} // namespace vhfplan
