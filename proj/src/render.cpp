#include "vhfplan/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace vhfplan {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

// Stable tone palette: golden-angle hue walk keeps neighbouring tone
// indices visually distinct.
std::string tone_color(int tone, int catalog) {
    if (tone <= 0)
        return "#cccccc";
    const int hue = static_cast<int>(std::fmod(tone * 137.508, 360.0));
    const int light = 55 + 18 * (tone % 2);
    (void)catalog;
    std::ostringstream s;
    s << "hsl(" << hue << ",65%," << light << "%)";
    return s.str();
}

void hexagon_path(std::ostringstream& out, const Point& c, double r) {
    out << "M";
    for (int k = 0; k < 6; ++k) {
        const double ang = (60.0 * k - 30.0) * std::acos(-1.0) / 180.0;
        out << (k == 0 ? "" : "L") << fmt(c.x + r * std::cos(ang)) << ","
            << fmt(-(c.y + r * std::sin(ang)));
    }
    out << "Z";
}

} // namespace

std::string render_svg(const Plan& plan, const std::vector<ObstacleRecord>& augmentations) {
    double extent = plan.config.area_radius_miles + plan.tess.r;
    for (const auto& rec : augmentations)
        extent = std::max(extent, distance(rec.obstacle.center, {0, 0}) +
                                      rec.obstacle.radius_miles);
    const double margin = 0.05 * extent;
    const double half = extent + margin;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(-half) << " "
        << fmt(-half) << " " << fmt(2 * half) << " " << fmt(2 * half)
        << "\" width=\"900\" height=\"900\">\n";
    svg << "<rect x=\"" << fmt(-half) << "\" y=\"" << fmt(-half) << "\" width=\""
        << fmt(2 * half) << "\" height=\"" << fmt(2 * half) << "\" fill=\"#ffffff\"/>\n";

    const double stroke = 0.03 * plan.tess.r;
    svg << "<g stroke=\"#404040\" stroke-width=\"" << fmt(stroke) << "\">\n";
    for (const auto& cell : plan.tess.cells) {
        const int tone = plan.tone_of_cell(cell.repeater_id);
        std::ostringstream path;
        hexagon_path(path, cell.center, cell.r);
        svg << "<path d=\"" << path.str() << "\" fill=\""
            << tone_color(tone, plan.config.pl_catalog_size) << "\" fill-opacity=\"0.6\"/>\n";
    }
    svg << "</g>\n";

    // service circle
    svg << "<circle cx=\"0\" cy=\"0\" r=\"" << fmt(plan.config.area_radius_miles)
        << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << fmt(1.5 * stroke)
        << "\" stroke-dasharray=\"" << fmt(8 * stroke) << "," << fmt(5 * stroke)
        << "\"/>\n";

    svg << "<g fill=\"#000000\">\n";
    for (const auto& cell : plan.tess.cells)
        svg << "<circle cx=\"" << fmt(cell.center.x) << "\" cy=\"" << fmt(-cell.center.y)
            << "\" r=\"" << fmt(0.12 * plan.tess.r) << "\"/>\n";
    svg << "</g>\n";

    for (const auto& rec : augmentations) {
        svg << "<circle cx=\"" << fmt(rec.obstacle.center.x) << "\" cy=\""
            << fmt(-rec.obstacle.center.y) << "\" r=\"" << fmt(rec.obstacle.radius_miles)
            << "\" fill=\"#8a6b4d\" fill-opacity=\"0.55\" stroke=\"#4d3a27\" stroke-width=\""
            << fmt(stroke) << "\"/>\n";
        for (const auto& rep : rec.augmentation.added_repeaters)
            svg << "<circle cx=\"" << fmt(rep.position.x) << "\" cy=\""
                << fmt(-rep.position.y) << "\" r=\"" << fmt(0.16 * plan.tess.r)
                << "\" fill=\"#d0021b\" stroke=\"#7a0110\" stroke-width=\""
                << fmt(0.5 * stroke) << "\"/>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

} // namespace vhfplan
