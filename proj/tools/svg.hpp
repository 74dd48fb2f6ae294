#pragma once

#include "twistor/labels.hpp"
#include "twistor/polygon.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace twistor::svg {

// Static diagrams: lattice polygons with labeled points and boundary cycles
// drawn as labeled rings.

inline void polygon_group(std::ostringstream& out, const LatticePolygon& polygon, double cx,
                          double cy, double scale, const std::string& title) {
    out << "  <g>\n";
    out << "    <text x=\"" << cx << "\" y=\"" << cy - 4.2 * scale
        << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    std::vector<LatticePoint> hull = polygon.hull();
    out << "    <polygon points=\"";
    for (const LatticePoint& p : hull)
        out << cx + scale * static_cast<double>(p.x) << "," << cy - scale * static_cast<double>(p.y)
            << " ";
    out << "\" fill=\"#eef3ff\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
    for (const LatticePoint& p : polygon.points()) {
        double px = cx + scale * static_cast<double>(p.x);
        double py = cy - scale * static_cast<double>(p.y);
        out << "    <circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"3\" fill=\"#222\"/>\n";
        if (p.label >= 0)
            out << "    <text x=\"" << px + 5 << "\" y=\"" << py - 5 << "\" font-size=\"11\">x"
                << p.label << "</text>\n";
    }
    out << "  </g>\n";
}

inline void cycle_group(std::ostringstream& out,
                        const std::vector<std::pair<CurveLabel, long long>>& cycle, double cx,
                        double cy, double radius, const std::string& title) {
    out << "  <g>\n";
    out << "    <text x=\"" << cx << "\" y=\"" << cy - radius - 16
        << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    const size_t n = cycle.size();
    const double tau = 6.283185307179586;
    std::vector<std::pair<double, double>> at(n);
    for (size_t i = 0; i < n; ++i) {
        double angle = tau * static_cast<double>(i) / static_cast<double>(n);
        at[i] = {cx + radius * std::cos(angle), cy - radius * std::sin(angle)};
    }
    for (size_t i = 0; i < n; ++i) {
        auto [x1, y1] = at[i];
        auto [x2, y2] = at[(i + 1) % n];
        out << "    <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
            << "\" stroke=\"#888\"/>\n";
    }
    for (size_t i = 0; i < n; ++i) {
        auto [x, y] = at[i];
        out << "    <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"#c33\"/>\n";
        double lx = cx + (x - cx) * 1.22, ly = cy + (y - cy) * 1.22;
        out << "    <text x=\"" << lx << "\" y=\"" << ly
            << "\" text-anchor=\"middle\" font-size=\"10\">" << cycle[i].first.str() << ":"
            << cycle[i].second << "</text>\n";
    }
    out << "  </g>\n";
}

inline std::string document(const std::vector<LatticePolygon>& polygons,
                            const std::vector<std::string>& polygon_titles,
                            const std::vector<std::pair<CurveLabel, long long>>& cycle,
                            const std::string& cycle_title) {
    std::ostringstream out;
    double width = 260.0 * static_cast<double>(polygons.size()) + (cycle.empty() ? 0 : 320.0);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"320\" viewBox=\"0 0 " << width << " 320\">\n";
    for (size_t k = 0; k < polygons.size(); ++k)
        polygon_group(out, polygons[k], 130.0 + 260.0 * static_cast<double>(k), 170.0, 34.0,
                      k < polygon_titles.size() ? polygon_titles[k] : "");
    if (!cycle.empty())
        cycle_group(out, cycle, 260.0 * static_cast<double>(polygons.size()) + 160.0, 170.0, 100.0,
                    cycle_title);
    out << "</svg>\n";
    return out.str();
}

}  // namespace twistor::svg
