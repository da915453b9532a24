#include "domino/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "domino/io.hpp"

namespace domino {

namespace {

struct Box {
    int minx = 0, miny = 0, maxx = 0, maxy = 0;
};

Box bounding_box(const LatticeDomain& d) {
    Box b{d.squares()[0].x, d.squares()[0].y, d.squares()[0].x + 1, d.squares()[0].y + 1};
    for (Vec2i s : d.squares()) {
        b.minx = std::min(b.minx, s.x);
        b.miny = std::min(b.miny, s.y);
        b.maxx = std::max(b.maxx, s.x + 1);
        b.maxy = std::max(b.maxy, s.y + 1);
    }
    return b;
}

std::string svg_open(double w, double h) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    return os.str();
}

/// Blue-to-red five-stop color map on [0,1].
std::string heat_color(double t) {
    t = std::min(std::max(t, 0.0), 1.0);
    const double stops[5][3] = {
        {0.19, 0.21, 0.58}, {0.13, 0.57, 0.55}, {0.99, 0.91, 0.14}, {0.95, 0.56, 0.16},
        {0.74, 0.09, 0.24}};
    double x = t * 4;
    int i = std::min(int(x), 3);
    double f = x - i;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  int(255 * (stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                  int(255 * (stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                  int(255 * (stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
    return buf;
}

}  // namespace

std::string render_tiling_svg(const LatticeDomain& d, const Tiling& t, double cell) {
    Box b = bounding_box(d);
    double w = (b.maxx - b.minx) * cell, h = (b.maxy - b.miny) * cell;
    std::ostringstream os;
    os << svg_open(w, h);
    // four domino types: orientation x which end holds the black square
    const char* colors[4] = {"#d64545", "#edbb3f", "#3f78ed", "#45b05c"};
    for (auto& [a, c] : t.dominoes(d)) {
        bool horizontal = a.y == c.y;
        Vec2i black = is_black(a) ? a : c;
        int type = horizontal ? (black == a ? 0 : 1) : (black == a ? 2 : 3);
        double x = (std::min(a.x, c.x) - b.minx) * cell;
        double y = (b.maxy - std::max(a.y, c.y) - 1) * cell;
        double ww = horizontal ? 2 * cell : cell;
        double hh = horizontal ? cell : 2 * cell;
        os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << ww << "\" height=\"" << hh
           << "\" fill=\"" << colors[type] << "\" stroke=\"#222\" stroke-width=\"0.5\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_field_svg(const EmpiricalField& field, double cell) {
    const LatticeDomain& d = *field.domain;
    Box b = bounding_box(d);
    double lo = 1e100, hi = -1e100;
    for (int v = 0; v < d.num_vertices(); ++v) {
        lo = std::min(lo, field.mean(v));
        hi = std::max(hi, field.mean(v));
    }
    if (hi <= lo) hi = lo + 1;
    double w = (b.maxx - b.minx + 1) * cell, h = (b.maxy - b.miny + 1) * cell;
    std::ostringstream os;
    os << svg_open(w, h);
    for (int v = 0; v < d.num_vertices(); ++v) {
        Vec2i p = d.vertices()[size_t(v)];
        double x = (p.x - b.minx) * cell;
        double y = (b.maxy - p.y) * cell;
        os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\""
           << cell << "\" fill=\"" << heat_color((field.mean(v) - lo) / (hi - lo)) << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_solution_svg(const Mesh& mesh, const SolveReport& report, double scale) {
    double minx = 1e100, miny = 1e100, maxx = -1e100, maxy = -1e100;
    for (auto& p : mesh.pos) {
        minx = std::min(minx, p[0]);
        maxx = std::max(maxx, p[0]);
        miny = std::min(miny, p[1]);
        maxy = std::max(maxy, p[1]);
    }
    double lo = 1e100, hi = -1e100;
    for (double v : report.h_star.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) hi = lo + 1;
    std::ostringstream os;
    os << svg_open((maxx - minx) * scale, (maxy - miny) * scale);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& T = mesh.tris[size_t(t)];
        double mean = 0;
        os << "<polygon points=\"";
        for (int k = 0; k < 3; ++k) {
            const auto& p = mesh.pos[size_t(T[size_t(k)])];
            os << (p[0] - minx) * scale << "," << (maxy - p[1]) * scale << " ";
            mean += report.h_star.values[size_t(T[size_t(k)])] / 3;
        }
        std::string fill =
            report.frozen_mask[size_t(t)] ? std::string("#bbbbbb") : heat_color((mean - lo) / (hi - lo));
        os << "\" fill=\"" << fill << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_empty_svg() { return svg_open(64, 64) + "</svg>\n"; }

}  // namespace domino
