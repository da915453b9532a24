#include "domino/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace domino {

json domain_to_json(const LatticeDomain& d) {
    json j;
    j["squares"] = json::array();
    for (Vec2i s : d.squares()) j["squares"].push_back({s.x, s.y});
    j["cuts"] = json::array();
    for (const auto& cut : d.cut_system().cuts) {
        json edges = json::array();
        for (size_t i = 0; i + 1 < cut.size(); ++i)
            edges.push_back({{cut[i].x, cut[i].y}, {cut[i + 1].x, cut[i + 1].y}});
        j["cuts"].push_back(edges);
    }
    return j;
}

DomainPtr domain_from_json(const json& j) {
    require(j.contains("squares"), Errc::BadInput, "domain file needs a squares list");
    std::vector<Vec2i> sq;
    for (const auto& e : j.at("squares")) sq.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return build_domain(std::move(sq));
}

json tiling_to_json(const LatticeDomain& d, const Tiling& t) {
    json j = json::array();
    for (auto& [a, b] : t.dominoes(d)) j.push_back({{a.x, a.y}, {b.x, b.y}});
    return j;
}

Tiling tiling_from_json(const LatticeDomain& d, const json& j) {
    std::vector<std::pair<Vec2i, Vec2i>> doms;
    for (const auto& e : j) {
        doms.push_back({{e.at(0).at(0).get<int>(), e.at(0).at(1).get<int>()},
                        {e.at(1).at(0).get<int>(), e.at(1).at(1).get<int>()}});
    }
    return tiling_from_dominoes(d, doms);
}

json height_to_json(const HeightFunction& h) {
    json j;
    j["values"] = json::array();
    for (int v = 0; v < h.domain->num_vertices(); ++v) {
        Vec2i p = h.domain->vertices()[size_t(v)];
        j["values"].push_back({p.x, p.y, h.values[size_t(v)]});
    }
    j["monodromy"] = h.monodromy();
    j["height_change"] = h.height_change;
    return j;
}

std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // normalize negative zero
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string field_csv(const EmpiricalField& field) {
    std::ostringstream os;
    os << "x,y,mean,variance\n";
    for (int v = 0; v < field.domain->num_vertices(); ++v) {
        Vec2i p = field.domain->vertices()[size_t(v)];
        os << p.x << "," << p.y << "," << format_double(field.mean(v)) << ","
           << format_double(field.variance(v)) << "\n";
    }
    return os.str();
}

std::string r_histogram_csv(const EmpiricalField& field) {
    std::ostringstream os;
    int g = field.domain->genus();
    for (int i = 1; i <= g; ++i) os << "R" << i << ",";
    os << "count\n";
    for (auto& [key, cnt] : field.r_histogram) {
        for (int x : key) os << x << ",";
        os << cnt << "\n";
    }
    return os.str();
}

std::string census_csv(const LatticeDomain& d, const TilingCensus& c) {
    std::ostringstream os;
    for (int i = 1; i <= d.genus(); ++i) os << "R" << i << ",";
    os << "count\n";
    for (auto& [key, cnt] : c.by_height_change) {
        for (int x : key) os << x << ",";
        os << cnt << "\n";
    }
    return os.str();
}

std::string tension_csv(int grid_n) {
    std::ostringstream os;
    os << "s,t,p_a,p_b,p_c,p_d,sigma\n";
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            double s = -2.0 + 4.0 * i / (grid_n - 1);
            double t = -2.0 + 4.0 * j / (grid_n - 1);
            if (!in_newton_polygon({s, t})) continue;
            auto st = solve_slope_system({s, t});
            os << format_double(s) << "," << format_double(t);
            for (double p : st.p) os << "," << format_double(p);
            os << "," << format_double(st.sigma) << "\n";
        }
    }
    return os.str();
}

std::string solution_csv(const Mesh& mesh, const std::vector<double>& values) {
    std::ostringstream os;
    os << "x,y,value\n";
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        os << format_double(mesh.pos[size_t(i)][0]) << "," << format_double(mesh.pos[size_t(i)][1])
           << "," << format_double(values[size_t(i)]) << "\n";
    }
    return os.str();
}

std::string frozen_csv(const Mesh& mesh, const std::vector<char>& mask) {
    std::ostringstream os;
    os << "cx,cy,frozen\n";
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& T = mesh.tris[size_t(t)];
        double cx = 0, cy = 0;
        for (int k = 0; k < 3; ++k) {
            cx += mesh.pos[size_t(T[size_t(k)])][0] / 3;
            cy += mesh.pos[size_t(T[size_t(k)])][1] / 3;
        }
        os << format_double(cx) << "," << format_double(cy) << "," << int(mask[size_t(t)]) << "\n";
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    require(f.good(), Errc::BadInput, "cannot open " + path + " for writing");
    f << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), Errc::BadInput, "cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace domino
