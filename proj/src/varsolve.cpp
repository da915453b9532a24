#include "domino/varsolve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace domino {

namespace {

/// Point-in-polygon on the integer grid (boundary counts as inside).
/// Vertices may be doubled (point scaled by k): pass coordinates scaled so
/// that everything stays integral.
bool on_segment(Vec2i a, Vec2i b, Vec2i p) {
    long cross = long(b.x - a.x) * (p.y - a.y) - long(b.y - a.y) * (p.x - a.x);
    if (cross != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool point_in_polygon(const std::vector<Vec2i>& poly, Vec2i p) {
    bool inside = false;
    for (size_t i = 0; i < poly.size(); ++i) {
        Vec2i a = poly[i], b = poly[(i + 1) % poly.size()];
        if (on_segment(a, b, p)) return true;
        if ((a.y > p.y) != (b.y > p.y)) {
            // x coordinate of the edge at height p.y, compared exactly
            long lhs = long(b.x - a.x) * (p.y - a.y);
            long rhs = long(p.x - a.x) * (b.y - a.y);
            bool left = (b.y > a.y) ? (lhs > rhs) : (lhs < rhs);
            if (left) inside = !inside;
        }
    }
    return inside;
}

bool point_on_polygon(const std::vector<Vec2i>& poly, Vec2i p) {
    for (size_t i = 0; i < poly.size(); ++i)
        if (on_segment(poly[i], poly[(i + 1) % poly.size()], p)) return true;
    return false;
}

}  // namespace

Slope Mesh::gradient(int tri, const std::vector<double>& values) const {
    const auto& T = tris[size_t(tri)];
    const auto &A = pos[size_t(T[0])], &B = pos[size_t(T[1])], &C = pos[size_t(T[2])];
    double vA = values[size_t(T[0])], vB = values[size_t(T[1])], vC = values[size_t(T[2])];
    double det = (B[0] - A[0]) * (C[1] - A[1]) - (C[0] - A[0]) * (B[1] - A[1]);
    double gx = ((vB - vA) * (C[1] - A[1]) - (vC - vA) * (B[1] - A[1])) / det;
    double gy = ((vC - vA) * (B[0] - A[0]) - (vB - vA) * (C[0] - A[0])) / det;
    return {gx, gy};
}

Mesh build_mesh(const MeshSpec& spec, double ell) {
    require(!spec.outer.empty(), Errc::MeshFailure, "empty outer polygon");
    require(spec.holes.size() == spec.cuts.size(), Errc::MeshFailure,
            "one cut polyline per hole required");
    for (const auto& h : spec.holes)
        require(h.size() >= 3, Errc::MeshFailure, "degenerate hole polygon");

    Mesh mesh;
    mesh.ell = ell;

    int minx = spec.outer[0].x, maxx = minx, miny = spec.outer[0].y, maxy = miny;
    for (Vec2i v : spec.outer) {
        minx = std::min(minx, v.x);
        maxx = std::max(maxx, v.x);
        miny = std::min(miny, v.y);
        maxy = std::max(maxy, v.y);
    }

    // cut membership: set of grid segments (normalized) per hole
    auto seg_key = [](Vec2i a, Vec2i b) {
        if (b < a) std::swap(a, b);
        return std::array<int, 4>{a.x, a.y, b.x, b.y};
    };
    std::map<std::array<int, 4>, int> cut_of_segment;
    std::map<Vec2i, int> cut_vertex_hole;  // grid point -> hole (1-based)
    for (size_t c = 0; c < spec.cuts.size(); ++c) {
        const auto& path = spec.cuts[c];
        require(path.size() >= 2, Errc::MeshFailure, "cut polyline too short");
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            Vec2i a = path[i], b = path[i + 1];
            require(a.x == b.x || a.y == b.y, Errc::MeshFailure, "cut must follow grid lines");
            int dx = (b.x > a.x) - (b.x < a.x), dy = (b.y > a.y) - (b.y < a.y);
            for (Vec2i p = a; !(p == b); p = {p.x + dx, p.y + dy}) {
                cut_of_segment[seg_key(p, {p.x + dx, p.y + dy})] = int(c) + 1;
                cut_vertex_hole[p] = int(c) + 1;
            }
            cut_vertex_hole[b] = int(c) + 1;
        }
    }

    // triangles: each grid cell splits along the diagonal matching the
    // quadrant of the domain center, so 45-degree boundaries are conforming
    struct Tri {
        std::array<Vec2i, 3> v;  // CCW
    };
    std::vector<Tri> tris;
    auto inside = [&](Vec2i p3 /* point scaled by 3 */) {
        std::vector<Vec2i> poly3(spec.outer.size());
        for (size_t i = 0; i < spec.outer.size(); ++i)
            poly3[i] = {3 * spec.outer[i].x, 3 * spec.outer[i].y};
        if (!point_in_polygon(poly3, p3)) return false;
        for (const auto& h : spec.holes) {
            std::vector<Vec2i> h3(h.size());
            for (size_t i = 0; i < h.size(); ++i) h3[i] = {3 * h[i].x, 3 * h[i].y};
            if (point_in_polygon(h3, p3) && !point_on_polygon(h3, p3)) return false;
        }
        return true;
    };
    for (int x = minx; x < maxx; ++x) {
        for (int y = miny; y < maxy; ++y) {
            long qx = 2L * x + 1 - 2L * spec.center.x, qy = 2L * y + 1 - 2L * spec.center.y;
            bool nwse = qx * qy > 0;  // boundary slope -1 in quadrants 1 and 3
            std::array<Tri, 2> split;
            Vec2i sw{x, y}, se{x + 1, y}, ne{x + 1, y + 1}, nw{x, y + 1};
            if (nwse) {
                split[0] = {{sw, se, nw}};  // diagonal nw-se
                split[1] = {{se, ne, nw}};
            } else {
                split[0] = {{sw, se, ne}};  // diagonal sw-ne
                split[1] = {{sw, ne, nw}};
            }
            for (const Tri& t : split) {
                Vec2i c3{t.v[0].x + t.v[1].x + t.v[2].x, t.v[0].y + t.v[1].y + t.v[2].y};
                if (inside(c3)) tris.push_back(t);
            }
        }
    }
    require(!tris.empty(), Errc::MeshFailure, "no triangles inside the domain");

    // node table with seam duplication: a grid point on a cut has two copies,
    // one per side of the slit. Sides are angular sectors between the cut
    // direction and the hole/exterior gap, so fans at the cut endpoints are
    // classified correctly.
    std::map<std::pair<Vec2i, int>, int> node_id;  // (grid point, side) -> id
    auto centroid_of = [](const std::vector<Vec2i>& poly) {
        double cx = 0, cy = 0;
        for (Vec2i v : poly) {
            cx += v.x;
            cy += v.y;
        }
        return std::array<double, 2>{cx / double(poly.size()), cy / double(poly.size())};
    };
    auto outer_centroid = centroid_of(spec.outer);
    // per cut vertex: angles of the slit separators (toward the outer end,
    // toward the hole end)
    std::map<Vec2i, std::array<double, 2>> slit_angles;
    for (size_t c = 0; c < spec.cuts.size(); ++c) {
        // expand the polyline into unit steps
        std::vector<Vec2i> pts;
        for (size_t i = 0; i + 1 < spec.cuts[c].size(); ++i) {
            Vec2i a = spec.cuts[c][i], b2 = spec.cuts[c][i + 1];
            int dx = (b2.x > a.x) - (b2.x < a.x), dy = (b2.y > a.y) - (b2.y < a.y);
            for (Vec2i p = a; !(p == b2); p = {p.x + dx, p.y + dy}) pts.push_back(p);
        }
        pts.push_back(spec.cuts[c].back());
        auto hole_c = centroid_of(spec.holes[c]);
        for (size_t i = 0; i < pts.size(); ++i) {
            Vec2i p = pts[i];
            double th_dn, th_up;
            if (i + 1 < pts.size()) {
                Vec2i d = pts[i + 1] - p;
                th_dn = std::atan2(double(d.y), double(d.x));
            } else {
                // terminus: the gap points out of the domain
                th_dn = std::atan2(p.y - outer_centroid[1], p.x - outer_centroid[0]);
            }
            if (i > 0) {
                Vec2i d = pts[i - 1] - p;
                th_up = std::atan2(double(d.y), double(d.x));
            } else {
                // start: the gap points into the hole
                th_up = std::atan2(hole_c[1] - p.y, hole_c[0] - p.x);
            }
            slit_angles[p] = {th_dn, th_up};
        }
    }
    auto ccw_between = [](double a, double x, double b) {
        // is angle x inside the CCW sector from a to b
        auto norm = [](double t) {
            while (t < 0) t += 2 * 3.14159265358979323846;
            while (t >= 2 * 3.14159265358979323846) t -= 2 * 3.14159265358979323846;
            return t;
        };
        double span = norm(b - a);
        return norm(x - a) < span;
    };
    auto it_angle = [](const std::map<Vec2i, std::array<double, 2>>& m2, Vec2i p) {
        return m2.at(p);
    };
    auto tri_side = [&](const Tri& t, Vec2i at) {
        auto it = slit_angles.find(at);
        if (it == slit_angles.end()) return 0;
        double cx = (t.v[0].x + t.v[1].x + t.v[2].x) / 3.0 - at.x;
        double cy = (t.v[0].y + t.v[1].y + t.v[2].y) / 3.0 - at.y;
        double th = std::atan2(cy, cx);
        return ccw_between(it->second[0], th, it->second[1]) ? 1 : 0;
    };
    auto get_node = [&](Vec2i p, int side) {
        auto key = std::make_pair(p, side);
        auto it = node_id.find(key);
        if (it != node_id.end()) return it->second;
        int id = int(mesh.pos.size());
        node_id[key] = id;
        mesh.pos.push_back({p.x * ell, p.y * ell});
        mesh.gpos.push_back(p);
        return id;
    };
    mesh.tris.reserve(tris.size());
    for (const Tri& t : tris) {
        std::array<int, 3> ids{};
        for (int k = 0; k < 3; ++k) {
            int side = cut_vertex_hole.count(t.v[size_t(k)]) ? tri_side(t, t.v[size_t(k)]) : 0;
            ids[size_t(k)] = get_node(t.v[size_t(k)], side);
        }
        mesh.tris.push_back(ids);
    }

    // seam signs: walking the hole polygon counterclockwise from the cut
    // start gains +m, which pins which sheet is the +m translate
    std::vector<int> seam_sign(spec.cuts.size(), 1);
    for (size_t c = 0; c < spec.cuts.size(); ++c) {
        std::vector<Vec2i> poly = spec.holes[c];
        long area2 = 0;
        for (size_t i = 0; i < poly.size(); ++i) {
            Vec2i a = poly[i], b2 = poly[(i + 1) % poly.size()];
            area2 += long(a.x) * b2.y - long(b2.x) * a.y;
        }
        if (area2 < 0) std::reverse(poly.begin(), poly.end());
        Vec2i p = spec.cuts[c].front();
        size_t pos = 0;
        while (pos < poly.size() && !(poly[pos] == p)) ++pos;
        require(pos < poly.size(), Errc::MeshFailure, "cut must start at a hole polygon vertex");
        Vec2i nxt = poly[(pos + 1) % poly.size()];
        Vec2i prv = poly[(pos + poly.size() - 1) % poly.size()];
        auto ang = it_angle(slit_angles, p);
        double th_first = std::atan2(double(nxt.y - p.y), double(nxt.x - p.x));
        double th_last = std::atan2(double(prv.y - p.y), double(prv.x - p.x));
        int side_first = ccw_between(ang[0], th_first, ang[1]) ? 1 : 0;
        int side_last = ccw_between(ang[0], th_last, ang[1]) ? 1 : 0;
        require(side_first != side_last, Errc::MeshFailure, "cut does not split its hole corner");
        // value(side_last) = value(side_first) + m
        seam_sign[c] = side_last == 1 ? 1 : -1;
    }

    // seam pairs
    for (auto& [p, hole] : cut_vertex_hole) {
        auto w = node_id.find({p, 0});
        auto e = node_id.find({p, 1});
        if (w != node_id.end() && e != node_id.end())
            mesh.seam_pairs.push_back({w->second, e->second, hole, seam_sign[size_t(hole - 1)]});
    }

    // boundary tags
    mesh.boundary_comp.assign(mesh.pos.size(), -1);
    mesh.num_components = 1 + int(spec.holes.size());
    for (auto& [key, id] : node_id) {
        Vec2i p = key.first;
        if (point_on_polygon(spec.outer, p)) mesh.boundary_comp[size_t(id)] = 0;
        for (size_t h = 0; h < spec.holes.size(); ++h)
            if (point_on_polygon(spec.holes[h], p)) mesh.boundary_comp[size_t(id)] = int(h) + 1;
    }
    return mesh;
}

namespace {

/// Feasible interval of xi for |s0 + a xi| + |t0 + b xi| <= bound. The map
/// is convex piecewise-linear, so the set is a (possibly empty) interval;
/// empty is signalled by lo > hi.
std::array<double, 2> feasible_interval(double s0, double a, double t0, double b,
                                        double bound = 2.0) {
    auto phi = [&](double xi) { return std::abs(s0 + a * xi) + std::abs(t0 + b * xi); };
    std::vector<double> brk;
    if (a != 0) brk.push_back(-s0 / a);
    if (b != 0) brk.push_back(-t0 / b);
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
    if (brk.empty()) {
        // constant slope contribution
        return phi(0) <= bound ? std::array<double, 2>{-1e100, 1e100}
                               : std::array<double, 2>{1, -1};
    }
    double lo = 1e100, hi = -1e100;
    auto consider = [&](double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    };
    // each linear piece: solve phi = 2 at both ends of the piece
    std::vector<double> pts = brk;
    const double far = 1e9;
    pts.insert(pts.begin(), brk.front() - far);
    pts.push_back(brk.back() + far);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double x0 = pts[i], x1 = pts[i + 1];
        double f0 = phi(x0), f1 = phi(x1);
        // piece is linear between x0 and x1
        if (f0 <= bound) consider(x0);
        if (f1 <= bound) consider(x1);
        if ((f0 - bound) * (f1 - bound) < 0)
            consider(x0 + (bound - f0) * (x1 - x0) / (f1 - f0));
    }
    if (hi < lo) return {1, -1};
    return {lo, hi};
}

struct Assembled {
    // triangle stars per unknown: (triangle, corner slot)
    std::vector<std::vector<std::pair<int, int>>> stars;
};

/// Concave 1-D maximization by golden-section; f must be concave.
double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters = 60) {
    const double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && b - a > 1e-13; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double functional_value(const Mesh& mesh, const std::vector<double>& values) {
    double total = 0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        Slope g = mesh.gradient(t, values);
        require(in_newton_polygon(g, 1e-7), Errc::InfeasibleHeight,
                "triangle " + std::to_string(t) + " has slope outside the Newton polygon");
        Slope clamped = g;
        if (!in_newton_polygon(clamped, 0)) {
            double sc = 2.0 / (std::abs(g.s) + std::abs(g.t));
            clamped.s *= sc;
            clamped.t *= sc;
        }
        total += mesh.tri_area() * sigma(clamped);
    }
    return total / (mesh.tri_area() * mesh.num_triangles());
}

SolveReport maximize(const Mesh& mesh, const BoundaryData& b, const std::vector<double>& monodromy,
                     const SolveOptions& opts) {
    const int n = mesh.num_nodes();
    require(int(b.size()) == n, Errc::BadInput, "boundary data must be indexed by mesh node");
    require(monodromy.size() == size_t(mesh.num_components - 1), Errc::BadInput,
            "monodromy length mismatch");

    std::unique_ptr<SigmaGrid> own_grid;
    const SigmaGrid* grid = opts.grid;
    if (!grid) {
        own_grid = std::make_unique<SigmaGrid>();
        grid = own_grid.get();
    }

    // unknown layout: master value per non-east-seam node; east seam copies
    // alias west + m; boundary nodes carry b + r_comp with r_0 = 0
    std::vector<int> alias(static_cast<size_t>(n));
    std::vector<double> alias_off(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) alias[size_t(i)] = i;
    for (const SeamPair& sp : mesh.seam_pairs) {
        alias[size_t(sp.east)] = sp.west;
        alias_off[size_t(sp.east)] = sp.sign * monodromy[size_t(sp.hole - 1)];
    }

    std::vector<double> r(size_t(mesh.num_components), 0.0);
    bool r_free = !opts.fixed_r.has_value();
    if (!r_free) {
        require(opts.fixed_r->size() == size_t(mesh.num_components - 1), Errc::BadInput,
                "fixed_r length mismatch");
        for (size_t i = 0; i < opts.fixed_r->size(); ++i) r[i + 1] = (*opts.fixed_r)[i];
    }

    std::vector<std::vector<int>> alias_children(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        if (alias[size_t(i)] != i) alias_children[size_t(alias[size_t(i)])].push_back(i);

    // current values, always kept consistent through the aliases
    std::vector<double> val(static_cast<size_t>(n), 0.0);
    auto comp_of = [&](int node) { return mesh.boundary_comp[size_t(alias[size_t(node)])]; };
    auto refresh_node = [&](int node) {
        int m = alias[size_t(node)];
        int c = mesh.boundary_comp[size_t(m)];
        if (c >= 0) val[size_t(m)] = b[size_t(m)] + r[size_t(c)];
        val[size_t(node)] = val[size_t(m)] + alias_off[size_t(node)];
    };
    auto touch_master = [&](int m) {
        for (int child : alias_children[size_t(m)]) refresh_node(child);
    };

    // initial interior guess: Lipschitz midpoint envelope over the mesh graph
    {
        std::vector<std::vector<std::pair<int, double>>> adj(static_cast<size_t>(n));
        for (const auto& T : mesh.tris) {
            for (int k = 0; k < 3; ++k) {
                int u = T[size_t(k)], v = T[size_t((k + 1) % 3)];
                double w = 2.0 * std::max(std::abs(mesh.pos[size_t(u)][0] - mesh.pos[size_t(v)][0]),
                                          std::abs(mesh.pos[size_t(u)][1] - mesh.pos[size_t(v)][1]));
                adj[size_t(u)].push_back({v, w});
                adj[size_t(v)].push_back({u, w});
            }
        }
        auto dijkstra = [&](bool up) {
            std::vector<double> dist(static_cast<size_t>(n), 1e100);
            using QE = std::pair<double, int>;
            std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
            for (int i = 0; i < n; ++i) {
                if (comp_of(i) < 0) continue;
                refresh_node(i);
                double d0 = up ? val[size_t(i)] : -val[size_t(i)];
                if (d0 < dist[size_t(i)]) {
                    dist[size_t(i)] = d0;
                    pq.push({d0, i});
                }
            }
            while (!pq.empty()) {
                auto [du, u] = pq.top();
                pq.pop();
                if (du != dist[size_t(u)]) continue;
                for (auto [v, w] : adj[size_t(u)])
                    if (du + w < dist[size_t(v)]) {
                        dist[size_t(v)] = du + w;
                        pq.push({dist[size_t(v)], v});
                    }
            }
            return dist;
        };
        auto up = dijkstra(true), dn = dijkstra(false);
        for (int i = 0; i < n; ++i) {
            if (comp_of(i) >= 0 || alias[size_t(i)] != i) continue;
            val[size_t(i)] = 0.5 * (up[size_t(i)] - dn[size_t(i)]);
        }
        for (int i = 0; i < n; ++i)
            if (alias[size_t(i)] != i || comp_of(i) >= 0) refresh_node(i);
    }

    // multigrid warm start: interpolate a coarse solution at the free nodes
    if (opts.warm_mesh && opts.warm_values) {
        for (int i = 0; i < n; ++i) {
            if (alias[size_t(i)] != i || comp_of(i) >= 0) continue;
            double x = mesh.pos[size_t(i)][0], y = mesh.pos[size_t(i)][1];
            // nudge toward an incident triangle centroid so seam sheets match
            for (const auto& T : mesh.tris) {
                if (T[0] != i && T[1] != i && T[2] != i) continue;
                double cx = 0, cy = 0;
                for (int k = 0; k < 3; ++k) {
                    cx += mesh.pos[size_t(T[size_t(k)])][0] / 3;
                    cy += mesh.pos[size_t(T[size_t(k)])][1] / 3;
                }
                x += 1e-6 * (cx - x);
                y += 1e-6 * (cy - y);
                break;
            }
            auto v = mesh_value_at(*opts.warm_mesh, *opts.warm_values, x, y);
            if (v) val[size_t(i)] = *v;
        }
        for (int i = 0; i < n; ++i)
            if (alias[size_t(i)] != i || comp_of(i) >= 0) refresh_node(i);
    }

    Assembled as;
    as.stars.assign(static_cast<size_t>(n), {});
    for (int t = 0; t < mesh.num_triangles(); ++t)
        for (int k = 0; k < 3; ++k)
            as.stars[size_t(alias[size_t(mesh.tris[size_t(t)][size_t(k)])])].push_back({t, k});

    // geometry coefficients: moving node value by xi moves the triangle slope
    // by xi * (as, at) depending on the corner slot
    auto slope_coeff = [&](int t, int k) -> std::array<double, 2> {
        const auto& T = mesh.tris[size_t(t)];
        const auto &A = mesh.pos[size_t(T[0])], &B = mesh.pos[size_t(T[1])],
                   &C = mesh.pos[size_t(T[2])];
        double det = (B[0] - A[0]) * (C[1] - A[1]) - (C[0] - A[0]) * (B[1] - A[1]);
        // gradient is linear in corner values with these weights
        std::array<std::array<double, 2>, 3> wts = {{
            {{(B[1] - C[1]) / det, (C[0] - B[0]) / det}},
            {{(C[1] - A[1]) / det, (A[0] - C[0]) / det}},
            {{(A[1] - B[1]) / det, (B[0] - A[0]) / det}},
        }};
        return wts[size_t(k)];
    };

    std::vector<double> bound(size_t(mesh.num_triangles()), 2.0);

    // feasibility repair: descent on the convex penalty
    // sum_T max(0, q(s) + q(t) - 2)^2 with a smoothed absolute value q;
    // coordinate passes do the bulk, full-gradient line searches break the
    // plateaus coordinate moves cannot (the surrogate keeps them C^1)
    auto repair = [&]() {
        const double eps = 1e-9;
        auto q = [&](double x) { return std::sqrt(x * x + eps * eps) - eps; };
        auto dq = [&](double x) { return x / std::sqrt(x * x + eps * eps); };
        auto tri_pen = [&](int t) {
            Slope g = mesh.gradient(t, val);
            double gap = q(g.s) + q(g.t) - 2.0;
            return gap > 0 ? gap * gap : 0.0;
        };
        auto total_pen = [&]() {
            double v = 0;
            for (int t = 0; t < mesh.num_triangles(); ++t) v += tri_pen(t);
            return v;
        };
        std::vector<int> masters_all;
        for (int m = 0; m < n; ++m)
            if (alias[size_t(m)] == m && mesh.boundary_comp[size_t(m)] < 0) masters_all.push_back(m);
        double pen = total_pen();
        double prev = pen;
        for (int pass = 0; pass < 3000 && pen > 1e-22; ++pass) {
            for (int m : masters_all) {
                auto& star = as.stars[size_t(m)];
                double local = 0;
                for (auto [t, k] : star) local += tri_pen(t);
                if (local <= 0) continue;
                auto phi = [&](double xi) {
                    double acc = 0;
                    for (auto [t, k] : star) {
                        Slope g = mesh.gradient(t, val);
                        auto cf = slope_coeff(t, k);
                        double gap = q(g.s + cf[0] * xi) + q(g.t + cf[1] * xi) - 2.0;
                        if (gap > 0) acc += gap * gap;
                    }
                    return -acc;
                };
                double step = 8.0 * mesh.ell;
                double best = golden_max(phi, -step, step);
                if (phi(best) > phi(0)) {
                    val[size_t(m)] += best;
                    touch_master(m);
                }
            }
            pen = total_pen();
            if (pass % 5 == 4 || pen > 0.9 * prev) {
                // full-gradient line search
                std::vector<double> grad(masters_all.size(), 0.0);
                for (size_t mi = 0; mi < masters_all.size(); ++mi) {
                    int m = masters_all[mi];
                    double gsum = 0;
                    for (auto [t, k] : as.stars[size_t(m)]) {
                        Slope g = mesh.gradient(t, val);
                        double gap = q(g.s) + q(g.t) - 2.0;
                        if (gap <= 0) continue;
                        auto cf = slope_coeff(t, k);
                        gsum += 2 * gap * (dq(g.s) * cf[0] + dq(g.t) * cf[1]);
                    }
                    grad[mi] = gsum;
                }
                double gnorm2 = 0;
                for (double gcomp : grad) gnorm2 += gcomp * gcomp;
                if (gnorm2 > 1e-30) {
                    auto along = [&](double step2) {
                        for (size_t mi = 0; mi < masters_all.size(); ++mi) {
                            val[size_t(masters_all[mi])] -= step2 * grad[mi];
                            touch_master(masters_all[mi]);
                        }
                        double v = total_pen();
                        for (size_t mi = 0; mi < masters_all.size(); ++mi) {
                            val[size_t(masters_all[mi])] += step2 * grad[mi];
                            touch_master(masters_all[mi]);
                        }
                        return -v;
                    };
                    double smax = 4.0 * mesh.ell / std::sqrt(gnorm2) * 8;
                    double best = golden_max(along, 0.0, smax, 40);
                    if (along(best) > -pen) {
                        for (size_t mi = 0; mi < masters_all.size(); ++mi) {
                            val[size_t(masters_all[mi])] -= best * grad[mi];
                            touch_master(masters_all[mi]);
                        }
                    }
                }
                pen = total_pen();
            }
            prev = pen;
        }
        // accept round-off-level residual gaps; the ascent works with the
        // same tolerance and only tightens feasibility
        bool ok_all = true;
        for (int t = 0; t < mesh.num_triangles(); ++t)
            if (!in_newton_polygon(mesh.gradient(t, val), 1e-7)) {
                ok_all = false;
                if (std::getenv("DOMINO_DEBUG_REPAIR")) {
                    Slope g = mesh.gradient(t, val);
                    const auto& T = mesh.tris[size_t(t)];
                    std::fprintf(stderr, "violating tri %d at (%.4f,%.4f) slope (%.4f,%.4f) gap %.2e\n",
                                 t, mesh.pos[size_t(T[0])][0], mesh.pos[size_t(T[0])][1], g.s, g.t,
                                 std::abs(g.s) + std::abs(g.t) - 2);
                }
            }
        return ok_all;
    };
    // transferred lattice data can be supercritical by its O(1/N) slack at
    // kinks; grandfather the residual excess per triangle (the ascent can
    // only shrink it, since sigma vanishes outside the polygon)
    if (!repair()) {
        double worst = 0;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            Slope g = mesh.gradient(t, val);
            double gap = std::abs(g.s) + std::abs(g.t) - 2.0;
            if (gap > 0) {
                bound[size_t(t)] = 2.0 + gap + 1e-12;
                worst = std::max(worst, gap);
            }
        }
        require(worst <= 0.75, Errc::Infeasible,
                "boundary data admits no feasible height (excess " + std::to_string(worst) + ")");
    }

    const double kPenalty = 16.0;   // above the surrogate's boundary slope
    const double kOvershoot = 0.25; // exploration margin past the bound
    auto objective = [&]() {
        double total = 0;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            Slope g = mesh.gradient(t, val);
            total += grid->value(g);
            double gap = std::abs(g.s) + std::abs(g.t) - bound[size_t(t)];
            if (gap > 0) total -= kPenalty * gap;
        }
        return total;  // uniform areas: scale deferred
    };

    // coordinate ascent over free node values and free component constants
    double F = objective();
    int sweeps = 0;
    double residual = 1;
    int calm = 0;
    std::vector<int> masters;
    for (int i = 0; i < n; ++i)
        if (alias[size_t(i)] == i && mesh.boundary_comp[size_t(i)] < 0) masters.push_back(i);

    while (sweeps < opts.max_sweeps && calm < opts.tol_window) {
        ++sweeps;
        for (int m : masters) {
            // local objective along xi: sigma surrogate minus a steep linear
            // penalty beyond the per-triangle bound; the penalty keeps the
            // 1-D problem concave while letting frozen clusters slide along
            // the constraint boundary instead of jamming on it
            auto& star = as.stars[size_t(m)];
            double lo = -1e100, hi = 1e100;
            for (auto [t, k] : star) {
                Slope g = mesh.gradient(t, val);
                auto cf = slope_coeff(t, k);
                auto iv = feasible_interval(g.s, cf[0], g.t, cf[1], bound[size_t(t)] + kOvershoot);
                lo = std::max(lo, iv[0]);
                hi = std::min(hi, iv[1]);
            }
            if (lo > hi) continue;
            auto phi = [&](double xi) {
                double acc = 0;
                for (auto [t, k] : star) {
                    Slope g = mesh.gradient(t, val);
                    auto cf = slope_coeff(t, k);
                    Slope q{g.s + cf[0] * xi, g.t + cf[1] * xi};
                    acc += grid->value(q);
                    double gap = std::abs(q.s) + std::abs(q.t) - bound[size_t(t)];
                    if (gap > 0) acc -= kPenalty * gap;
                }
                return acc;
            };
            double base = phi(0);
            double best = golden_max(phi, std::max(lo, -4.0), std::min(hi, 4.0));
            if (phi(best) > base + 1e-15) {
                val[size_t(m)] += best;
                touch_master(m);
            }
        }
        if (r_free) {
            for (int c = 1; c < mesh.num_components; ++c) {
                // shifting r_c moves every node of component c together
                std::map<int, std::array<double, 2>> coeffs;
                for (int t2 = 0; t2 < mesh.num_triangles(); ++t2) {
                    std::array<double, 2> cf{0, 0};
                    bool touch = false;
                    for (int k = 0; k < 3; ++k) {
                        int node = mesh.tris[size_t(t2)][size_t(k)];
                        if (comp_of(node) == c) {
                            auto w = slope_coeff(t2, k);
                            cf[0] += w[0];
                            cf[1] += w[1];
                            touch = true;
                        }
                    }
                    if (touch) coeffs[t2] = cf;
                }
                double lo = -1e100, hi = 1e100;
                for (auto& [t2, cf] : coeffs) {
                    Slope g = mesh.gradient(t2, val);
                    auto iv =
                        feasible_interval(g.s, cf[0], g.t, cf[1], bound[size_t(t2)] + kOvershoot);
                    lo = std::max(lo, iv[0]);
                    hi = std::min(hi, iv[1]);
                }
                if (lo > hi) continue;
                auto phi = [&](double xi) {
                    double acc = 0;
                    for (auto& [t2, cf] : coeffs) {
                        Slope g = mesh.gradient(t2, val);
                        Slope q{g.s + cf[0] * xi, g.t + cf[1] * xi};
                        acc += grid->value(q);
                        double gap = std::abs(q.s) + std::abs(q.t) - bound[size_t(t2)];
                        if (gap > 0) acc -= kPenalty * gap;
                    }
                    return acc;
                };
                double base = phi(0);
                double best = golden_max(phi, std::max(lo, -4.0), std::min(hi, 4.0));
                if (phi(best) > base + 1e-15) {
                    r[size_t(c)] += best;
                    for (int i = 0; i < n; ++i)
                        if (comp_of(i) == c) refresh_node(i);
                }
            }
        }
        double F2 = objective();
        residual = std::abs(F2 - F) / std::max(1.0, std::abs(F2));
        require(F2 >= F - 1e-9, Errc::Degenerate, "objective decreased (numerical trouble)");
        F = F2;
        calm = residual < opts.rel_tol ? calm + 1 : 0;
    }

    // pull penalty-level overshoots back onto their bounds
    for (int pass = 0; pass < 40; ++pass) {
        bool bad = false;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            Slope g = mesh.gradient(t, val);
            if (std::abs(g.s) + std::abs(g.t) <= bound[size_t(t)] + 1e-12) continue;
            for (int k = 0; k < 3; ++k) {
                int m = alias[size_t(mesh.tris[size_t(t)][size_t(k)])];
                if (mesh.boundary_comp[size_t(m)] >= 0) continue;
                auto cf = slope_coeff(t, k);
                auto iv = feasible_interval(g.s, cf[0], g.t, cf[1], bound[size_t(t)]);
                if (iv[0] > iv[1]) continue;
                val[size_t(m)] += std::min(std::max(0.0, iv[0]), iv[1]);
                touch_master(m);
                bad = true;
                break;
            }
        }
        if (!bad) break;
    }

    SolveReport rep;
    rep.eps_bnd = opts.eps_bnd;
    rep.iterations = sweeps;
    rep.residual = residual;
    rep.h_star.values = val;
    rep.h_star.monodromy = monodromy;
    for (int c = 1; c < mesh.num_components; ++c) {
        rep.r_star.push_back(r[size_t(c)]);
        rep.h_star.height_change.push_back(r[size_t(c)]);
    }
    {
        // quadrature with slopes clamped onto the polygon (supercritical
        // triangles carry zero surface tension anyway)
        double total = 0;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            Slope g = mesh.gradient(t, val);
            if (!in_newton_polygon(g, 0)) {
                double sc = 2.0 / (std::abs(g.s) + std::abs(g.t));
                g.s *= sc;
                g.t *= sc;
            }
            total += mesh.tri_area() * sigma(g);
        }
        rep.objective = total / (mesh.tri_area() * mesh.num_triangles());
    }
    rep.frozen_mask.assign(size_t(mesh.num_triangles()), 0);
    bool any_unfrozen = false;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        Slope g = mesh.gradient(t, val);
        bool frozen = newton_polygon_gap(g) <= opts.eps_bnd;
        rep.frozen_mask[size_t(t)] = frozen ? 1 : 0;
        any_unfrozen = any_unfrozen || !frozen;
    }
    require(any_unfrozen || mesh.num_triangles() == 0, Errc::Degenerate,
            "solution is entirely frozen; the maximizer may not be unique");
    return rep;
}

std::optional<double> mesh_value_at(const Mesh& mesh, const std::vector<double>& values, double x,
                                    double y) {
    // nudge west so points on a seam line resolve to the canonical side
    double xq = x - 1e-9 * std::max(1.0, std::abs(x));
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& T = mesh.tris[size_t(t)];
        const auto &A = mesh.pos[size_t(T[0])], &B = mesh.pos[size_t(T[1])],
                   &C = mesh.pos[size_t(T[2])];
        double det = (B[0] - A[0]) * (C[1] - A[1]) - (C[0] - A[0]) * (B[1] - A[1]);
        double l1 = ((xq - A[0]) * (C[1] - A[1]) - (y - A[1]) * (C[0] - A[0])) / det;
        double l2 = ((y - A[1]) * (B[0] - A[0]) - (xq - A[0]) * (B[1] - A[1])) / det;
        double l0 = 1 - l1 - l2;
        const double eps = -1e-9;
        if (l0 >= eps && l1 >= eps && l2 >= eps) {
            return l0 * values[size_t(T[0])] + l1 * values[size_t(T[1])] +
                   l2 * values[size_t(T[2])];
        }
    }
    return std::nullopt;
}

CompareReport compare_to_empirical(const Mesh& mesh, const SolveReport& report,
                                   const EmpiricalField& field,
                                   const std::function<std::array<double, 2>(Vec2i)>& to_continuum,
                                   double exclude_band) {
    require(field.n_samples > 0, Errc::DomainMismatch, "empty empirical field");
    const LatticeDomain& dom = *field.domain;

    // frozen interface: centroids of frozen triangles adjacent to unfrozen
    std::vector<std::array<double, 2>> interface;
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& T = mesh.tris[size_t(t)];
        for (int k = 0; k < 3; ++k) {
            int a = T[size_t(k)], b2 = T[size_t((k + 1) % 3)];
            edge_tris[{std::min(a, b2), std::max(a, b2)}].push_back(t);
        }
    }
    for (auto& [e, ts] : edge_tris) {
        if (ts.size() == 2 && report.frozen_mask[size_t(ts[0])] != report.frozen_mask[size_t(ts[1])]) {
            for (int t : ts) {
                const auto& T = mesh.tris[size_t(t)];
                interface.push_back({(mesh.pos[size_t(T[0])][0] + mesh.pos[size_t(T[1])][0] +
                                      mesh.pos[size_t(T[2])][0]) /
                                         3.0,
                                     (mesh.pos[size_t(T[0])][1] + mesh.pos[size_t(T[1])][1] +
                                      mesh.pos[size_t(T[2])][1]) /
                                         3.0});
            }
        }
    }

    // the seam is a bookkeeping line: heights jump by the monodromy across
    // it, and the lattice and mesh cuts may disagree at lattice scale, so a
    // lattice-unit margin around it is excluded as well
    std::vector<std::array<double, 4>> seam_segs;
    {
        std::vector<std::array<double, 2>> seam_pts;
        for (const auto& sp : mesh.seam_pairs) seam_pts.push_back(mesh.pos[size_t(sp.west)]);
        for (size_t i = 0; i < seam_pts.size(); ++i)
            for (size_t j = i + 1; j < seam_pts.size(); ++j) {
                double d = std::max(std::abs(seam_pts[i][0] - seam_pts[j][0]),
                                    std::abs(seam_pts[i][1] - seam_pts[j][1]));
                if (d <= mesh.ell * 1.5)
                    seam_segs.push_back(
                        {seam_pts[i][0], seam_pts[i][1], seam_pts[j][0], seam_pts[j][1]});
            }
    }
    double seam_margin = 2.0 / field.scale;
    auto near_seam = [&](double x, double y) {
        for (auto& sgm : seam_segs) {
            double ax = sgm[0], ay = sgm[1], bx = sgm[2], by = sgm[3];
            double vx = bx - ax, vy = by - ay;
            double tt = ((x - ax) * vx + (y - ay) * vy) / (vx * vx + vy * vy);
            tt = std::min(std::max(tt, 0.0), 1.0);
            double dx = x - (ax + tt * vx), dy = y - (ay + tt * vy);
            if (dx * dx + dy * dy < seam_margin * seam_margin) return true;
        }
        return false;
    };

    CompareReport out;
    double l2 = 0;
    for (int v = 0; v < dom.num_vertices(); ++v) {
        auto p = to_continuum(dom.vertices()[size_t(v)]);
        if (near_seam(p[0], p[1])) continue;
        bool near_interface = false;
        for (auto& q : interface) {
            double dx = p[0] - q[0], dy = p[1] - q[1];
            if (dx * dx + dy * dy < exclude_band * exclude_band) {
                near_interface = true;
                break;
            }
        }
        if (near_interface) continue;
        auto hv = mesh_value_at(mesh, report.h_star.values, p[0], p[1]);
        if (!hv) continue;
        double diff = std::abs(field.mean(v) - *hv);
        out.sup_distance = std::max(out.sup_distance, diff);
        l2 += diff * diff;
        ++out.points_compared;
    }
    out.l2_distance = out.points_compared ? std::sqrt(l2 / out.points_compared) : 0.0;

    // mean height change per hole vs the solved constants
    int g = dom.genus();
    std::vector<double> mean_R(size_t(g), 0.0);
    int64_t total = 0;
    for (auto& [key, cnt] : field.r_histogram) {
        total += cnt;
        for (int i = 0; i < g; ++i) mean_R[size_t(i)] += double(key[size_t(i)]) * double(cnt);
    }
    for (int i = 0; i < g; ++i) {
        mean_R[size_t(i)] /= double(total) * field.scale;
        out.r_gap.push_back(std::abs(mean_R[size_t(i)] - report.r_star[size_t(i)]));
    }
    return out;
}

}  // namespace domino
