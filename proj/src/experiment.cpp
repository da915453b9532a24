#include "domino/experiment.hpp"

#include <cmath>

#include <map>
#include <queue>

#include "domino/heights.hpp"

namespace domino {

MeshSpec square_spec(int g) {
    MeshSpec s;
    s.outer = {{0, 0}, {g, 0}, {g, g}, {0, g}};
    s.center = {g / 2, g / 2};
    return s;
}

MeshSpec diamond_spec(int g) {
    MeshSpec s;
    s.outer = {{g, 0}, {0, g}, {-g, 0}, {0, -g}};
    s.center = {0, 0};
    return s;
}

MeshSpec square_annulus_spec(int g) {
    require(g % 4 == 0, Errc::MeshFailure, "annulus grid must be a multiple of 4");
    MeshSpec s;
    int q = g / 4;
    s.outer = {{0, 0}, {g, 0}, {g, g}, {0, g}};
    s.holes = {{{q, q}, {3 * q, q}, {3 * q, 3 * q}, {q, 3 * q}}};
    s.cuts = {{{q, q}, {q, 0}}};  // straight down from the hole SW corner
    s.center = {g / 2, g / 2};
    return s;
}

MeshSpec square_annulus_spec_alt(int g) {
    MeshSpec s = square_annulus_spec(g);
    int q = g / 4;
    s.cuts = {{{3 * q, q}, {g, q}}};  // straight right from the hole SE corner
    return s;
}

MeshSpec diamond_annulus_spec(int g) {
    require(g % 4 == 0, Errc::MeshFailure, "diamond annulus grid must be a multiple of 4");
    MeshSpec s;
    int q = g / 4;
    s.outer = {{g, 0}, {0, g}, {-g, 0}, {0, -g}};
    s.holes = {{{q, 0}, {0, q}, {-q, 0}, {0, -q}}};
    // straight down from the hole west corner to the outer SW edge
    s.cuts = {{{-q, 0}, {-q, -(g - q)}}};
    s.center = {0, 0};
    return s;
}

BoundaryData flat_boundary(const Mesh& mesh) {
    return BoundaryData(size_t(mesh.num_nodes()), 0.0);
}

BoundaryData boundary_from_lattice(const Mesh& mesh, const LatticeDomain& lat, double latN) {
    BoundaryData b(size_t(mesh.num_nodes()), 0.0);
    std::vector<int> zeroR(size_t(lat.genus()), 0);
    auto blat = boundary_heights(lat, zeroR);

    // mesh grid coordinates scale onto the lattice by latN / (mesh extent)
    // under the convention that both use the same coordinate frame; the mesh
    // spec was built at grid g and the lattice at size latN with g | latN
    // implied by construction. Scale = latN / g where g is inferred from the
    // outer polygon extents of both.
    int mesh_max = 0, lat_max = 0;
    for (const auto& p : mesh.gpos) mesh_max = std::max({mesh_max, std::abs(p.x), std::abs(p.y)});
    for (const auto& v : lat.vertices()) lat_max = std::max({lat_max, std::abs(v.x), std::abs(v.y)});
    double scale = double(lat_max) / double(mesh_max);

    for (int i = 0; i < mesh.num_nodes(); ++i) {
        int comp = mesh.boundary_comp[size_t(i)];
        if (comp < 0) continue;
        require(comp < int(lat.boundary_components().size()), Errc::DomainMismatch,
                "mesh has more boundary components than the lattice domain");
        const auto& cyc = lat.boundary_components()[size_t(comp)].vertex_cycle;
        double tx = mesh.gpos[size_t(i)].x * scale, ty = mesh.gpos[size_t(i)].y * scale;
        double best = 1e100;
        Vec2i bestv = cyc.front();
        for (Vec2i v : cyc) {
            double d = std::abs(v.x - tx) + std::abs(v.y - ty);
            if (d < best) {
                best = d;
                bestv = v;
            }
        }
        b[size_t(i)] = double(blat.at(bestv)) / latN;
    }
    // seam east copies mirror their west master plus the monodromy; the solver
    // never reads their b entry, keep it consistent anyway
    auto m = continuum_monodromy(lat, latN);
    for (const SeamPair& sp : mesh.seam_pairs)
        if (mesh.boundary_comp[size_t(sp.east)] >= 0)
            b[size_t(sp.east)] = b[size_t(sp.west)] + sp.sign * m[size_t(sp.hole - 1)];

    // lattice heights are Lipschitz with an O(1) additive slack that the
    // strict continuum bound lacks; squeeze the data onto the midpoint of its
    // feasible envelopes (a no-op when the data is already feasible). The
    // envelope runs on the deck-layered cover so it commutes with the seam
    // relation.
    {
        int n = mesh.num_nodes();
        int g = mesh.num_components - 1;
        const int rad = 2;
        int layers = 1;
        for (int i = 0; i < g; ++i) layers *= 2 * rad + 1;
        auto deck_shift = [&](int layer) {
            double s = 0;
            for (int i = 0; i < g; ++i) {
                s += (layer % (2 * rad + 1) - rad) * m[size_t(i)];
                layer /= 2 * rad + 1;
            }
            return s;
        };
        auto cover_node = [&](int node, int layer) { return layer * n + node; };
        std::vector<std::pair<int, int>> base_edges;
        for (const auto& T : mesh.tris)
            for (int k = 0; k < 3; ++k)
                base_edges.push_back({T[size_t(k)], T[size_t((k + 1) % 3)]});
        // opposite diagonals of fully kept cells keep the graph metric equal
        // to the intrinsic sup metric in every direction
        {
            std::map<std::pair<int, int>, std::vector<int>> diag_tris;
            for (int t = 0; t < mesh.num_triangles(); ++t) {
                const auto& T = mesh.tris[size_t(t)];
                for (int k = 0; k < 3; ++k) {
                    int a = T[size_t(k)], c = T[size_t((k + 1) % 3)];
                    if (mesh.gpos[size_t(a)].x != mesh.gpos[size_t(c)].x &&
                        mesh.gpos[size_t(a)].y != mesh.gpos[size_t(c)].y)
                        diag_tris[{std::min(a, c), std::max(a, c)}].push_back(t);
                }
            }
            for (auto& [e, ts] : diag_tris) {
                if (ts.size() != 2) continue;
                std::array<int, 2> opp{-1, -1};
                for (int i = 0; i < 2; ++i)
                    for (int k = 0; k < 3; ++k) {
                        int node = mesh.tris[size_t(ts[size_t(i)])][size_t(k)];
                        if (node != e.first && node != e.second) opp[size_t(i)] = node;
                    }
                if (opp[0] >= 0 && opp[1] >= 0) base_edges.push_back({opp[0], opp[1]});
            }
        }
        std::vector<std::vector<std::pair<int, double>>> adj(size_t(n) * size_t(layers));
        for (auto [u, v] : base_edges) {
            double w = 2.0 * std::max(std::abs(mesh.pos[size_t(u)][0] - mesh.pos[size_t(v)][0]),
                                      std::abs(mesh.pos[size_t(u)][1] - mesh.pos[size_t(v)][1]));
            for (int l = 0; l < layers; ++l) {
                adj[size_t(cover_node(u, l))].push_back({cover_node(v, l), w});
                adj[size_t(cover_node(v, l))].push_back({cover_node(u, l), w});
            }
        }
        // (east, deck) is the same cover point as (west, deck + sign * e_hole)
        for (const SeamPair& sp : mesh.seam_pairs) {
            int stride = 1;
            for (int i = 0; i < sp.hole - 1; ++i) stride *= 2 * rad + 1;
            for (int l = 0; l < layers; ++l) {
                int digit = (l / stride) % (2 * rad + 1);
                if (digit + sp.sign < 0 || digit + sp.sign > 2 * rad) continue;
                int shifted = l + sp.sign * stride;
                adj[size_t(cover_node(sp.east, l))].push_back({cover_node(sp.west, shifted), 0.0});
                adj[size_t(cover_node(sp.west, shifted))].push_back({cover_node(sp.east, l), 0.0});
            }
        }
        auto envelope = [&](double sign) {
            std::vector<double> dist(size_t(n) * size_t(layers), 1e100);
            using QE = std::pair<double, int>;
            std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
            for (int i = 0; i < n; ++i) {
                if (mesh.boundary_comp[size_t(i)] < 0) continue;
                for (int l = 0; l < layers; ++l) {
                    double d0 = sign * (b[size_t(i)] + deck_shift(l));
                    int cn = cover_node(i, l);
                    if (d0 < dist[size_t(cn)]) {
                        dist[size_t(cn)] = d0;
                        pq.push({d0, cn});
                    }
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
        auto up = envelope(1.0), dn = envelope(-1.0);
        int mid_layer = 0;
        for (int i = 0, s = 1; i < g; ++i, s *= 2 * rad + 1) mid_layer += rad * s;
        for (int i = 0; i < n; ++i) {
            if (mesh.boundary_comp[size_t(i)] < 0) continue;
            int cn = cover_node(i, mid_layer);
            b[size_t(i)] = 0.5 * (up[size_t(cn)] - dn[size_t(cn)]);
        }
        // re-pin the seam copies exactly
        for (const SeamPair& sp : mesh.seam_pairs)
            if (mesh.boundary_comp[size_t(sp.east)] >= 0)
                b[size_t(sp.east)] = b[size_t(sp.west)] + sp.sign * m[size_t(sp.hole - 1)];
    }
    return b;
}

std::vector<double> continuum_monodromy(const LatticeDomain& lat, double latN) {
    std::vector<double> m;
    for (int x : lat.monodromy_vector()) m.push_back(double(x) / latN);
    return m;
}

}  // namespace domino
