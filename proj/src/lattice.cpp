#include "domino/lattice.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <set>

namespace domino {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DisconnectedDomain: return "DisconnectedDomain";
        case Errc::CutFailure: return "CutFailure";
        case Errc::OpenPath: return "OpenPath";
        case Errc::Unreachable: return "Unreachable";
        case Errc::InconsistentTiling: return "InconsistentTiling";
        case Errc::NotAHeightFunction: return "NotAHeightFunction";
        case Errc::IncompatibleHeights: return "IncompatibleHeights";
        case Errc::NotExtendable: return "NotExtendable";
        case Errc::TooLarge: return "TooLarge";
        case Errc::NotTileable: return "NotTileable";
        case Errc::EmptyFiber: return "EmptyFiber";
        case Errc::DomainError: return "DomainError";
        case Errc::NoRoot: return "NoRoot";
        case Errc::BoundaryGradient: return "BoundaryGradient";
        case Errc::MeshFailure: return "MeshFailure";
        case Errc::Infeasible: return "Infeasible";
        case Errc::Degenerate: return "Degenerate";
        case Errc::InfeasibleHeight: return "InfeasibleHeight";
        case Errc::DomainMismatch: return "DomainMismatch";
        case Errc::BadSize: return "BadSize";
        case Errc::BadInput: return "BadInput";
    }
    return "Error";
}

CoverPoint cover_shift(CoverPoint point, const std::vector<int>& loop_class) {
    require(point.deck.size() == loop_class.size(), Errc::BadInput, "deck length mismatch");
    for (size_t i = 0; i < loop_class.size(); ++i) point.deck[i] += loop_class[i];
    return point;
}

int LatticeDomain::square_index(Vec2i s) const {
    auto it = square_id_.find(s);
    return it == square_id_.end() ? -1 : it->second;
}

int LatticeDomain::vertex_index(Vec2i v) const {
    auto it = vertex_id_.find(v);
    return it == vertex_id_.end() ? -1 : it->second;
}

bool LatticeDomain::has_edge(Vec2i v, int dir) const {
    return has_square(left_square(v, dir)) || has_square(right_square(v, dir));
}

bool LatticeDomain::edge_interior(Vec2i v, int dir) const {
    return has_square(left_square(v, dir)) && has_square(right_square(v, dir));
}

std::array<int, 4> LatticeDomain::square_corners(int square_id) const {
    Vec2i s = squares_[size_t(square_id)];
    return {vertex_index(s), vertex_index({s.x + 1, s.y}), vertex_index({s.x + 1, s.y + 1}),
            vertex_index({s.x, s.y + 1})};
}

namespace {

constexpr std::array<Vec2i, 4> kCorner = {Vec2i{0, 0}, Vec2i{1, 0}, Vec2i{1, 1}, Vec2i{0, 1}};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(size_t(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[size_t(a)] != a) {
            parent[size_t(a)] = parent[size_t(parent[size_t(a)])];
            a = parent[size_t(a)];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[size_t(std::max(a, b))] = std::min(a, b);
    }
};

// Undirected edge key: base vertex plus axis (0 = E, 1 = N).
inline uint64_t edge_key(Vec2i v, int dir) {
    if (dir == 2) { v = v + kDir[2]; dir = 0; }
    if (dir == 3) { v = v + kDir[3]; dir = 1; }
    return (uint64_t(uint32_t(v.x)) << 33) | (uint64_t(uint32_t(v.y)) << 1) | uint64_t(dir);
}

}  // namespace

DomainPtr build_domain(std::vector<Vec2i> squares) {
    require(!squares.empty(), Errc::BadInput, "empty square set");
    std::sort(squares.begin(), squares.end());
    squares.erase(std::unique(squares.begin(), squares.end()), squares.end());

    auto dom = std::shared_ptr<LatticeDomain>(new LatticeDomain());
    dom->squares_ = std::move(squares);
    for (int i = 0; i < int(dom->squares_.size()); ++i) dom->square_id_[dom->squares_[size_t(i)]] = i;

    // edge-connectivity of the square set
    {
        std::vector<char> seen(dom->squares_.size(), 0);
        std::deque<int> q{0};
        seen[0] = 1;
        size_t count = 1;
        while (!q.empty()) {
            Vec2i s = dom->squares_[size_t(q.front())];
            q.pop_front();
            for (Vec2i d : kDir) {
                int n = dom->square_index(s + d);
                if (n >= 0 && !seen[size_t(n)]) {
                    seen[size_t(n)] = 1;
                    ++count;
                    q.push_back(n);
                }
            }
        }
        require(count == dom->squares_.size(), Errc::DisconnectedDomain,
                "square set is not edge-connected");
    }

    // pinch points break the single-arc-per-vertex representation of the
    // fundamental domain; reject them up front
    {
        std::set<Vec2i> corner_set;
        for (Vec2i s : dom->squares_)
            for (Vec2i c : kCorner) corner_set.insert(s + c);
        for (Vec2i v : corner_set) {
            bool sw = dom->has_square({v.x - 1, v.y - 1});
            bool se = dom->has_square({v.x, v.y - 1});
            bool ne = dom->has_square({v.x, v.y});
            bool nw = dom->has_square({v.x - 1, v.y});
            if ((sw && ne && !se && !nw) || (!sw && !ne && se && nw))
                fail(Errc::BadInput, "domain has a pinch point");
        }
        dom->vertices_.assign(corner_set.begin(), corner_set.end());
    }
    for (int i = 0; i < int(dom->vertices_.size()); ++i) dom->vertex_id_[dom->vertices_[size_t(i)]] = i;

    int edges = 0;
    for (Vec2i v : dom->vertices_)
        for (int d : {0, 1})
            if (dom->has_edge(v, d)) ++edges;
    dom->num_edges_ = edges;

    dom->build_boundary();
    dom->build_cuts_();
    dom->build_complex();
    return dom;
}

void LatticeDomain::build_boundary() {
    // complement flood fill on a 1-square margin box
    int minx = squares_[0].x, maxx = squares_[0].x, miny = squares_[0].y, maxy = squares_[0].y;
    for (Vec2i s : squares_) {
        minx = std::min(minx, s.x);
        maxx = std::max(maxx, s.x);
        miny = std::min(miny, s.y);
        maxy = std::max(maxy, s.y);
    }
    --minx; --miny; ++maxx; ++maxy;
    int W = maxx - minx + 1, H = maxy - miny + 1;
    auto cell = [&](Vec2i s) { return (s.y - miny) * W + (s.x - minx); };
    std::vector<int> label(size_t(W) * size_t(H), -2);  // -2 unvisited complement, -1 domain
    for (Vec2i s : squares_) label[size_t(cell(s))] = -1;

    auto flood = [&](Vec2i start, int id) {
        std::deque<Vec2i> q{start};
        label[size_t(cell(start))] = id;
        std::vector<Vec2i> comp{start};
        while (!q.empty()) {
            Vec2i s = q.front();
            q.pop_front();
            for (Vec2i d : kDir) {
                Vec2i n = s + d;
                if (n.x < minx || n.x > maxx || n.y < miny || n.y > maxy) continue;
                if (label[size_t(cell(n))] == -2) {
                    label[size_t(cell(n))] = id;
                    q.push_back(n);
                    comp.push_back(n);
                }
            }
        }
        return comp;
    };

    flood({minx, miny}, 0);  // external complement = label 0
    std::vector<std::vector<Vec2i>> hole_comps;
    for (Vec2i s : std::vector<Vec2i>(squares_)) {
        (void)s;
        break;
    }
    for (int y = miny; y <= maxy; ++y)
        for (int x = minx; x <= maxx; ++x)
            if (label[size_t((y - miny) * W + (x - minx))] == -2)
                hole_comps.push_back(flood({x, y}, 1 + int(hole_comps.size())));

    // trace boundary cycles: directed edges with the domain on the left
    std::set<std::pair<int, int>> pending;  // (vertex id, dir)
    for (int vi = 0; vi < int(vertices_.size()); ++vi) {
        Vec2i v = vertices_[size_t(vi)];
        for (int d = 0; d < 4; ++d) {
            if (!has_vertex(v + kDir[d])) continue;
            if (has_square(left_square(v, d)) && !has_square(right_square(v, d)))
                pending.insert({vi, d});
        }
    }
    struct Traced {
        std::vector<Vec2i> cycle;
        int complement_label;
    };
    std::vector<Traced> traced;
    while (!pending.empty()) {
        auto [v0, d0] = *pending.begin();
        std::vector<Vec2i> cyc;
        int comp_label = label[size_t(cell(right_square(vertices_[size_t(v0)], d0)))];
        int vi = v0, d = d0;
        do {
            pending.erase({vi, d});
            Vec2i v = vertices_[size_t(vi)];
            cyc.push_back(v);
            Vec2i w = v + kDir[d];
            int wi = vertex_index(w);
            // rightmost-turn successor keeps the traced complement on the right
            int nd = -1;
            for (int turn : {3, 0, 1, 2}) {
                int cand = (d + turn) % 4;
                if (pending.count({wi, cand}) ||
                    (wi == v0 && cand == d0 && !(wi == vi && cand == d))) {
                    if (has_square(left_square(w, cand)) && !has_square(right_square(w, cand))) {
                        nd = cand;
                        break;
                    }
                }
            }
            require(nd >= 0, Errc::BadInput, "boundary trace failed");
            vi = wi;
            d = nd;
        } while (!(vi == v0 && d == d0));
        traced.push_back({std::move(cyc), comp_label});
    }

    require(!traced.empty(), Errc::BadInput, "no boundary found");
    std::vector<int> seen_label;
    components_.clear();
    holes_.assign(hole_comps.size(), {});
    // external first
    for (auto& t : traced) {
        seen_label.push_back(t.complement_label);
    }
    // one cycle per complement component expected (no pinches)
    require(traced.size() == hole_comps.size() + 1, Errc::BadInput,
            "boundary cycles do not match complement components");

    std::vector<Traced*> by_label(hole_comps.size() + 1, nullptr);
    for (auto& t : traced) {
        require(t.complement_label >= 0 && t.complement_label <= int(hole_comps.size()) &&
                    by_label[size_t(t.complement_label)] == nullptr,
                Errc::BadInput, "duplicate boundary cycle for a complement component");
        by_label[size_t(t.complement_label)] = &t;
    }

    // order holes by their eventual reference point for determinism
    struct HoleRec {
        std::vector<Vec2i> cycle;
        std::vector<Vec2i> comp;
        Vec2i ref;
    };
    std::vector<HoleRec> recs;
    for (size_t h = 0; h < hole_comps.size(); ++h) {
        Traced* t = by_label[h + 1];
        // traced with domain on left runs clockwise around the hole; store CCW
        std::vector<Vec2i> cyc(t->cycle.rbegin(), t->cycle.rend());
        Vec2i ref = *std::min_element(cyc.begin(), cyc.end());
        recs.push_back({std::move(cyc), std::move(hole_comps[h]), ref});
    }
    std::sort(recs.begin(), recs.end(), [](const HoleRec& a, const HoleRec& b) { return a.ref < b.ref; });

    BoundaryComponent ext;
    ext.index = 0;
    ext.vertex_cycle = by_label[0]->cycle;  // CCW already (domain inside on the left)
    ext.reference_point = *std::min_element(ext.vertex_cycle.begin(), ext.vertex_cycle.end());
    components_.push_back(std::move(ext));
    monodromy_.clear();
    for (size_t h = 0; h < recs.size(); ++h) {
        BoundaryComponent bc;
        bc.index = int(h) + 1;
        bc.vertex_cycle = std::move(recs[h].cycle);
        bc.reference_point = recs[h].ref;
        components_.push_back(std::move(bc));
        holes_[h] = std::move(recs[h].comp);
        int bw = 0;
        for (Vec2i s : holes_[h]) bw += is_black(s) ? 1 : -1;
        monodromy_.push_back(4 * bw);
    }
    for (const auto& c : components_)
        for (Vec2i v : c.vertex_cycle)
            if (!on_boundary_.count(v)) on_boundary_[v] = c.index;
}

void LatticeDomain::build_cuts_() {
    cuts_.cuts.clear();
    std::set<Vec2i> used;  // vertices of earlier cuts
    Vec2i p0 = components_[0].reference_point;
    std::set<Vec2i> external(components_[0].vertex_cycle.begin(), components_[0].vertex_cycle.end());

    for (int h = 1; h <= genus(); ++h) {
        Vec2i start = components_[size_t(h)].reference_point;
        std::unordered_map<Vec2i, Vec2i, Vec2iHash> parent;
        std::deque<Vec2i> q{start};
        parent[start] = start;
        std::optional<Vec2i> goal;
        while (!q.empty() && !goal) {
            Vec2i v = q.front();
            q.pop_front();
            for (int d : {3, 1, 2, 0}) {  // S, N, W, E
                if (!edge_interior(v, d)) continue;
                Vec2i w = v + kDir[d];
                if (parent.count(w) || used.count(w)) continue;
                if (external.count(w) && w != p0) {
                    parent[w] = v;
                    goal = w;
                    break;
                }
                if (on_boundary_.count(w)) continue;  // interior vertices only
                parent[w] = v;
                q.push_back(w);
            }
        }
        require(goal.has_value(), Errc::CutFailure, "no admissible cut path found");
        std::vector<Vec2i> path;
        for (Vec2i v = *goal;; v = parent[v]) {
            path.push_back(v);
            if (v == start) break;
        }
        std::reverse(path.begin(), path.end());
        for (Vec2i v : path) used.insert(v);
        cuts_.cuts.push_back(std::move(path));
    }
}

void LatticeDomain::build_complex() {
    const int F = num_squares();
    UnionFind uf(F * 4);

    std::unordered_map<uint64_t, int> cut_of_edge;  // edge key -> cut index
    for (size_t c = 0; c < cuts_.cuts.size(); ++c) {
        const auto& path = cuts_.cuts[c];
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            int d = dir_index(path[i + 1] - path[i]);
            cut_of_edge[edge_key(path[i], d)] = int(c);
        }
    }

    auto corner_id = [&](int face, Vec2i v) {
        Vec2i s = squares_[size_t(face)];
        for (int c = 0; c < 4; ++c)
            if (s + kCorner[size_t(c)] == v) return face * 4 + c;
        fail(Errc::BadInput, "corner lookup failed");
    };

    // glue corners across every non-cut interior edge
    for (Vec2i v : vertices_) {
        for (int d : {0, 1}) {
            if (!edge_interior(v, d)) continue;
            if (cut_of_edge.count(edge_key(v, d))) continue;
            int fl = square_index(left_square(v, d));
            int fr = square_index(right_square(v, d));
            Vec2i w = v + kDir[d];
            uf.unite(corner_id(fl, v), corner_id(fr, v));
            uf.unite(corner_id(fl, w), corner_id(fr, w));
        }
    }

    // nodes = corner classes
    std::unordered_map<int, int> class_to_node;
    node_vertex_.clear();
    vertex_nodes_.assign(vertices_.size(), {});
    face_corner_node_.assign(size_t(F), {-1, -1, -1, -1});
    for (int f = 0; f < F; ++f) {
        for (int c = 0; c < 4; ++c) {
            int root = uf.find(f * 4 + c);
            auto it = class_to_node.find(root);
            int node;
            if (it == class_to_node.end()) {
                node = int(node_vertex_.size());
                class_to_node[root] = node;
                Vec2i v = squares_[size_t(f)] + kCorner[size_t(c)];
                node_vertex_.push_back(vertex_index(v));
                vertex_nodes_[size_t(vertex_index(v))].push_back(node);
            } else {
                node = it->second;
            }
            face_corner_node_[size_t(f)][size_t(c)] = node;
        }
    }

    canonical_node_.assign(vertices_.size(), -1);
    for (int vi = 0; vi < int(vertices_.size()); ++vi) {
        require(!vertex_nodes_[size_t(vi)].empty(), Errc::BadInput, "vertex without face");
        // canonical arc: the one containing the smallest face id at this vertex
        int best_face = -1, best_node = -1;
        Vec2i v = vertices_[size_t(vi)];
        for (int c = 0; c < 4; ++c) {
            int f = square_index(v - kCorner[size_t(c)]);
            if (f < 0) continue;
            if (best_face < 0 || f < best_face) {
                best_face = f;
                best_node = face_corner_node_[size_t(f)][size_t(c)];
            }
        }
        canonical_node_[size_t(vi)] = best_node;
    }

    // complex edges
    complex_edges_.clear();
    for (Vec2i v : vertices_) {
        for (int d : {0, 1}) {
            if (!has_edge(v, d)) continue;
            Vec2i w = v + kDir[d];
            int fl = square_index(left_square(v, d));
            int fr = square_index(right_square(v, d));
            bool is_cut = cut_of_edge.count(edge_key(v, d)) != 0;
            if (is_cut) {
                for (int f : {fl, fr}) {
                    complex_edges_.push_back(
                        {face_corner_node_[size_t(f)][size_t(corner_id(f, v) % 4)],
                         face_corner_node_[size_t(f)][size_t(corner_id(f, w) % 4)], v, d});
                }
            } else {
                int f = fl >= 0 ? fl : fr;
                complex_edges_.push_back(
                    {face_corner_node_[size_t(f)][size_t(corner_id(f, v) % 4)],
                     face_corner_node_[size_t(f)][size_t(corner_id(f, w) % 4)], v, d});
            }
        }
    }

    // deck offsets: chain the two sides of each cut through the doubled edges,
    // then identify the +e_i side by walking the hole cycle
    node_offset_.assign(node_vertex_.size(), std::vector<int>(size_t(genus()), 0));
    if (genus() > 0) {
        UnionFind chains(int(node_vertex_.size()));
        std::vector<std::set<int>> cut_vertices(cuts_.cuts.size());
        for (size_t c = 0; c < cuts_.cuts.size(); ++c)
            for (Vec2i v : cuts_.cuts[c]) cut_vertices[c].insert(vertex_index(v));
        for (Vec2i v : vertices_) {
            for (int d : {0, 1}) {
                if (!has_edge(v, d)) continue;
                auto it = cut_of_edge.find(edge_key(v, d));
                if (it == cut_of_edge.end()) continue;
                Vec2i w = v + kDir[d];
                for (int f : {square_index(left_square(v, d)), square_index(right_square(v, d))}) {
                    chains.unite(face_corner_node_[size_t(f)][size_t(corner_id(f, v) % 4)],
                                 face_corner_node_[size_t(f)][size_t(corner_id(f, w) % 4)]);
                }
            }
        }
        for (int h = 1; h <= genus(); ++h) {
            const auto& cyc = components_[size_t(h)].vertex_cycle;
            Vec2i pi = cuts_.cuts[size_t(h - 1)].front();
            // locate pi in the (CCW) cycle
            size_t pos = 0;
            while (cyc[pos] != pi) ++pos;
            auto arc_of_boundary_edge = [&](Vec2i a, Vec2i b, Vec2i at) {
                int d = dir_index(b - a);
                int f = square_index(left_square(a, d));
                if (f < 0) f = square_index(right_square(a, d));
                return face_corner_node_[size_t(f)][size_t(corner_id(f, at) % 4)];
            };
            Vec2i nxt = cyc[(pos + 1) % cyc.size()];
            Vec2i prv = cyc[(pos + cyc.size() - 1) % cyc.size()];
            int arc_start = arc_of_boundary_edge(pi, nxt, pi);   // cycle leaves through this arc
            int arc_end = arc_of_boundary_edge(prv, pi, pi);     // ...and returns to this one
            require(arc_start != arc_end, Errc::CutFailure, "cut does not split its base point");
            int plus_chain = chains.find(arc_end);  // value(arc_end) = value(arc_start) + m
            for (int vi : cut_vertices[size_t(h - 1)]) {
                for (int node : vertex_nodes_[size_t(vi)]) {
                    if (node == canonical_node_[size_t(vi)]) continue;
                    bool canon_plus = chains.find(canonical_node_[size_t(vi)]) == plus_chain;
                    bool node_plus = chains.find(node) == plus_chain;
                    if (node_plus == canon_plus) continue;  // different cut
                    node_offset_[size_t(node)][size_t(h - 1)] = node_plus ? 1 : -1;
                }
            }
        }
    }

    require(cut_open_euler_characteristic() == 1, Errc::CutFailure,
            "cut-open complex is not simply-connected");

    // residues mod 4 via BFS over the complex
    residue_.assign(node_vertex_.size(), -1);
    std::vector<std::vector<std::pair<int, int>>> adj(node_vertex_.size());  // (node, delta)
    for (const auto& e : complex_edges_) {
        int delta = edge_delta(e.from, e.dir);
        adj[size_t(e.node_a)].push_back({e.node_b, delta});
        adj[size_t(e.node_b)].push_back({e.node_a, -delta});
    }
    int root = canonical_node_[size_t(vertex_index(base_point()))];
    residue_[size_t(root)] = 0;
    std::deque<int> q{root};
    while (!q.empty()) {
        int n = q.front();
        q.pop_front();
        for (auto [m, delta] : adj[size_t(n)]) {
            if (residue_[size_t(m)] < 0) {
                residue_[size_t(m)] = ((residue_[size_t(n)] + delta) % 4 + 4) % 4;
                q.push_back(m);
            }
        }
    }
    for (int r : residue_) require(r >= 0, Errc::CutFailure, "cut-open complex disconnected");
}

int LatticeDomain::cut_open_euler_characteristic() const {
    return int(node_vertex_.size()) - int(complex_edges_.size()) + num_squares();
}

int monodromy_by_traversal(const LatticeDomain& d, const std::vector<Vec2i>& loop) {
    require(loop.size() >= 2 && loop.front() == loop.back(), Errc::OpenPath,
            "loop must be closed (first == last)");
    int sum = 0;
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
        Vec2i step = loop[i + 1] - loop[i];
        require(std::abs(step.x) + std::abs(step.y) == 1, Errc::OpenPath, "non-unit step in loop");
        int dir = dir_index(step);
        require(d.has_edge(loop[i], dir), Errc::OpenPath, "loop leaves the domain");
        sum += edge_delta(loop[i], dir);
    }
    return sum;
}

std::vector<int> loop_winding(const LatticeDomain& d, const std::vector<Vec2i>& loop) {
    require(loop.size() >= 2 && loop.front() == loop.back(), Errc::OpenPath, "loop not closed");
    std::vector<int> wind(size_t(d.genus()), 0);
    for (int h = 1; h <= d.genus(); ++h) {
        Vec2i witness = d.hole_squares(h).front();  // ray goes up from its center
        int w = 0;
        for (size_t i = 0; i + 1 < loop.size(); ++i) {
            Vec2i a = loop[i], b = loop[i + 1];
            if (a.y != b.y) continue;              // horizontal steps only
            if (a.y <= witness.y) continue;        // strictly above the center
            int xmin = std::min(a.x, b.x);
            if (xmin != witness.x) continue;       // spans the half-integer abscissa
            w += (b.x > a.x) ? -1 : 1;             // right-to-left crossing is CCW+
        }
        wind[size_t(h - 1)] = w;
    }
    return wind;
}

int square_winding(const std::vector<Vec2i>& loop, Vec2i square) {
    int w = 0;
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
        Vec2i a = loop[i], b = loop[i + 1];
        if (a.y != b.y) continue;
        if (a.y <= square.y) continue;
        if (std::min(a.x, b.x) != square.x) continue;
        w += (b.x > a.x) ? -1 : 1;
    }
    return w;
}

int enclosed_color_sum(const LatticeDomain& d, const std::vector<Vec2i>& loop) {
    require(loop.size() >= 2 && loop.front() == loop.back(), Errc::OpenPath, "loop not closed");
    int minx = loop[0].x, maxx = loop[0].x, miny = loop[0].y, maxy = loop[0].y;
    for (Vec2i v : loop) {
        minx = std::min(minx, v.x);
        maxx = std::max(maxx, v.x);
        miny = std::min(miny, v.y);
        maxy = std::max(maxy, v.y);
    }
    (void)d;
    int sum = 0;
    for (int x = minx - 1; x <= maxx; ++x)
        for (int y = miny - 1; y <= maxy; ++y) {
            Vec2i s{x, y};
            int w = square_winding(loop, s);
            if (w != 0) sum += w * (is_black(s) ? 1 : -1);
        }
    return 4 * sum;
}

int flood_fill_component_count(const LatticeDomain& d) {
    const auto& squares = d.squares();
    int minx = squares[0].x, maxx = squares[0].x, miny = squares[0].y, maxy = squares[0].y;
    for (Vec2i s : squares) {
        minx = std::min(minx, s.x);
        maxx = std::max(maxx, s.x);
        miny = std::min(miny, s.y);
        maxy = std::max(maxy, s.y);
    }
    --minx; --miny; ++maxx; ++maxy;
    int W = maxx - minx + 1, H = maxy - miny + 1;
    std::vector<int> label(size_t(W) * size_t(H), -2);
    auto cell = [&](int x, int y) { return size_t((y - miny) * W + (x - minx)); };
    for (Vec2i s : squares) label[cell(s.x, s.y)] = -1;
    int comps = 0;
    for (int y = miny; y <= maxy; ++y) {
        for (int x = minx; x <= maxx; ++x) {
            if (label[cell(x, y)] != -2) continue;
            ++comps;
            std::deque<Vec2i> q{{x, y}};
            label[cell(x, y)] = comps;
            while (!q.empty()) {
                Vec2i s = q.front();
                q.pop_front();
                for (Vec2i dd : kDir) {
                    Vec2i n = s + dd;
                    if (n.x < minx || n.x > maxx || n.y < miny || n.y > maxy) continue;
                    if (label[cell(n.x, n.y)] == -2) {
                        label[cell(n.x, n.y)] = comps;
                        q.push_back(n);
                    }
                }
            }
        }
    }
    return comps;  // external + holes
}

int beta_distance(const LatticeDomain& d, Vec2i p, Vec2i q) {
    require(d.has_vertex(p) && d.has_vertex(q), Errc::BadInput, "beta endpoints must be vertices");
    if (p == q) return 0;
    std::vector<int> dist(size_t(d.num_vertices()), -1);
    std::deque<int> queue;
    int pi = d.vertex_index(p), qi = d.vertex_index(q);
    dist[size_t(pi)] = 0;
    queue.push_back(pi);
    while (!queue.empty()) {
        int vi = queue.front();
        queue.pop_front();
        if (vi == qi) return dist[size_t(vi)];
        Vec2i v = d.vertices()[size_t(vi)];
        for (int dir = 0; dir < 4; ++dir) {
            if (!d.has_edge(v, dir) || edge_delta(v, dir) != 1) continue;
            int wi = d.vertex_index(v + kDir[dir]);
            if (wi >= 0 && dist[size_t(wi)] < 0) {
                dist[size_t(wi)] = dist[size_t(vi)] + 1;
                queue.push_back(wi);
            }
        }
    }
    fail(Errc::Unreachable, "no black-left path between the points");
}

int beta_closed_form(Vec2i x, Vec2i y) {
    int i = y.x - x.x, j = y.y - x.y;
    int u = std::abs(i), v = std::abs(j);
    int L = std::max(u, v);
    int kappa = (u + v) & 1;
    if (kappa == 0) return 2 * L;
    bool even_start = ((x.x + x.y) & 1) == 0;
    // even vertices move vertically first, odd vertices horizontally
    int sign = even_start == (u > v) ? 1 : -1;
    return 2 * L + sign;
}

}  // namespace domino
