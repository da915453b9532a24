#include "domino/heights.hpp"

#include <algorithm>
#include <deque>
#include <deque>
#include <set>
#include <sstream>

namespace domino {

namespace {

std::string vec_str(Vec2i v) {
    std::ostringstream os;
    os << "(" << v.x << "," << v.y << ")";
    return os.str();
}

int dot(const std::vector<int>& a, const std::vector<int>& b) {
    int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Height increment along the directed step (from, dir), given whether the
/// stepped-over edge is crossed by a domino.
int height_delta(Vec2i from, int dir, bool marked) {
    int d = edge_delta(from, dir);  // +1 black-left, -1 white-left
    if (!marked) return d;
    return d == 1 ? -3 : 3;
}

struct MarkedSet {
    std::set<std::pair<Vec2i, int>> edges;  // normalized (vertex, axis 0/1)

    static std::pair<Vec2i, int> norm(Vec2i v, int dir) {
        if (dir == 2) return {v + kDir[2], 0};
        if (dir == 3) return {v + kDir[3], 1};
        return {v, dir};
    }
    bool contains(Vec2i v, int dir) const { return edges.count(norm(v, dir)) != 0; }
    void insert(Vec2i v, int dir) { edges.insert(norm(v, dir)); }
};

MarkedSet marked_edges_of_tiling(const LatticeDomain& d, const Tiling& t) {
    require(t.partner.size() == size_t(d.num_squares()), Errc::InconsistentTiling,
            "tiling size mismatch");
    MarkedSet m;
    for (int s = 0; s < d.num_squares(); ++s) {
        int p = t.partner[size_t(s)];
        require(p >= 0 && p < d.num_squares() && p != s, Errc::InconsistentTiling,
                "square " + vec_str(d.squares()[size_t(s)]) + " unmatched");
        require(t.partner[size_t(p)] == s, Errc::InconsistentTiling, "asymmetric matching");
        Vec2i a = d.squares()[size_t(s)], b = d.squares()[size_t(p)];
        Vec2i diff = b - a;
        require(std::abs(diff.x) + std::abs(diff.y) == 1, Errc::InconsistentTiling,
                "domino squares not adjacent");
        require(is_black(a) != is_black(b), Errc::InconsistentTiling, "domino not bicolored");
        if (s < p) {
            // shared edge of the two squares
            if (diff == kDir[0]) m.insert({a.x + 1, a.y}, 1);       // partner to the east
            else if (diff == kDir[2]) m.insert({a.x, a.y}, 1);      // west
            else if (diff == kDir[1]) m.insert({a.x, a.y + 1}, 0);  // north
            else m.insert({a.x, a.y}, 0);                           // south
        }
    }
    return m;
}

}  // namespace

std::vector<std::pair<Vec2i, Vec2i>> Tiling::dominoes(const LatticeDomain& d) const {
    std::vector<std::pair<Vec2i, Vec2i>> out;
    for (int s = 0; s < int(partner.size()); ++s) {
        int p = partner[size_t(s)];
        if (s < p) out.push_back({d.squares()[size_t(s)], d.squares()[size_t(p)]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

Tiling tiling_from_dominoes(const LatticeDomain& d,
                            const std::vector<std::pair<Vec2i, Vec2i>>& dominoes) {
    Tiling t;
    t.partner.assign(size_t(d.num_squares()), -1);
    for (auto& [a, b] : dominoes) {
        int ia = d.square_index(a), ib = d.square_index(b);
        require(ia >= 0 && ib >= 0, Errc::InconsistentTiling, "domino square outside domain");
        require(t.partner[size_t(ia)] < 0 && t.partner[size_t(ib)] < 0, Errc::InconsistentTiling,
                "square covered twice");
        t.partner[size_t(ia)] = ib;
        t.partner[size_t(ib)] = ia;
    }
    for (int s = 0; s < d.num_squares(); ++s)
        require(t.partner[size_t(s)] >= 0, Errc::InconsistentTiling,
                "square " + vec_str(d.squares()[size_t(s)]) + " uncovered");
    return t;
}

int HeightFunction::value_at(const CoverPoint& p) const {
    int vi = domain->vertex_index(p.vertex);
    require(vi >= 0, Errc::BadInput, "vertex outside domain");
    require(p.deck.size() == size_t(domain->genus()), Errc::BadInput, "deck length mismatch");
    return values[size_t(vi)] + dot(p.deck, domain->monodromy_vector());
}

HeightFunction height_from_tiling(const DomainPtr& domain, const Tiling& tiling,
                                  std::optional<int> base) {
    const LatticeDomain& d = *domain;
    MarkedSet marked = marked_edges_of_tiling(d, tiling);

    // integrate over a spanning tree of the cut-open complex
    std::vector<std::vector<std::tuple<int, Vec2i, int>>> adj(size_t(d.num_nodes()));
    for (const auto& e : d.complex_edges()) {
        adj[size_t(e.node_a)].push_back({e.node_b, e.from, e.dir});
        adj[size_t(e.node_b)].push_back({e.node_a, e.from, e.dir});  // reversed below
    }
    std::vector<int> val(size_t(d.num_nodes()), INT32_MIN);
    int root = d.canonical_node(d.vertex_index(d.base_point()));
    val[size_t(root)] = base.value_or(0);
    std::deque<int> q{root};
    while (!q.empty()) {
        int n = q.front();
        q.pop_front();
        for (auto& [nb, from, dir] : adj[size_t(n)]) {
            if (val[size_t(nb)] != INT32_MIN) continue;
            int delta = height_delta(from, dir, marked.contains(from, dir));
            bool forward = d.node_vertex(n) == d.vertex_index(from);
            val[size_t(nb)] = val[size_t(n)] + (forward ? delta : -delta);
            q.push_back(nb);
        }
    }

    // every edge (tree or not) must agree: path-independence on the disk
    for (const auto& e : d.complex_edges()) {
        int delta = height_delta(e.from, e.dir, marked.contains(e.from, e.dir));
        require(val[size_t(e.node_b)] - val[size_t(e.node_a)] == delta, Errc::InconsistentTiling,
                "height integration inconsistent near " + vec_str(e.from));
    }

    HeightFunction h;
    h.domain = domain;
    h.values.assign(size_t(d.num_vertices()), 0);
    for (int v = 0; v < d.num_vertices(); ++v) h.values[size_t(v)] = val[size_t(d.canonical_node(v))];
    // seam copies must be the deck translates they claim to be
    const auto& m = d.monodromy_vector();
    for (int n = 0; n < d.num_nodes(); ++n) {
        int v = d.node_vertex(n);
        require(val[size_t(n)] == h.values[size_t(v)] + dot(d.node_offset(n), m),
                Errc::InconsistentTiling, "seam offset mismatch");
    }
    for (int i = 1; i <= d.genus(); ++i) {
        Vec2i pi = d.boundary_components()[size_t(i)].reference_point;
        h.height_change.push_back(h.values[size_t(d.vertex_index(pi))]);
    }
    return h;
}

namespace {

/// Signed increment table of a height function along all complex edges,
/// with seam offsets applied; returns false on first local-rule violation.
/// Marked edges (|delta| = 3) are only allowed on interior edges.
bool check_local_rule(const HeightFunction& h, std::string* where) {
    const LatticeDomain& d = *h.domain;
    const auto& m = d.monodromy_vector();
    for (const auto& e : d.complex_edges()) {
        int va = h.values[size_t(d.node_vertex(e.node_a))] + dot(d.node_offset(e.node_a), m);
        int vb = h.values[size_t(d.node_vertex(e.node_b))] + dot(d.node_offset(e.node_b), m);
        int delta = vb - va;
        bool interior = d.edge_interior(e.from, e.dir);
        bool ok;
        if (edge_delta(e.from, e.dir) == 1)
            ok = delta == 1 || (interior && delta == -3);
        else
            ok = delta == -1 || (interior && delta == 3);
        if (!ok) {
            if (where) *where = vec_str(e.from);
            return false;
        }
    }
    return true;
}

}  // namespace

bool is_valid_height(const HeightFunction& h) { return check_local_rule(h, nullptr); }

Tiling tiling_from_height(const HeightFunction& h) {
    const LatticeDomain& d = *h.domain;
    require(h.values.size() == size_t(d.num_vertices()), Errc::NotAHeightFunction, "size mismatch");
    for (int v = 0; v < d.num_vertices(); ++v) {
        int r = ((h.values[size_t(v)] % 4) + 4) % 4;
        require(r == d.residue_mod4(v), Errc::NotAHeightFunction,
                "mod-4 class violated at " + vec_str(d.vertices()[size_t(v)]));
    }
    std::string where;
    require(check_local_rule(h, &where), Errc::NotAHeightFunction, "local rule violated near " + where);

    const auto& m = d.monodromy_vector();
    auto node_val = [&](int node) {
        return h.values[size_t(d.node_vertex(node))] + dot(d.node_offset(node), m);
    };

    Tiling t;
    t.partner.assign(size_t(d.num_squares()), -1);
    for (int s = 0; s < d.num_squares(); ++s) {
        Vec2i sq = d.squares()[size_t(s)];
        // CCW corners and the neighbor square across each CCW edge
        const std::array<Vec2i, 4> nbr = {Vec2i{sq.x, sq.y - 1}, Vec2i{sq.x + 1, sq.y},
                                          Vec2i{sq.x, sq.y + 1}, Vec2i{sq.x - 1, sq.y}};
        int marked_count = 0, partner_sq = -1;
        for (int c = 0; c < 4; ++c) {
            int a = d.face_corner_node(s, c);
            int b = d.face_corner_node(s, (c + 1) % 4);
            if (std::abs(node_val(b) - node_val(a)) == 3) {
                ++marked_count;
                partner_sq = d.square_index(nbr[size_t(c)]);
            }
        }
        require(marked_count == 1, Errc::NotAHeightFunction,
                "square " + vec_str(sq) + " has " + std::to_string(marked_count) + " marked edges");
        require(partner_sq >= 0, Errc::NotAHeightFunction,
                "marked edge of " + vec_str(sq) + " lies on the boundary");
        t.partner[size_t(s)] = partner_sq;
    }
    for (int s = 0; s < d.num_squares(); ++s)
        require(t.partner[size_t(t.partner[size_t(s)])] == s, Errc::NotAHeightFunction,
                "marked edges do not pair up");
    return t;
}

namespace {

void check_compatible(const HeightFunction& a, const HeightFunction& b) {
    require(a.domain == b.domain, Errc::IncompatibleHeights, "different domains");
    int p0 = a.domain->vertex_index(a.domain->base_point());
    require(((a.values[size_t(p0)] - b.values[size_t(p0)]) % 4) == 0, Errc::IncompatibleHeights,
            "base values differ mod 4");
}

}  // namespace

HeightFunction pointwise_max(const HeightFunction& a, const HeightFunction& b) {
    check_compatible(a, b);
    HeightFunction out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = std::max(a.values[i], b.values[i]);
    for (size_t i = 0; i < out.height_change.size(); ++i)
        out.height_change[i] = std::max(a.height_change[i], b.height_change[i]);
    return out;
}

HeightFunction pointwise_min(const HeightFunction& a, const HeightFunction& b) {
    check_compatible(a, b);
    HeightFunction out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = std::min(a.values[i], b.values[i]);
    for (size_t i = 0; i < out.height_change.size(); ++i)
        out.height_change[i] = std::min(a.height_change[i], b.height_change[i]);
    return out;
}

bool mod4_check(const HeightFunction& a, const HeightFunction& b) {
    require(a.domain == b.domain, Errc::IncompatibleHeights, "different domains");
    for (size_t i = 0; i < a.values.size(); ++i)
        if (((a.values[i] - b.values[i]) % 4) != 0) return false;
    return true;
}

namespace {

/// Cover graph for extension solves: nodes are (vertex, deck) with deck in a
/// box of radius `rad` per hole; edges are the complex edges shifted by the
/// seam offsets, traversable in their black-left direction.
struct CoverGraph {
    const LatticeDomain& d;
    int rad;
    int layers;                    // (2 rad + 1)^g
    std::vector<int> strides;

    explicit CoverGraph(const LatticeDomain& dom, int radius) : d(dom), rad(radius) {
        int g = d.genus();
        layers = 1;
        strides.assign(size_t(g), 0);
        for (int i = 0; i < g; ++i) {
            strides[size_t(i)] = layers;
            layers *= 2 * rad + 1;
        }
    }
    int num_nodes() const { return layers * d.num_vertices(); }
    /// -1 if the deck leaves the box.
    int node(int vertex, const std::vector<int>& deck) const {
        int layer = 0;
        for (int i = 0; i < d.genus(); ++i) {
            if (std::abs(deck[size_t(i)]) > rad) return -1;
            layer += (deck[size_t(i)] + rad) * strides[size_t(i)];
        }
        return layer * d.num_vertices() + vertex;
    }
    std::vector<int> deck_of(int node) const {
        int layer = node / d.num_vertices();
        std::vector<int> deck(size_t(d.genus()));
        for (int i = 0; i < d.genus(); ++i) {
            deck[size_t(i)] = layer % (2 * rad + 1) - rad;
            layer /= 2 * rad + 1;
        }
        return deck;
    }
    int vertex_of(int node) const { return node % d.num_vertices(); }

    /// Directed edges (u -> v) of unit length: black square on the left.
    std::vector<std::vector<int>> forward_adj() const {
        std::vector<std::vector<int>> adj(static_cast<size_t>(num_nodes()));
        for_each_cover_edge([&](int na, int nb, bool black_a_to_b, bool) {
            if (black_a_to_b) adj[size_t(na)].push_back(nb);
            else adj[size_t(nb)].push_back(na);
        });
        return adj;
    }

    /// Weighted digraph of maximal height increments: +1 along black-left
    /// steps; +3 along interior white-left steps; -1 along boundary
    /// white-left steps (no marked boundary edges). reversed flips arrows.
    std::vector<std::vector<std::pair<int, int>>> increment_adj(bool reversed) const {
        std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(num_nodes()));
        auto add = [&](int u, int v, int c) {
            if (reversed) adj[size_t(v)].push_back({u, c});
            else adj[size_t(u)].push_back({v, c});
        };
        for_each_cover_edge([&](int na, int nb, bool black_a_to_b, bool interior) {
            int white_cost = interior ? 3 : -1;
            if (black_a_to_b) {
                add(na, nb, 1);
                add(nb, na, white_cost);
            } else {
                add(nb, na, 1);
                add(na, nb, white_cost);
            }
        });
        return adj;
    }

    template <class F>
    void for_each_cover_edge(F&& emit) const {
        std::vector<int> deck(size_t(d.genus()), 0);
        for (const auto& e : d.complex_edges()) {
            int va = d.node_vertex(e.node_a), vb = d.node_vertex(e.node_b);
            const auto& oa = d.node_offset(e.node_a);
            const auto& ob = d.node_offset(e.node_b);
            bool a_to_b = edge_delta(e.from, e.dir) == 1;
            bool interior = d.edge_interior(e.from, e.dir);
            for (int layer = 0; layer < layers; ++layer) {
                int rem = layer;
                for (int i = 0; i < d.genus(); ++i) {
                    deck[size_t(i)] = rem % (2 * rad + 1) - rad;
                    rem /= 2 * rad + 1;
                }
                std::vector<int> da = deck, db = deck;
                for (int i = 0; i < d.genus(); ++i) {
                    da[size_t(i)] += oa[size_t(i)];
                    db[size_t(i)] += ob[size_t(i)];
                }
                int na = node(va, da), nb = node(vb, db);
                if (na < 0 || nb < 0) continue;
                emit(na, nb, a_to_b, interior);
            }
        }
    }
};

HeightFunction extension_impl(const DomainPtr& domain, const std::map<Vec2i, int>& partial,
                              bool maximal, bool validate_extends = true) {
    const LatticeDomain& d = *domain;
    require(!partial.empty(), Errc::NotExtendable, "empty partial data");
    for (auto& [v, val] : partial) {
        int vi = d.vertex_index(v);
        require(vi >= 0, Errc::NotExtendable, "datum at " + vec_str(v) + " outside domain");
        require(((val % 4) + 4) % 4 == d.residue_mod4(vi), Errc::NotExtendable,
                "datum at " + vec_str(v) + " violates the mod-4 class");
    }

    const int rad = 2;
    CoverGraph cg(d, rad);
    // upper envelopes propagate along maximal increments; the lower
    // envelope of min_extension is the same problem on the reversed graph
    auto adj = cg.increment_adj(/*reversed=*/!maximal);

    const auto& m = d.monodromy_vector();
    const int64_t INF = INT64_MAX / 4;
    std::vector<int64_t> dist(size_t(cg.num_nodes()), INF);
    std::vector<int> origin(size_t(cg.num_nodes()), -1);  // source vertex id
    std::vector<char> queued(size_t(cg.num_nodes()), 0);
    std::vector<int> relax_count(size_t(cg.num_nodes()), 0);
    std::deque<int> queue;

    std::vector<int> deck(size_t(d.genus()), 0);
    for (auto& [v, val] : partial) {
        int vi = d.vertex_index(v);
        for (int layer = 0; layer < cg.layers; ++layer) {
            int rem = layer;
            int64_t shift = 0;
            for (int i = 0; i < d.genus(); ++i) {
                deck[size_t(i)] = rem % (2 * rad + 1) - rad;
                rem /= 2 * rad + 1;
                shift += int64_t(deck[size_t(i)]) * m[size_t(i)];
            }
            int n = layer * d.num_vertices() + vi;
            int64_t init = maximal ? val + shift : -(val + shift);
            if (init < dist[size_t(n)]) {
                dist[size_t(n)] = init;
                origin[size_t(n)] = vi;
                if (!queued[size_t(n)]) {
                    queued[size_t(n)] = 1;
                    queue.push_back(n);
                }
            }
        }
    }
    // label-correcting search; boundary rigidity makes some costs negative,
    // and a negative cycle means the domain has no height function at all
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        queued[size_t(u)] = 0;
        for (auto [v, c] : adj[size_t(u)]) {
            if (dist[size_t(u)] + c < dist[size_t(v)]) {
                dist[size_t(v)] = dist[size_t(u)] + c;
                origin[size_t(v)] = origin[size_t(u)];
                require(++relax_count[size_t(v)] <= cg.num_nodes() + 1, Errc::NotExtendable,
                        "no height function exists on this domain (untileable)");
                if (!queued[size_t(v)]) {
                    queued[size_t(v)] = 1;
                    queue.push_back(v);
                }
            }
        }
    }

    HeightFunction h;
    h.domain = domain;
    h.values.assign(size_t(d.num_vertices()), 0);
    std::vector<int> zero(size_t(d.genus()), 0);
    for (int v = 0; v < d.num_vertices(); ++v) {
        int n = cg.node(v, zero);
        require(dist[size_t(n)] < INF, Errc::NotExtendable,
                "vertex " + vec_str(d.vertices()[size_t(v)]) + " unreachable from the data");
        h.values[size_t(v)] = int(maximal ? dist[size_t(n)] : -dist[size_t(n)]);
    }
    for (int i = 1; i <= d.genus(); ++i) {
        Vec2i pi = d.boundary_components()[size_t(i)].reference_point;
        h.height_change.push_back(h.values[size_t(d.vertex_index(pi))]);
    }

    // the result must extend the data; a mismatch names a violating pair
    for (auto& [v, val] : partial) {
        if (!validate_extends) break;
        int vi = d.vertex_index(v);
        if (h.values[size_t(vi)] != val) {
            int n = cg.node(vi, zero);
            Vec2i culprit = origin[size_t(n)] >= 0 ? d.vertices()[size_t(origin[size_t(n)])] : v;
            fail(Errc::NotExtendable, "data at " + vec_str(v) + " and " + vec_str(culprit) +
                                          " violate the lattice Lipschitz bound");
        }
    }
    std::string where;
    require(check_local_rule(h, &where), Errc::NotExtendable,
            "extension fails the local rule near " + where + " (data not extendable)");
    return h;
}

}  // namespace

HeightFunction max_extension(const DomainPtr& domain, const std::map<Vec2i, int>& partial) {
    return extension_impl(domain, partial, true);
}

HeightFunction min_extension(const DomainPtr& domain, const std::map<Vec2i, int>& partial) {
    return extension_impl(domain, partial, false);
}

HeightFunction height_upper_envelope(const DomainPtr& domain,
                                     const std::map<Vec2i, int>& targets) {
    return extension_impl(domain, targets, true, /*validate_extends=*/false);
}

std::map<Vec2i, int> boundary_heights(const LatticeDomain& d, const std::vector<int>& R) {
    require(R.size() == size_t(d.genus()), Errc::BadInput, "height change length != genus");
    const auto& m = d.monodromy_vector();
    std::map<Vec2i, int> out;

    for (const auto& comp : d.boundary_components()) {
        const auto& cyc = comp.vertex_cycle;
        // start the walk at the reference point
        size_t pos = 0;
        while (cyc[pos] != comp.reference_point) ++pos;
        int start_value = comp.index == 0 ? 0 : R[size_t(comp.index - 1)];

        auto arc_at = [&](Vec2i a, Vec2i b, Vec2i at) {
            int dir = dir_index(b - a);
            int f = d.square_index(left_square(a, dir));
            if (f < 0) f = d.square_index(right_square(a, dir));
            Vec2i s = d.squares()[size_t(f)];
            for (int c = 0; c < 4; ++c) {
                Vec2i corner = {s.x + (c == 1 || c == 2), s.y + (c >= 2)};
                if (corner == at) return d.face_corner_node(f, c);
            }
            fail(Errc::BadInput, "arc lookup failed");
        };

        size_t L = cyc.size();
        Vec2i first = cyc[pos], second = cyc[(pos + 1) % L];
        int node = arc_at(first, second, first);
        // canonical value at the reference point is the prescribed one
        int val = start_value + dot(d.node_offset(node), m);
        for (size_t k = 0; k < L; ++k) {
            Vec2i a = cyc[(pos + k) % L];
            Vec2i b = cyc[(pos + k + 1) % L];
            int dir = dir_index(b - a);
            int na = arc_at(a, b, a);
            int nb = arc_at(a, b, b);
            // jump decks if the walk re-enters this vertex on another arc
            if (k > 0) {
                int prev_arc = arc_at(cyc[(pos + k - 1) % L], a, a);
                val += dot(d.node_offset(na), m) - dot(d.node_offset(prev_arc), m);
            }
            int canon = val - dot(d.node_offset(na), m);
            auto it = out.find(a);
            if (it == out.end()) out[a] = canon;
            else require(it->second == canon, Errc::BadInput, "boundary walk inconsistent");
            val += edge_delta(a, dir);
            (void)nb;
        }
        // closure: returning to the start arc must reproduce the start value
        int last_arc = arc_at(cyc[(pos + L - 1) % L], first, first);
        int closed = val + dot(d.node_offset(node), m) - dot(d.node_offset(last_arc), m);
        require(closed == start_value + dot(d.node_offset(node), m), Errc::BadInput,
                "boundary cycle fails to close");
    }
    return out;
}

int beta_cover(const LatticeDomain& d, const CoverPoint& from, const CoverPoint& to) {
    int rad = 2;
    for (int x : from.deck) rad = std::max(rad, std::abs(x) + 1);
    for (int x : to.deck) rad = std::max(rad, std::abs(x) + 1);
    CoverGraph cg(d, rad);
    auto adj = cg.forward_adj();
    int s = cg.node(d.vertex_index(from.vertex), from.deck);
    int t = cg.node(d.vertex_index(to.vertex), to.deck);
    require(s >= 0 && t >= 0, Errc::BadInput, "cover point outside search window");
    std::vector<int> dist(size_t(cg.num_nodes()), -1);
    std::deque<int> q{s};
    dist[size_t(s)] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (u == t) return dist[size_t(u)];
        for (int v : adj[size_t(u)])
            if (dist[size_t(v)] < 0) {
                dist[size_t(v)] = dist[size_t(u)] + 1;
                q.push_back(v);
            }
    }
    fail(Errc::Unreachable, "no black-left path between the cover points");
}

std::pair<int, int> height_change_bounds(const LatticeDomain& d, int hole) {
    Vec2i p0 = d.base_point();
    Vec2i pi = d.boundary_components()[size_t(hole)].reference_point;
    return {-beta_distance(d, pi, p0), beta_distance(d, p0, pi)};
}

}  // namespace domino
