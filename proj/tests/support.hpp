#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "domino/lattice.hpp"
#include "domino/rng.hpp"

namespace domino::testing {

/// Random closed walk: a fundamental cycle of a random spanning tree (tree
/// path between the endpoints of a random non-tree edge, closed by it).
inline std::vector<Vec2i> random_fundamental_loop(const LatticeDomain& d, Rng& rng) {
    int n = d.num_vertices();
    std::vector<int> parent(size_t(n), -1);
    // random root, random expansion order
    int root = rng.below_int(n);
    std::deque<int> q{root};
    parent[size_t(root)] = root;
    std::vector<std::pair<int, int>> non_tree;
    while (!q.empty()) {
        int vi = q.front();
        q.pop_front();
        Vec2i v = d.vertices()[size_t(vi)];
        int shift = rng.below_int(4);
        for (int k = 0; k < 4; ++k) {
            int dir = (k + shift) % 4;
            if (!d.has_edge(v, dir)) continue;
            int wi = d.vertex_index(v + kDir[dir]);
            if (wi < 0) continue;
            if (parent[size_t(wi)] < 0) {
                parent[size_t(wi)] = vi;
                q.push_back(wi);
            } else if (wi != parent[size_t(vi)] && vi != parent[size_t(wi)] && vi < wi) {
                non_tree.push_back({vi, wi});
            }
        }
    }
    if (non_tree.empty()) return {};
    auto [u, w] = non_tree[rng.below(non_tree.size())];
    auto chain = [&](int x) {
        std::vector<int> c{x};
        while (c.back() != root) c.push_back(parent[size_t(c.back())]);
        return c;
    };
    std::vector<int> cu = chain(u), cw = chain(w);
    std::vector<Vec2i> loop;
    for (int x : cu) loop.push_back(d.vertices()[size_t(x)]);
    for (auto it = cw.rbegin() + 1; it != cw.rend(); ++it)
        loop.push_back(d.vertices()[size_t(*it)]);
    loop.push_back(d.vertices()[size_t(u)]);
    return loop;
}

}  // namespace domino::testing
