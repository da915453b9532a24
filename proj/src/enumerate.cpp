#include "domino/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace domino {

namespace {

struct Backtracker {
    const LatticeDomain& d;
    std::vector<int> order;    // position in fill order -> square id
    std::vector<int> pos;      // square id -> position
    std::vector<int> partner;  // working matching
    const std::function<void(const Tiling&)>& visit;

    Backtracker(const LatticeDomain& dom, bool column_major,
                const std::function<void(const Tiling&)>& v)
        : d(dom), visit(v) {
        order.resize(size_t(d.num_squares()));
        std::iota(order.begin(), order.end(), 0);
        if (column_major) {
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                Vec2i sa = d.squares()[size_t(a)], sb = d.squares()[size_t(b)];
                return sa.y != sb.y ? sa.y < sb.y : sa.x < sb.x;
            });
        }
        pos.resize(order.size());
        for (int i = 0; i < int(order.size()); ++i) pos[size_t(order[size_t(i)])] = i;
        partner.assign(order.size(), -1);
    }

    void run(int from) {
        int i = from;
        while (i < int(order.size()) && partner[size_t(order[size_t(i)])] >= 0) ++i;
        if (i == int(order.size())) {
            Tiling t;
            t.partner = partner;
            visit(t);
            return;
        }
        int s = order[size_t(i)];
        Vec2i sq = d.squares()[size_t(s)];
        for (Vec2i n : {Vec2i{sq.x + 1, sq.y}, Vec2i{sq.x, sq.y + 1}}) {
            int ni = d.square_index(n);
            if (ni < 0 || partner[size_t(ni)] >= 0) continue;
            partner[size_t(s)] = ni;
            partner[size_t(ni)] = s;
            run(i + 1);
            partner[size_t(s)] = -1;
            partner[size_t(ni)] = -1;
        }
    }
};

}  // namespace

void enumerate_tilings(const DomainPtr& domain, const std::function<void(const Tiling&)>& visit,
                       int cap, bool column_major) {
    require(domain->num_squares() <= cap, Errc::TooLarge,
            "domain exceeds the enumeration cap of " + std::to_string(cap) + " squares");
    if (domain->num_squares() % 2 != 0) return;  // odd area, no tilings
    Backtracker bt(*domain, column_major, visit);
    bt.run(0);
}

std::vector<Tiling> all_tilings(const DomainPtr& domain, int cap) {
    std::vector<Tiling> out;
    enumerate_tilings(domain, [&](const Tiling& t) { out.push_back(t); }, cap);
    return out;
}

int64_t count_tilings(const DomainPtr& domain, int cap, bool column_major) {
    int64_t n = 0;
    enumerate_tilings(domain, [&](const Tiling&) { ++n; }, cap, column_major);
    return n;
}

bool is_tileable(const LatticeDomain& d) {
    std::vector<int> blacks, whites, white_slot(size_t(d.num_squares()), -1);
    for (int s = 0; s < d.num_squares(); ++s)
        (is_black(d.squares()[size_t(s)]) ? blacks : whites).push_back(s);
    if (blacks.size() != whites.size()) return false;
    for (size_t i = 0; i < whites.size(); ++i) white_slot[size_t(whites[i])] = int(i);

    std::vector<int> match_w(whites.size(), -1);
    std::vector<char> seen;
    std::function<bool(int)> augment = [&](int b) -> bool {
        Vec2i sq = d.squares()[size_t(b)];
        for (Vec2i dir : kDir) {
            int n = d.square_index(sq + dir);
            if (n < 0) continue;
            int w = white_slot[size_t(n)];
            if (w < 0 || seen[size_t(w)]) continue;
            seen[size_t(w)] = 1;
            if (match_w[size_t(w)] < 0 || augment(match_w[size_t(w)])) {
                match_w[size_t(w)] = b;
                return true;
            }
        }
        return false;
    };
    for (int b : blacks) {
        seen.assign(whites.size(), 0);
        if (!augment(b)) return false;
    }
    return true;
}

TilingCensus census(const DomainPtr& domain, int cap) {
    TilingCensus c;
    enumerate_tilings(domain, [&](const Tiling& t) {
        HeightFunction h = height_from_tiling(domain, t);
        ++c.total;
        ++c.by_height_change[h.height_change];
        if (!c.max_height) {
            c.max_height = h;
            c.min_height = h;
        } else {
            c.max_height = pointwise_max(*c.max_height, h);
            c.min_height = pointwise_min(*c.min_height, h);
        }
    }, cap);
    return c;
}

namespace {

/// Counts exact covers of an arbitrary square set by dominoes, with some
/// adjacencies forbidden. Handles disconnected and empty sets.
int64_t count_restricted(std::vector<Vec2i> squares,
                         const std::set<std::pair<Vec2i, Vec2i>>& forbidden, int cap) {
    require(int(squares.size()) <= cap, Errc::TooLarge, "piece exceeds enumeration cap");
    if (squares.size() % 2 != 0) return 0;
    if (squares.empty()) return 1;
    std::sort(squares.begin(), squares.end());
    std::map<Vec2i, int> id;
    for (int i = 0; i < int(squares.size()); ++i) id[squares[size_t(i)]] = i;
    std::vector<char> covered(squares.size(), 0);
    int64_t count = 0;
    std::function<void(int)> rec = [&](int from) {
        int i = from;
        while (i < int(squares.size()) && covered[size_t(i)]) ++i;
        if (i == int(squares.size())) {
            ++count;
            return;
        }
        Vec2i sq = squares[size_t(i)];
        for (Vec2i n : {Vec2i{sq.x + 1, sq.y}, Vec2i{sq.x, sq.y + 1}}) {
            auto it = id.find(n);
            if (it == id.end() || covered[size_t(it->second)]) continue;
            if (forbidden.count({std::min(sq, n), std::max(sq, n)})) continue;
            covered[size_t(i)] = covered[size_t(it->second)] = 1;
            rec(i + 1);
            covered[size_t(i)] = covered[size_t(it->second)] = 0;
        }
    };
    rec(0);
    return count;
}

}  // namespace

bool verify_cutting_rule(const DomainPtr& domain, const std::vector<SeamEdge>& seam, int cap) {
    const LatticeDomain& d = *domain;

    // square pairs whose adjacency the dual path severs
    std::vector<std::pair<Vec2i, Vec2i>> severed;
    std::set<std::pair<Vec2i, Vec2i>> severed_set;
    for (const SeamEdge& e : seam) {
        Vec2i a, b;
        if (e.axis == 0) {  // horizontal edge, squares above and below
            a = {e.vertex.x, e.vertex.y - 1};
            b = {e.vertex.x, e.vertex.y};
        } else {  // vertical edge, squares left and right
            a = {e.vertex.x - 1, e.vertex.y};
            b = {e.vertex.x, e.vertex.y};
        }
        if (!d.has_square(a) || !d.has_square(b)) continue;  // boundary edge: nothing to sever
        auto pr = std::make_pair(std::min(a, b), std::max(a, b));
        if (severed_set.insert(pr).second) severed.push_back(pr);
    }

    int64_t total = count_tilings(domain, cap);

    // seam states = crossing-domino patterns: subsets of severed pairs with
    // pairwise disjoint squares; the remaining squares are tiled without
    // crossing the seam
    int64_t sum = 0;
    std::set<Vec2i> used;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == severed.size()) {
            std::vector<Vec2i> rest;
            for (Vec2i s : d.squares())
                if (!used.count(s)) rest.push_back(s);
            sum += count_restricted(rest, severed_set, cap);
            return;
        }
        rec(i + 1);
        auto [a, b] = severed[i];
        if (!used.count(a) && !used.count(b)) {
            used.insert(a);
            used.insert(b);
            rec(i + 1);
            used.erase(a);
            used.erase(b);
        }
    };
    rec(0);
    return sum == total;
}

}  // namespace domino
