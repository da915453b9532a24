#include "domino/heights.hpp"

#include <map>

#include "doctest.h"
#include "domino/domains.hpp"
#include "domino/enumerate.hpp"

using namespace domino;

namespace {

Tiling horizontal_bricks(const LatticeDomain& d) {
    std::vector<std::pair<Vec2i, Vec2i>> doms;
    for (Vec2i s : d.squares())
        if (s.x % 2 == 0) doms.push_back({s, {s.x + 1, s.y}});
    return tiling_from_dominoes(d, doms);
}

}  // namespace

TEST_CASE("height of the horizontal 2x2 tiling, integrated by hand") {
    auto d = generate_block(2, 2);
    auto t = tiling_from_dominoes(*d, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}});
    auto h = height_from_tiling(d, t);
    CHECK(h.height_change.empty());
    const std::map<Vec2i, int> expect = {
        {{0, 0}, 0}, {{1, 0}, -1}, {{2, 0}, 0},
        {{0, 1}, 1}, {{1, 1}, 2},  {{2, 1}, 1},
        {{0, 2}, 0}, {{1, 2}, -1}, {{2, 2}, 0},
    };
    for (auto& [v, val] : expect) CHECK(h.value_at_vertex(v) == val);

    // increments along domain edges are in {+1,-3} seen from the black side
    for (Vec2i v : d->vertices()) {
        for (int dir = 0; dir < 4; ++dir) {
            if (!d->has_edge(v, dir) || !d->has_vertex(v + kDir[dir])) continue;
            int delta = h.value_at_vertex(v + kDir[dir]) - h.value_at_vertex(v);
            if (edge_delta(v, dir) == 1) CHECK((delta == 1 || delta == -3));
            else CHECK((delta == -1 || delta == 3));
        }
    }
}

TEST_CASE("bijection round trip on the test corpus") {
    for (auto dom : {generate_block(2, 2), generate_block(2, 4), generate_aztec(1),
                     generate_aztec(2), generate_aztec(3), generate_square_annulus(4, 2),
                     generate_modified_aztec(4)}) {
        int checked = 0;
        enumerate_tilings(dom, [&](const Tiling& t) {
            auto h = height_from_tiling(dom, t);
            CHECK(tiling_from_height(h) == t);
            ++checked;
        });
        CHECK(checked > 0);
        // reverse round trip on one representative
        auto tilings = all_tilings(dom);
        auto h = height_from_tiling(dom, tilings.front());
        CHECK(height_from_tiling(dom, tiling_from_height(h)) == h);
    }
}

TEST_CASE("quasiperiodicity on the cover") {
    auto dom = generate_modified_aztec(4);
    auto tilings = all_tilings(dom);
    auto h = height_from_tiling(dom, tilings.front());
    const auto& m = dom->monodromy_vector();
    for (Vec2i v : {dom->vertices()[0], dom->vertices()[5]}) {
        CHECK(h.value_at({v, {1}}) == h.value_at_vertex(v) + m[0]);
        CHECK(h.value_at({v, {-2}}) == h.value_at_vertex(v) - 2 * m[0]);
    }
}

TEST_CASE("corrupted heights are rejected") {
    auto d = generate_block(2, 4);
    auto h = height_from_tiling(d, horizontal_bricks(*d));
    auto bad = h;
    bad.values[4] += 1;
    CHECK_THROWS_AS(tiling_from_height(bad), Error);

    auto shifted = h;
    for (auto& v : shifted.values) v += 4;  // valid local rule, wrong base class
    CHECK(mod4_check(h, shifted));
    auto plus2 = h;
    for (auto& v : plus2.values) v += 2;
    CHECK_FALSE(mod4_check(h, plus2));
}

TEST_CASE("pointwise lattice operations") {
    auto dom = generate_square_annulus(4, 2);
    auto tilings = all_tilings(dom);
    REQUIRE(tilings.size() >= 2);
    std::vector<HeightFunction> hs;
    for (auto& t : tilings) hs.push_back(height_from_tiling(dom, t));

    CHECK(pointwise_max(hs[0], hs[0]) == hs[0]);  // idempotence
    for (size_t i = 0; i < hs.size(); ++i)
        for (size_t j = i + 1; j < hs.size(); ++j) {
            CHECK(mod4_check(hs[i], hs[j]));
            auto mx = pointwise_max(hs[i], hs[j]);
            auto mn = pointwise_min(hs[i], hs[j]);
            CHECK(is_valid_height(mx));
            CHECK(is_valid_height(mn));
            for (int c = 0; c < dom->genus(); ++c) {
                CHECK(mx.height_change[size_t(c)] ==
                      std::max(hs[i].height_change[size_t(c)], hs[j].height_change[size_t(c)]));
                CHECK(mn.height_change[size_t(c)] ==
                      std::min(hs[i].height_change[size_t(c)], hs[j].height_change[size_t(c)]));
            }
            CHECK(pointwise_min(pointwise_max(hs[i], hs[j]), hs[i]) == hs[i]);  // absorption
        }
}

TEST_CASE("max and min extensions from boundary data") {
    auto dom = generate_aztec(2);
    auto c = census(dom);
    REQUIRE(c.total == 8);
    auto bdata = boundary_heights(*dom, {});
    auto hmax = max_extension(dom, bdata);
    auto hmin = min_extension(dom, bdata);
    CHECK(hmax == *c.max_height);
    CHECK(hmin == *c.min_height);
    for (size_t i = 0; i < hmax.values.size(); ++i) CHECK(hmin.values[i] <= hmax.values[i]);
}

TEST_CASE("extension is tautological on full data and idempotent") {
    auto dom = generate_block(2, 2);
    auto h = height_from_tiling(dom, horizontal_bricks(*dom));
    std::map<Vec2i, int> full;
    for (int v = 0; v < dom->num_vertices(); ++v)
        full[dom->vertices()[size_t(v)]] = h.values[size_t(v)];
    CHECK(max_extension(dom, full) == h);

    // single point: extensions are the extreme height functions of the block
    auto c = census(dom);
    std::map<Vec2i, int> seed{{dom->base_point(), 0}};
    CHECK(max_extension(dom, seed) == *c.max_height);
    CHECK(min_extension(dom, seed) == *c.min_height);

    // idempotence and monotonicity in the data
    auto again = max_extension(dom, full);
    CHECK(again == h);
    std::map<Vec2i, int> partial{{dom->base_point(), 0}, {{2, 2}, 0}};
    auto e1 = max_extension(dom, partial);
    auto e2 = max_extension(dom, seed);
    for (size_t i = 0; i < e1.values.size(); ++i) CHECK(e1.values[i] <= e2.values[i]);
}

TEST_CASE("non-extendable data names a violating pair") {
    auto dom = generate_block(4, 4);
    std::map<Vec2i, int> bad{{{0, 0}, 0}, {{1, 0}, 11}};  // way beyond beta
    CHECK_THROWS_WITH_AS(max_extension(dom, bad),
                         doctest::Contains("Lipschitz"), Error);
    std::map<Vec2i, int> off_class{{{0, 0}, 1}};
    CHECK_THROWS_AS(max_extension(dom, off_class), Error);
}

TEST_CASE("unique tiling iff min equals max extension") {
    auto dom = generate_block(1, 2);  // a single vertical domino
    auto b = boundary_heights(*dom, {});
    CHECK(max_extension(dom, b) == min_extension(dom, b));

    auto two = generate_block(2, 2);
    auto b2 = boundary_heights(*two, {});
    CHECK_FALSE(max_extension(two, b2) == min_extension(two, b2));
}

TEST_CASE("boundary heights restrict any tiling height") {
    for (auto dom : {generate_square_annulus(4, 2), generate_modified_aztec(4)}) {
        auto tilings = all_tilings(dom);
        auto h = height_from_tiling(dom, tilings.front());
        auto b = boundary_heights(*dom, h.height_change);
        for (auto& [v, val] : b) CHECK(h.value_at_vertex(v) == val);
    }
}

TEST_CASE("cover-corrected lattice Lipschitz bound") {
    for (auto dom : {generate_square_annulus(4, 2), generate_modified_aztec(4)}) {
        auto tilings = all_tilings(dom);
        // sample of tilings to keep runtime low
        size_t step = std::max<size_t>(1, tilings.size() / 5);
        for (size_t ti = 0; ti < tilings.size(); ti += step) {
            auto h = height_from_tiling(dom, tilings[ti]);
            for (int a = 0; a < dom->num_vertices(); a += 3) {
                for (int b = 0; b < dom->num_vertices(); b += 3) {
                    Vec2i va = dom->vertices()[size_t(a)], vb = dom->vertices()[size_t(b)];
                    for (int da = -1; da <= 1; ++da) {
                        CoverPoint x{va, {da}}, y{vb, {0}};
                        int lhs = h.value_at(x) - h.value_at(y);
                        CHECK(lhs <= beta_cover(*dom, y, x));
                    }
                }
            }
        }
    }
}

TEST_CASE("height change bounds contain all census keys") {
    for (auto dom : {generate_square_annulus(4, 2), generate_modified_aztec(4)}) {
        auto c = census(dom);
        auto [lo, hi] = height_change_bounds(*dom, 1);
        for (auto& [key, cnt] : c.by_height_change) {
            CHECK(key[0] >= lo);
            CHECK(key[0] <= hi);
        }
    }
}
