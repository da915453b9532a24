#include "domino/lattice.hpp"

#include "doctest.h"
#include "domino/domains.hpp"
#include "support.hpp"

using namespace domino;

TEST_CASE("build_domain basics") {
    auto d = build_domain({{0, 0}, {1, 0}});
    CHECK(d->num_squares() == 2);
    CHECK(d->num_vertices() == 6);
    CHECK(d->num_edges() == 7);
    CHECK(d->genus() == 0);

    CHECK(generate_aztec(2)->num_squares() == 12);
    CHECK(generate_aztec(1)->num_squares() == 4);
    CHECK(generate_aztec(3)->num_squares() == 24);

    CHECK_THROWS_AS(build_domain({}), Error);
    CHECK_THROWS_AS(build_domain({{0, 0}, {2, 2}}), Error);          // disconnected
    CHECK_THROWS_AS(build_domain({{0, 0}, {1, 1}}), Error);          // pinch
}

TEST_CASE("boundary components") {
    auto annulus = generate_square_annulus(4, 2);
    CHECK(annulus->num_squares() == 12);
    CHECK(annulus->genus() == 1);
    CHECK(annulus->boundary_components().size() == 2);
    CHECK(flood_fill_component_count(*annulus) == 2);
    CHECK(annulus->boundary_components()[0].reference_point == Vec2i{0, 0});
    CHECK(annulus->boundary_components()[1].reference_point == Vec2i{1, 1});

    auto block = generate_block(2, 2);
    CHECK(block->genus() == 0);
    CHECK(block->boundary_components().size() == 1);

    auto mad = generate_modified_aztec(4);
    CHECK(mad->genus() == 1);
    CHECK(mad->boundary_components().size() == 2);
}

TEST_CASE("boundary cycles are simple and closed") {
    for (auto dom : {generate_square_annulus(4, 2), generate_modified_aztec(4),
                     generate_aztec(3), generate_concave_arms()}) {
        for (const auto& comp : dom->boundary_components()) {
            auto cyc = comp.vertex_cycle;
            auto sorted = cyc;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            for (size_t i = 0; i < cyc.size(); ++i) {
                Vec2i step = cyc[(i + 1) % cyc.size()] - cyc[i];
                CHECK(std::abs(step.x) + std::abs(step.y) == 1);
            }
        }
    }
}

TEST_CASE("cut system") {
    auto annulus = generate_square_annulus(4, 2);
    REQUIRE(annulus->cut_system().cuts.size() == 1);
    const auto& cut = annulus->cut_system().cuts[0];
    CHECK(cut.size() == 2);  // single straight edge
    CHECK(cut.front() == Vec2i{1, 1});
    CHECK(cut.front().x == cut.back().x);  // vertical
    CHECK(annulus->cut_open_euler_characteristic() == 1);

    CHECK(generate_block(3, 3)->cut_system().cuts.empty());

    // two holes: cuts exist, are vertex-disjoint, complex is a disk
    auto two = build_domain([] {
        std::vector<Vec2i> sq;
        for (int x = 0; x < 9; ++x)
            for (int y = 0; y < 5; ++y)
                if (!((x == 2 && y == 2) || (x == 6 && y == 2))) sq.push_back({x, y});
        return sq;
    }());
    CHECK(two->genus() == 2);
    REQUIRE(two->cut_system().cuts.size() == 2);
    std::vector<Vec2i> all;
    for (auto& c : two->cut_system().cuts) all.insert(all.end(), c.begin(), c.end());
    auto s = all;
    std::sort(s.begin(), s.end());
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(two->cut_open_euler_characteristic() == 1);
}

TEST_CASE("monodromy formula") {
    auto annulus = generate_square_annulus(4, 2);
    CHECK(annulus->monodromy_vector() == std::vector<int>{0});

    // 3x3 block with one black hole square: m = [4]
    std::vector<Vec2i> sq;
    for (int x = 0; x < 3; ++x)
        for (int y = 1; y < 4; ++y)
            if (!(x == 1 && y == 2)) sq.push_back({x, y});
    REQUIRE(is_black({1, 2}));
    auto d = build_domain(std::move(sq));
    CHECK(d->monodromy_vector() == std::vector<int>{4});

    CHECK(generate_modified_aztec(4)->monodromy_vector() == std::vector<int>{8});

    auto mad8 = generate_modified_aztec(8);
    for (int m : mad8->monodromy_vector()) CHECK(m % 4 == 0);
}

TEST_CASE("monodromy by traversal") {
    auto mad = generate_modified_aztec(4);
    // the hole boundary cycle, counterclockwise, closed
    auto cyc = mad->boundary_components()[1].vertex_cycle;
    cyc.push_back(cyc.front());
    CHECK(monodromy_by_traversal(*mad, cyc) == 8);

    // loop enclosing no domain squares
    auto block = generate_block(3, 3);
    std::vector<Vec2i> tiny{{0, 0}, {1, 0}, {0, 0}};
    CHECK(monodromy_by_traversal(*block, tiny) == 0);

    // additivity under concatenation at a shared base point
    auto annulus = generate_square_annulus(4, 2);
    auto loop = annulus->boundary_components()[1].vertex_cycle;
    loop.push_back(loop.front());
    std::vector<Vec2i> twice = loop;
    twice.insert(twice.end(), loop.begin() + 1, loop.end());
    CHECK(monodromy_by_traversal(*annulus, twice) ==
          2 * monodromy_by_traversal(*annulus, loop));

    CHECK_THROWS_AS(monodromy_by_traversal(*block, {{0, 0}, {1, 0}}), Error);
}

TEST_CASE("traversal equals the winding-weighted color count (Stokes)") {
    Rng rng(20240811);
    int domains_done = 0;
    while (domains_done < 20) {
        int holes = 1 + int(rng.below(2));
        auto dom = random_holey_domain(rng, 8 + rng.below_int(5), 8 + rng.below_int(5), holes);
        const auto& m = dom->monodromy_vector();
        for (int l = 0; l < 50; ++l) {
            auto loop = testing::random_fundamental_loop(*dom, rng);
            if (loop.empty()) continue;
            CHECK(monodromy_by_traversal(*dom, loop) == enclosed_color_sum(*dom, loop));
        }
        // along hole boundaries the sum reduces to the monodromy pairing
        for (int h = 1; h <= dom->genus(); ++h) {
            auto cyc = dom->boundary_components()[size_t(h)].vertex_cycle;
            cyc.push_back(cyc.front());
            CHECK(monodromy_by_traversal(*dom, cyc) == m[size_t(h - 1)]);
            auto wind = loop_winding(*dom, cyc);
            for (int i = 0; i < dom->genus(); ++i)
                CHECK(wind[size_t(i)] == (i == h - 1 ? 1 : 0));
        }
        ++domains_done;
    }
}

TEST_CASE("cover shift") {
    CoverPoint p{{0, 0}, {0}};
    auto q = cover_shift(p, {1});
    CHECK(q.deck == std::vector<int>{1});
    CHECK(cover_shift(q, {-1}).deck == std::vector<int>{0});
    CHECK(cover_shift(p, {0}).deck == p.deck);
}

TEST_CASE("beta distance on a convex window matches the closed form") {
    auto window = generate_block(8, 8);
    CHECK(beta_distance(*window, {0, 0}, {0, 0}) == 0);
    CHECK(beta_distance(*window, {0, 0}, {1, 0}) == 3);
    CHECK(beta_distance(*window, {0, 0}, {2, 0}) == 4);
    for (Vec2i p : window->vertices())
        for (Vec2i q : window->vertices())
            CHECK(beta_distance(*window, p, q) == beta_closed_form(p, q));
}

TEST_CASE("beta triangle inequality") {
    auto window = generate_block(6, 6);
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Vec2i x{rng.below_int(7), rng.below_int(7)};
        Vec2i y{rng.below_int(7), rng.below_int(7)};
        Vec2i z{rng.below_int(7), rng.below_int(7)};
        CHECK(beta_distance(*window, x, z) <=
              beta_distance(*window, x, y) + beta_distance(*window, y, z));
    }
}

TEST_CASE("beta exceeds the closed form on a concave domain") {
    auto dom = generate_concave_arms();
    bool found = false;
    for (Vec2i p : dom->vertices())
        for (Vec2i q : dom->vertices()) {
            int bfs = beta_distance(*dom, p, q);
            if (bfs > beta_closed_form(p, q)) found = true;
        }
    CHECK(found);
}

TEST_CASE("euler characteristic is 1 for every generated cut system") {
    Rng rng(99);
    for (int i = 0; i < 10; ++i) {
        auto dom = random_holey_domain(rng, 9, 9, 1 + int(rng.below(2)));
        CHECK(dom->cut_open_euler_characteristic() == 1);
        CHECK(int(dom->boundary_components().size()) == flood_fill_component_count(*dom));
    }
}

TEST_CASE("generator preconditions and the four-defect family") {
    CHECK_THROWS_AS(generate_aztec(0), Error);
    CHECK_THROWS_AS(generate_modified_aztec(6), Error);
    CHECK_THROWS_AS(generate_modified_aztec(3), Error);

    // monodromy from the flood-fill formula agrees with loop traversal for
    // every generated size, and each domain is tileable
    for (int N = 4; N <= 32; N += 4) {
        auto dom = generate_modified_aztec(N);
        REQUIRE(dom->genus() == 1);
        auto cyc = dom->boundary_components()[1].vertex_cycle;
        cyc.push_back(cyc.front());
        CHECK(monodromy_by_traversal(*dom, cyc) == dom->monodromy_vector()[0]);
        CHECK(dom->monodromy_vector()[0] == 8 * (N / 4));
    }
}
