#include "domino/io.hpp"

#include "doctest.h"
#include "domino/domains.hpp"
#include "domino/render.hpp"

using namespace domino;

TEST_CASE("domain json round trip") {
    auto dom = generate_modified_aztec(8);
    auto j = domain_to_json(*dom);
    auto back = domain_from_json(j);
    CHECK(back->squares() == dom->squares());
    CHECK(back->genus() == dom->genus());
    CHECK(back->monodromy_vector() == dom->monodromy_vector());
    // squares serialized in sorted order
    auto sq = j["squares"];
    for (size_t i = 1; i < sq.size(); ++i) {
        Vec2i a{sq[i - 1][0], sq[i - 1][1]}, b{sq[i][0], sq[i][1]};
        CHECK(a < b);
    }
}

TEST_CASE("tiling json round trip") {
    auto dom = generate_aztec(2);
    auto tilings = all_tilings(dom);
    for (auto& t : tilings) {
        auto j = tiling_to_json(*dom, t);
        CHECK(tiling_from_json(*dom, j) == t);
    }
}

TEST_CASE("height json carries monodromy and height change") {
    auto dom = generate_modified_aztec(4);
    auto h = height_from_tiling(dom, all_tilings(dom).front());
    auto j = height_to_json(h);
    CHECK(j["monodromy"] == std::vector<int>{8});
    CHECK(j["height_change"].size() == 1);
    CHECK(j["values"].size() == size_t(dom->num_vertices()));
}

TEST_CASE("float formatting round-trips 17 digits") {
    double x = 0.5831218080616375;
    CHECK(std::stod(format_double(x)) == x);
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
}

TEST_CASE("csv writers emit headers") {
    auto dom = generate_square_annulus(4, 2);
    auto c = census(dom);
    auto csv = census_csv(*dom, c);
    CHECK(csv.rfind("R1,count\n", 0) == 0);

    SampleParams p;
    p.n_samples = 10;
    p.burn_in = 100;
    p.thinning = 2;
    auto field = sample_uniform(dom, p);
    CHECK(field_csv(field).rfind("x,y,mean,variance\n", 0) == 0);
    CHECK(r_histogram_csv(field).rfind("R1,count\n", 0) == 0);
}

TEST_CASE("svg renderers are deterministic and well formed") {
    auto dom = generate_aztec(4);
    SampleParams p;
    p.n_samples = 1;
    p.burn_in = 4000;
    p.seed = 5;
    Tiling last;
    sample_uniform(dom, p, [&](const MarkovState& st) { last = st.tiling(); });
    auto svg1 = render_tiling_svg(*dom, last);
    auto svg2 = render_tiling_svg(*dom, last);
    CHECK(svg1 == svg2);
    CHECK(svg1.find("<svg") == 0);
    CHECK(svg1.rfind("</svg>\n") == svg1.size() - 7);
    // all four domino types appear in a random order-4 diamond tiling
    for (const char* color : {"#d64545", "#edbb3f", "#3f78ed", "#45b05c"})
        CHECK(svg1.find(color) != std::string::npos);
    CHECK(render_empty_svg().find("<svg") == 0);
}
