#include "domino/domains.hpp"

#include <algorithm>
#include <set>

namespace domino {

DomainPtr generate_block(int w, int h) {
    require(w >= 1 && h >= 1, Errc::BadInput, "block dimensions must be positive");
    std::vector<Vec2i> sq;
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < h; ++y) sq.push_back({x, y});
    return build_domain(std::move(sq));
}

std::vector<Vec2i> aztec_squares(int N) {
    std::vector<Vec2i> sq;
    for (int x = -N; x < N; ++x)
        for (int y = -N; y < N; ++y)
            if (std::abs(2 * x + 1) + std::abs(2 * y + 1) <= 2 * N) sq.push_back({x, y});
    return sq;
}

DomainPtr generate_aztec(int N) {
    require(N >= 1, Errc::BadInput, "Aztec diamond order must be >= 1");
    return build_domain(aztec_squares(N));
}

DomainPtr generate_square_annulus(int outer, int inner) {
    require(outer > inner && inner > 0 && (outer - inner) % 2 == 0, Errc::BadInput,
            "annulus needs outer > inner > 0 with equal parity");
    int off = (outer - inner) / 2;
    std::vector<Vec2i> sq;
    for (int x = 0; x < outer; ++x)
        for (int y = 0; y < outer; ++y) {
            bool in_hole = x >= off && x < off + inner && y >= off && y < off + inner;
            if (!in_hole) sq.push_back({x, y});
        }
    return build_domain(std::move(sq));
}

DomainPtr generate_modified_aztec(int N, std::optional<int> defect) {
    require(N >= 4 && N % 4 == 0, Errc::BadSize, "modified Aztec diamond needs N = 4k");
    int k = N / 4;
    int rho = k + (k & 1);  // hole radius rounded up to even
    int d = defect.value_or(k);
    require(d >= 1 && d <= rho, Errc::BadSize, "defect size must be in [1, hole radius]");

    std::set<Vec2i> sq;
    for (Vec2i s : aztec_squares(N)) sq.insert(s);
    // carve the hole
    for (Vec2i s : aztec_squares(rho)) sq.erase(s);
    // internal defects: white squares of the hole's NW and SE inner edges,
    // taken from the corners nearest the top and bottom of the diamond
    for (int j = rho - d; j < rho; ++j) {
        sq.insert({-rho + j, j});          // NW inner edge (upper-left)
        sq.insert({rho - 1 - j, -1 - j});  // SE inner edge (lower-right)
    }
    // external defects: black squares hugging the NW and SE outer edges
    for (int j = N - d + 1; j <= N; ++j) {
        sq.insert({-(N + 1) + j, j});  // upper-left external
        sq.insert({N - j, -1 - j});    // lower-right external
    }
    return build_domain(std::vector<Vec2i>(sq.begin(), sq.end()));
}

DomainPtr generate_concave_arms() {
    std::vector<Vec2i> sq;
    for (int x = 0; x < 8; ++x) {
        for (int y = 0; y < 2; ++y) sq.push_back({x, y});      // lower arm
        for (int y = 4; y < 6; ++y) sq.push_back({x, y});      // upper arm
    }
    for (int y = 2; y < 4; ++y) {
        sq.push_back({0, y});  // hinge on the left
        sq.push_back({1, y});
    }
    return build_domain(std::move(sq));
}

DomainPtr generate_bitten_annulus(int outer, int inner, int bites) {
    require(outer > inner && inner > 0 && (outer - inner) % 2 == 0, Errc::BadInput,
            "annulus needs outer > inner > 0 with equal parity");
    int off = (outer - inner) / 2;
    require(bites >= 0 && 2 * bites + 1 < inner, Errc::BadInput, "too many bites for the hole");
    std::set<Vec2i> sq;
    for (int x = 0; x < outer; ++x)
        for (int y = 0; y < outer; ++y) {
            bool in_hole = x >= off && x < off + inner && y >= off && y < off + inner;
            if (!in_hole) sq.insert({x, y});
        }
    // fill every other white square up the hole's left column, keeping the
    // corner square so the reference vertex stays at (off, off) across
    // scales; each fill raises the monodromy by 4
    int filled = 0;
    for (int y = off + 2; y < off + inner && filled < bites; y += 2) {
        Vec2i s{off, y};
        require(!is_black(s), Errc::BadInput, "wall parity unexpected");
        sq.insert(s);
        ++filled;
    }
    require(filled == bites, Errc::BadInput, "not enough white squares in the hole column");
    // black squares outside the left wall balance the colors
    int added = 0;
    for (int y = 0; y < outer && added < bites; ++y)
        if (is_black({-1, y})) {
            sq.insert({-1, y});
            ++added;
        }
    require(added == bites, Errc::BadInput, "could not balance colors");
    return build_domain(std::vector<Vec2i>(sq.begin(), sq.end()));
}

DomainPtr random_holey_domain(Rng& rng, int w, int h, int holes) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::set<Vec2i> sq;
        for (int x = 0; x < w; ++x)
            for (int y = 0; y < h; ++y) sq.insert({x, y});
        std::vector<std::array<int, 4>> placed;  // x0,y0,x1,y1 (exclusive)
        bool ok = true;
        for (int i = 0; i < holes && ok; ++i) {
            ok = false;
            for (int tries = 0; tries < 50; ++tries) {
                int hw = 1 + rng.below_int(3), hh = 1 + rng.below_int(3);
                if (w - hw - 2 < 1 || h - hh - 2 < 1) continue;
                int x0 = 1 + rng.below_int(w - hw - 2);
                int y0 = 1 + rng.below_int(h - hh - 2);
                bool clash = false;
                for (auto& p : placed)
                    if (x0 < p[2] + 1 && x0 + hw + 1 > p[0] && y0 < p[3] + 1 && y0 + hh + 1 > p[1])
                        clash = true;
                if (clash) continue;
                placed.push_back({x0, y0, x0 + hw, y0 + hh});
                for (int x = x0; x < x0 + hw; ++x)
                    for (int y = y0; y < y0 + hh; ++y) sq.erase({x, y});
                ok = true;
                break;
            }
        }
        if (!ok) continue;
        auto dom = build_domain(std::vector<Vec2i>(sq.begin(), sq.end()));
        if (dom->genus() == holes) return dom;
    }
    fail(Errc::BadInput, "failed to place the requested holes");
}

}  // namespace domino
