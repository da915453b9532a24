#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "domino/heights.hpp"

namespace domino {

inline constexpr int kEnumerateCap = 64;

/// Visits every tiling exactly once, deterministic order: recursive
/// backtracking on the first uncovered square (horizontal domino first).
/// column_major switches the square order from (x,y) to (y,x).
void enumerate_tilings(const DomainPtr& domain, const std::function<void(const Tiling&)>& visit,
                       int cap = kEnumerateCap, bool column_major = false);

std::vector<Tiling> all_tilings(const DomainPtr& domain, int cap = kEnumerateCap);
int64_t count_tilings(const DomainPtr& domain, int cap = kEnumerateCap,
                      bool column_major = false);

/// Perfect-matching feasibility (polynomial, no enumeration cap).
bool is_tileable(const LatticeDomain& domain);

struct TilingCensus {
    int64_t total = 0;
    std::map<std::vector<int>, int64_t> by_height_change;
    std::optional<HeightFunction> max_height;
    std::optional<HeightFunction> min_height;
};

/// Exact census of tilings grouped by height change.
TilingCensus census(const DomainPtr& domain, int cap = kEnumerateCap);

/// Primal edge crossed by a dual cut path: base vertex plus axis (0 = E edge,
/// 1 = N edge).
struct SeamEdge {
    Vec2i vertex;
    int axis = 0;
};

/// Checks the partition-function factorization across a dual cut: the total
/// count must equal the sum over seam states of the product of piece counts.
bool verify_cutting_rule(const DomainPtr& domain, const std::vector<SeamEdge>& seam,
                         int cap = kEnumerateCap);

}  // namespace domino
