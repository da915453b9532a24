#pragma once

#include <optional>

#include "domino/lattice.hpp"
#include "domino/rng.hpp"

namespace domino {

/// w x h block of squares with SW corner at the origin.
DomainPtr generate_block(int w, int h);

/// Aztec diamond of order N: squares whose centers (x+1/2, y+1/2) satisfy
/// |cx| + |cy| <= N. Has 2N(N+1) squares.
DomainPtr generate_aztec(int N);
std::vector<Vec2i> aztec_squares(int N);

/// Square annulus: outer x outer block minus the centered inner x inner
/// block; outer and inner must have equal parity, outer > inner > 0.
DomainPtr generate_square_annulus(int outer, int inner);

/// Annular Aztec diamond with four defects (genus 1). N must be a multiple
/// of 4. The hole is the centered diamond of radius rho = N/4 rounded up to
/// even, with `defect` white squares removed from its upper-left and
/// lower-right inner edges; `defect` black squares are appended outside the
/// upper-left and lower-right external edges to keep the colors balanced.
/// Monodromy is [8 * defect]; the default defect size is N/4.
DomainPtr generate_modified_aztec(int N, std::optional<int> defect = std::nullopt);

/// Concave test domain (two horizontal arms joined on the left); the beta
/// metric on it exceeds the full-lattice closed form for some vertex pairs.
DomainPtr generate_concave_arms();

/// Square annulus whose hole loses `bites` white squares up its left
/// column, giving monodromy [4 * bites]. outer/inner as in
/// generate_square_annulus.
DomainPtr generate_bitten_annulus(int outer, int inner, int bites);

/// Random multiply-connected domain: a w x h block with `holes` random
/// non-touching rectangular holes. Deterministic in the rng state.
DomainPtr random_holey_domain(Rng& rng, int w, int h, int holes);

}  // namespace domino
