#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "domino/lattice.hpp"

namespace domino {

/// Perfect domino cover of a domain: partner[s] is the square matched with
/// square s (ids into domain.squares()).
struct Tiling {
    std::vector<int> partner;

    friend bool operator==(const Tiling& a, const Tiling& b) { return a.partner == b.partner; }
    friend bool operator<(const Tiling& a, const Tiling& b) { return a.partner < b.partner; }

    /// Dominoes as sorted pairs of square coordinates (serialization order).
    std::vector<std::pair<Vec2i, Vec2i>> dominoes(const LatticeDomain& d) const;
};

Tiling tiling_from_dominoes(const LatticeDomain& d,
                            const std::vector<std::pair<Vec2i, Vec2i>>& dominoes);

/// Multivalued height function stored on the fundamental domain: one value
/// per vertex (its canonical cover copy); values elsewhere on the cover
/// follow from the monodromy vector.
struct HeightFunction {
    DomainPtr domain;
    std::vector<int> values;         // per vertex id
    std::vector<int> height_change;  // R, length g

    const std::vector<int>& monodromy() const { return domain->monodromy_vector(); }
    int value_at_vertex(Vec2i v) const { return values[size_t(domain->vertex_index(v))]; }
    /// Quasiperiodic evaluation H(v, deck) = values[v] + deck . m.
    int value_at(const CoverPoint& p) const;

    friend bool operator==(const HeightFunction& a, const HeightFunction& b) {
        return a.values == b.values;
    }
};

/// Integrates the local rule over the cut-open domain; H(base point) = base.
HeightFunction height_from_tiling(const DomainPtr& domain, const Tiling& tiling,
                                  std::optional<int> base = std::nullopt);

/// Inverse of height_from_tiling: reads the dominoes off the -3 edges.
Tiling tiling_from_height(const HeightFunction& h);

/// Local-rule validity of a candidate height function (increment +1/-3 along
/// every black-left edge, seams included).
bool is_valid_height(const HeightFunction& h);

HeightFunction pointwise_max(const HeightFunction& a, const HeightFunction& b);
HeightFunction pointwise_min(const HeightFunction& a, const HeightFunction& b);

/// True iff the two height functions agree mod 4 everywhere.
bool mod4_check(const HeightFunction& a, const HeightFunction& b);

/// Largest height function extending the partial data (map vertex -> value on
/// its canonical cover copy). Throws NotExtendable naming a violating pair.
HeightFunction max_extension(const DomainPtr& domain, const std::map<Vec2i, int>& partial);
HeightFunction min_extension(const DomainPtr& domain, const std::map<Vec2i, int>& partial);

/// Largest height function lying below the target values (the targets need
/// not be mutually consistent; the result is the min of their upper cones).
HeightFunction height_upper_envelope(const DomainPtr& domain,
                                     const std::map<Vec2i, int>& targets);

/// Boundary heights for prescribed height change R (R[i-1] = value at the
/// reference point of component i); values on canonical cover copies.
std::map<Vec2i, int> boundary_heights(const LatticeDomain& d, const std::vector<int>& R);

/// Directed beta distance between cover points (bounded deck search window).
int beta_cover(const LatticeDomain& d, const CoverPoint& from, const CoverPoint& to);

/// Admissible interval of the height change component R_i given the base
/// point convention: [-beta(p_i -> p_0), beta(p_0 -> p_i)].
std::pair<int, int> height_change_bounds(const LatticeDomain& d, int hole);

}  // namespace domino
