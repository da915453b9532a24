#pragma once

#include <functional>

#include "domino/enumerate.hpp"
#include "domino/heights.hpp"
#include "domino/rng.hpp"

namespace domino {

/// Cyclic bands of squares around each hole, used as rotation-move proposal
/// cycles. Level 1 hugs the hole; higher levels surround the grown region.
struct RotationBands {
    // bands[hole-1][level-1] = square ids in cyclic order (may be empty if
    // no valid band exists at that level)
    std::vector<std::vector<std::vector<int>>> bands;
};

RotationBands compute_bands(const LatticeDomain& d, int levels = 3);

/// Flip sites: vertices whose four incident squares are all in the domain.
std::vector<Vec2i> flip_sites(const LatticeDomain& d);

/// Rotates the two parallel dominoes of the 2x2 block at `site`, if present.
std::optional<Tiling> apply_flip(const LatticeDomain& d, const Tiling& t, Vec2i site);

/// Shifts the dominoes of a band one step, if the band is currently covered
/// by a cyclic domino chain.
std::optional<Tiling> apply_rotation(const LatticeDomain& d, const std::vector<int>& band,
                                     const Tiling& t);

/// Markov chain state: tiling plus an incrementally maintained height mirror.
class MarkovState {
  public:
    MarkovState(DomainPtr domain, Tiling start, uint64_t seed, int check_interval = 1 << 20);

    const Tiling& tiling() const { return tiling_; }
    const std::vector<int>& height() const { return height_; }
    const std::vector<int>& height_change() const { return height_change_; }
    uint64_t step_count() const { return steps_; }
    uint64_t seed() const { return seed_; }

    /// One Metropolis step with the symmetric proposal kernel; returns true
    /// if the move was accepted. fix_R restricts proposals to flips.
    bool step(bool fix_R);

    /// Deterministic single moves (used by step and directly by callers).
    bool flip(Vec2i site);
    bool rotate(int hole, int level);

    const DomainPtr& domain() const { return domain_; }
    Rng& rng() { return rng_; }
    const RotationBands& bands() const { return bands_; }

  private:
    void audit() const;  // full height recomputation check

    DomainPtr domain_;
    Tiling tiling_;
    std::vector<int> height_;
    std::vector<int> height_change_;
    std::vector<Vec2i> sites_;
    RotationBands bands_;
    std::vector<std::pair<int, int>> rotation_proposals_;  // (hole, level) x direction
    Rng rng_;
    uint64_t seed_;
    uint64_t steps_ = 0;
    uint64_t accepted_ = 0;
    int check_interval_;
};

/// Spec'd single-move entry points (proposal supplied by the caller).
bool flip_move(MarkovState& state, Vec2i vertex);
bool rotation_move(MarkovState& state, int hole_index, int orientation);

/// Per-vertex accumulators of the normalized height plus the height-change
/// histogram. Merging is associative and order-independent.
struct EmpiricalField {
    DomainPtr domain;
    double scale = 1.0;
    std::vector<double> sum, sum_sq;
    int64_t n_samples = 0;
    std::map<std::vector<int>, int64_t> r_histogram;

    void init(DomainPtr d, double s);
    void accumulate(const std::vector<int>& height, const std::vector<int>& height_change);
    void merge(const EmpiricalField& other);
    double mean(int vertex) const { return sum[size_t(vertex)] / double(n_samples); }
    double variance(int vertex) const;
};

struct SampleParams {
    int64_t n_samples = 1000;
    int64_t burn_in = -1;    // -1: default N^2 * |squares|
    int64_t thinning = -1;   // -1: default |squares|
    uint64_t seed = 1;
    std::optional<std::vector<int>> fixed_R;
    double scale = 0;        // normalization N; 0: largest bounding-box side
    int check_interval = 1 << 20;
};

/// Uniform sampler over tilings (or over a fixed height-change fiber).
/// per_sample, when set, sees the state at every recorded sample.
EmpiricalField sample_uniform(const DomainPtr& domain, const SampleParams& params,
                              const std::function<void(const MarkovState&)>& per_sample = {});

/// Starting tiling: any tiling (matching) or a representative of the fiber.
Tiling initial_tiling(const DomainPtr& domain, const std::optional<std::vector<int>>& fixed_R);

struct ConcentrationRow {
    int N = 0;
    int64_t samples = 0;
    int64_t exceed = 0;
    double tail = 0.0;  // empirical P(sup |H_N - mean| > C)
};

/// Empirical concentration tails across a family of domains, matched budgets.
std::vector<ConcentrationRow> concentration_scan(
    const std::function<DomainPtr(int)>& family, const std::vector<int>& Ns, double deviation,
    const SampleParams& params);

}  // namespace domino
