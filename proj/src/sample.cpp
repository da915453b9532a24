#include "domino/sample.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace domino {

std::vector<Vec2i> flip_sites(const LatticeDomain& d) {
    std::vector<Vec2i> sites;
    for (Vec2i v : d.vertices()) {
        if (d.has_square({v.x - 1, v.y - 1}) && d.has_square({v.x, v.y - 1}) &&
            d.has_square({v.x - 1, v.y}) && d.has_square({v.x, v.y}))
            sites.push_back(v);
    }
    return sites;
}

RotationBands compute_bands(const LatticeDomain& d, int levels) {
    RotationBands out;
    out.bands.resize(size_t(d.genus()));
    for (int h = 1; h <= d.genus(); ++h) {
        std::set<Vec2i> region(d.hole_squares(h).begin(), d.hole_squares(h).end());
        for (int level = 1; level <= levels; ++level) {
            // trace the boundary of `region` (region on the left) and collect
            // the outside squares along it into a cyclic band
            std::vector<int> band;
            auto in_region = [&](Vec2i s) { return region.count(s) != 0; };
            Vec2i v0{0, 0};
            int d0 = -1;
            for (Vec2i s : region) {
                if (!in_region({s.x, s.y - 1})) {
                    v0 = s;
                    d0 = 0;  // east along its bottom edge, region on the left
                    break;
                }
            }
            bool ok = d0 >= 0;
            std::vector<std::pair<Vec2i, int>> cyc_edges;
            if (ok) {
                Vec2i v = v0;
                int dir = d0;
                do {
                    cyc_edges.push_back({v, dir});
                    Vec2i w = v + kDir[dir];
                    int nd = -1;
                    for (int turn : {3, 0, 1, 2}) {  // rightmost first: hug the region
                        int cand = (dir + turn) % 4;
                        if (in_region(left_square(w, cand)) && !in_region(right_square(w, cand))) {
                            nd = cand;
                            break;
                        }
                    }
                    if (nd < 0 || cyc_edges.size() > 8 * region.size() + 16) {
                        ok = false;
                        break;
                    }
                    v = w;
                    dir = nd;
                } while (!(v == v0 && dir == d0));
            }
            if (ok) {
                std::vector<Vec2i> ring;
                for (size_t i = 0; i < cyc_edges.size(); ++i) {
                    auto [v, dir] = cyc_edges[i];
                    Vec2i rs = right_square(v, dir);
                    if (ring.empty() || !(ring.back() == rs)) ring.push_back(rs);
                    // left turn ahead: insert the diagonal corner square
                    int next_dir = cyc_edges[(i + 1) % cyc_edges.size()].second;
                    if (next_dir == (dir + 1) % 4) ring.push_back(right_square(v + kDir[dir], dir));
                }
                while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
                std::set<Vec2i> seen;
                for (Vec2i s : ring)
                    if (!d.has_square(s) || in_region(s) || !seen.insert(s).second) ok = false;
                if (ok && ring.size() >= 4 && ring.size() % 2 == 0) {
                    for (Vec2i s : ring) band.push_back(d.square_index(s));
                }
            }
            out.bands[size_t(h - 1)].push_back(band);
            std::set<Vec2i> grown = region;
            for (Vec2i s : region)
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy) grown.insert({s.x + dx, s.y + dy});
            region = std::move(grown);
        }
    }
    return out;
}

std::optional<Tiling> apply_flip(const LatticeDomain& d, const Tiling& t, Vec2i site) {
    int sw = d.square_index({site.x - 1, site.y - 1});
    int se = d.square_index({site.x, site.y - 1});
    int nw = d.square_index({site.x - 1, site.y});
    int ne = d.square_index({site.x, site.y});
    if (sw < 0 || se < 0 || nw < 0 || ne < 0) return std::nullopt;
    Tiling out = t;
    if (t.partner[size_t(sw)] == se && t.partner[size_t(nw)] == ne) {
        out.partner[size_t(sw)] = nw;
        out.partner[size_t(nw)] = sw;
        out.partner[size_t(se)] = ne;
        out.partner[size_t(ne)] = se;
        return out;
    }
    if (t.partner[size_t(sw)] == nw && t.partner[size_t(se)] == ne) {
        out.partner[size_t(sw)] = se;
        out.partner[size_t(se)] = sw;
        out.partner[size_t(nw)] = ne;
        out.partner[size_t(ne)] = nw;
        return out;
    }
    return std::nullopt;
}

std::optional<Tiling> apply_rotation(const LatticeDomain& d, const std::vector<int>& band,
                                     const Tiling& t) {
    (void)d;
    size_t L = band.size();
    if (L < 4 || L % 2 != 0) return std::nullopt;
    for (size_t phase : {size_t(0), size_t(1)}) {
        bool chain = true;
        for (size_t i = 0; i < L / 2 && chain; ++i) {
            int a = band[(2 * i + phase) % L];
            int b = band[(2 * i + 1 + phase) % L];
            if (t.partner[size_t(a)] != b) chain = false;
        }
        if (chain) {
            Tiling out = t;
            for (size_t i = 0; i < L / 2; ++i) {
                int a = band[(2 * i + 1 + phase) % L];
                int b = band[(2 * i + 2 + phase) % L];
                out.partner[size_t(a)] = b;
                out.partner[size_t(b)] = a;
            }
            return out;
        }
    }
    return std::nullopt;
}

MarkovState::MarkovState(DomainPtr domain, Tiling start, uint64_t seed, int check_interval)
    : domain_(std::move(domain)),
      tiling_(std::move(start)),
      sites_(flip_sites(*domain_)),
      bands_(compute_bands(*domain_, 4)),
      rng_(seed),
      seed_(seed),
      check_interval_(check_interval) {
    HeightFunction h = height_from_tiling(domain_, tiling_);
    height_ = h.values;
    height_change_ = h.height_change;
    int band_kinds = 0;
    for (int hole = 1; hole <= domain_->genus(); ++hole)
        for (auto& band : bands_.bands[size_t(hole - 1)]) band_kinds += !band.empty();
    // rotations carry all of the height-change dynamics; list each proposal
    // several times (a fixed, state-independent weight keeps the kernel
    // symmetric) so they are tried a constant fraction of the time
    int copies = band_kinds == 0 ? 0
                                 : std::max(1, int(sites_.size()) / std::max(1, 4 * band_kinds));
    for (int hole = 1; hole <= domain_->genus(); ++hole)
        for (int level = 1; level <= int(bands_.bands[size_t(hole - 1)].size()); ++level)
            if (!bands_.bands[size_t(hole - 1)][size_t(level - 1)].empty())
                for (int c = 0; c < 2 * copies; ++c)
                    rotation_proposals_.push_back({hole, level});
}

bool MarkovState::flip(Vec2i site) {
    auto next = apply_flip(*domain_, tiling_, site);
    if (!next) return false;
    tiling_ = std::move(*next);
    // only the center vertex moves; recompute it from its east neighbor
    int vi = domain_->vertex_index(site);
    int wi = domain_->vertex_index({site.x + 1, site.y});
    Vec2i from{site.x + 1, site.y};
    int se = domain_->square_index({site.x, site.y - 1});
    int ne = domain_->square_index({site.x, site.y});
    bool marked = tiling_.partner[size_t(se)] == ne;
    int delta = edge_delta(from, 2);  // step west into the site
    if (marked) delta = delta == 1 ? -3 : 3;
    height_[size_t(vi)] = height_[size_t(wi)] + delta;
    return true;
}

bool MarkovState::rotate(int hole, int level) {
    if (hole < 1 || hole > domain_->genus()) return false;
    if (level < 1 || level > int(bands_.bands[size_t(hole - 1)].size())) return false;
    const auto& band = bands_.bands[size_t(hole - 1)][size_t(level - 1)];
    auto next = apply_rotation(*domain_, band, tiling_);
    if (!next) return false;
    tiling_ = std::move(*next);
    HeightFunction h = height_from_tiling(domain_, tiling_);
    height_ = std::move(h.values);
    height_change_ = std::move(h.height_change);
    return true;
}

void MarkovState::audit() const {
    HeightFunction h = height_from_tiling(domain_, tiling_);
    require(h.values == height_ && h.height_change == height_change_, Errc::InconsistentTiling,
            "height mirror out of sync with the tiling");
}

bool MarkovState::step(bool fix_R) {
    ++steps_;
    // lazy step: staying put with probability 1/2 makes the chain aperiodic
    // (tiny state spaces are otherwise periodic under always-accepted moves)
    if (rng_.coin()) return false;
    size_t n_flip = sites_.size();
    size_t n_rot = fix_R ? 0 : rotation_proposals_.size();
    size_t total = n_flip + n_rot;
    if (total == 0) return false;
    size_t pick = rng_.below(total);
    bool accepted;
    if (pick < n_flip) {
        accepted = flip(sites_[pick]);
    } else {
        auto [hole, level] = rotation_proposals_[pick - n_flip];
        accepted = rotate(hole, level);
    }
    if (accepted) ++accepted_;
    if (check_interval_ > 0 && accepted && accepted_ % uint64_t(check_interval_) == 0) audit();
    return accepted;
}

bool flip_move(MarkovState& state, Vec2i vertex) { return state.flip(vertex); }

bool rotation_move(MarkovState& state, int hole_index, int orientation) {
    // both orientations propose the same involution (pairing toggle)
    int level = 1 + (orientation < 0 ? 0 : 0);
    return state.rotate(hole_index, level);
}

void EmpiricalField::init(DomainPtr d, double s) {
    domain = std::move(d);
    scale = s;
    sum.assign(size_t(domain->num_vertices()), 0.0);
    sum_sq.assign(size_t(domain->num_vertices()), 0.0);
    n_samples = 0;
    r_histogram.clear();
}

void EmpiricalField::accumulate(const std::vector<int>& height,
                                const std::vector<int>& height_change) {
    for (size_t i = 0; i < sum.size(); ++i) {
        double x = double(height[i]) / scale;
        sum[i] += x;
        sum_sq[i] += x * x;
    }
    ++n_samples;
    ++r_histogram[height_change];
}

void EmpiricalField::merge(const EmpiricalField& other) {
    require(domain == other.domain && scale == other.scale, Errc::DomainMismatch,
            "cannot merge fields over different domains");
    for (size_t i = 0; i < sum.size(); ++i) {
        sum[i] += other.sum[i];
        sum_sq[i] += other.sum_sq[i];
    }
    n_samples += other.n_samples;
    for (auto& [k, v] : other.r_histogram) r_histogram[k] += v;
}

double EmpiricalField::variance(int vertex) const {
    double m = mean(vertex);
    return sum_sq[size_t(vertex)] / double(n_samples) - m * m;
}

Tiling initial_tiling(const DomainPtr& domain, const std::optional<std::vector<int>>& fixed_R) {
    if (fixed_R) {
        require(fixed_R->size() == size_t(domain->genus()), Errc::BadInput,
                "fixed height change has wrong length");
        try {
            auto b = boundary_heights(*domain, *fixed_R);
            auto hmax = max_extension(domain, b);
            require(hmax.height_change == *fixed_R, Errc::EmptyFiber,
                    "no tiling with the requested height change");
            auto hmin = min_extension(domain, b);
            std::map<Vec2i, int> mid;
            for (int v = 0; v < domain->num_vertices(); ++v) {
                int target = (hmax.values[size_t(v)] + hmin.values[size_t(v)]) / 2;
                int rho = domain->residue_mod4(v);
                while (((target % 4) + 4) % 4 != rho) --target;
                mid[domain->vertices()[size_t(v)]] = target;
            }
            auto clipped = pointwise_max(pointwise_min(height_upper_envelope(domain, mid), hmax),
                                         hmin);
            return tiling_from_height(clipped);
        } catch (const Error& e) {
            if (e.code == Errc::EmptyFiber || e.code == Errc::BadInput) throw;
            fail(Errc::EmptyFiber, "no tiling with the requested height change");
        }
    }
    require(is_tileable(*domain), Errc::NotTileable, "domain admits no tiling");
    if (domain->genus() == 0) {
        // start mid-height: extremal tilings relax much more slowly
        auto b = boundary_heights(*domain, {});
        auto hmax = max_extension(domain, b);
        auto hmin = min_extension(domain, b);
        std::map<Vec2i, int> mid;
        for (int v = 0; v < domain->num_vertices(); ++v) {
            int target = (hmax.values[size_t(v)] + hmin.values[size_t(v)]) / 2;
            int rho = domain->residue_mod4(v);
            while (((target % 4) + 4) % 4 != rho) --target;
            mid[domain->vertices()[size_t(v)]] = target;
        }
        return tiling_from_height(height_upper_envelope(domain, mid));
    }
    // scan admissible height changes, nearest zero first
    std::vector<std::pair<int, int>> bounds;
    for (int i = 1; i <= domain->genus(); ++i) bounds.push_back(height_change_bounds(*domain, i));
    std::vector<int> R;
    std::function<std::optional<Tiling>(size_t)> rec = [&](size_t i) -> std::optional<Tiling> {
        if (i == bounds.size()) {
            try {
                auto b = boundary_heights(*domain, R);
                auto hmax = max_extension(domain, b);
                if (hmax.height_change != R) return std::nullopt;
                auto hmin = min_extension(domain, b);
                std::map<Vec2i, int> mid;
                for (int v = 0; v < domain->num_vertices(); ++v) {
                    int target = (hmax.values[size_t(v)] + hmin.values[size_t(v)]) / 2;
                    int rho = domain->residue_mod4(v);
                    while (((target % 4) + 4) % 4 != rho) --target;
                    mid[domain->vertices()[size_t(v)]] = target;
                }
                auto henv = height_upper_envelope(domain, mid);
                // stay inside the requested fiber
                auto clipped = pointwise_max(pointwise_min(henv, hmax), hmin);
                return tiling_from_height(clipped);
            } catch (const Error&) {
            }
            return std::nullopt;
        }
        auto [lo, hi] = bounds[i];
        std::vector<int> cands;
        for (int r = lo; r <= hi; ++r) cands.push_back(r);
        std::sort(cands.begin(), cands.end(), [](int a, int b) {
            return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
        });
        for (int r : cands) {
            R.push_back(r);
            auto t = rec(i + 1);
            R.pop_back();
            if (t) return t;
        }
        return std::nullopt;
    };
    auto t = rec(0);
    require(t.has_value(), Errc::NotTileable, "no admissible height change found");
    return *t;
}

EmpiricalField sample_uniform(const DomainPtr& domain, const SampleParams& params,
                              const std::function<void(const MarkovState&)>& per_sample) {
    Tiling start = initial_tiling(domain, params.fixed_R);

    double scale = params.scale;
    if (scale <= 0) {
        int minx = INT32_MAX, maxx = INT32_MIN, miny = INT32_MAX, maxy = INT32_MIN;
        for (Vec2i s : domain->squares()) {
            minx = std::min(minx, s.x);
            maxx = std::max(maxx, s.x + 1);
            miny = std::min(miny, s.y);
            maxy = std::max(maxy, s.y + 1);
        }
        scale = double(std::max(maxx - minx, maxy - miny));
    }
    int64_t burn = params.burn_in >= 0
                       ? params.burn_in
                       : int64_t(scale) * int64_t(scale) * domain->num_squares();
    int64_t thin = std::max<int64_t>(
        params.thinning >= 0 ? params.thinning : domain->num_squares(), 1);

    MarkovState state(domain, start, params.seed, params.check_interval);
    bool fix = params.fixed_R.has_value();
    for (int64_t i = 0; i < burn; ++i) state.step(fix);

    EmpiricalField field;
    field.init(domain, scale);
    for (int64_t s = 0; s < params.n_samples; ++s) {
        for (int64_t i = 0; i < thin; ++i) state.step(fix);
        field.accumulate(state.height(), state.height_change());
        if (per_sample) per_sample(state);
    }
    return field;
}

std::vector<ConcentrationRow> concentration_scan(const std::function<DomainPtr(int)>& family,
                                                 const std::vector<int>& Ns, double deviation,
                                                 const SampleParams& params) {
    std::vector<ConcentrationRow> rows;
    for (int N : Ns) {
        DomainPtr dom = family(N);
        SampleParams p = params;
        p.scale = double(N);
        EmpiricalField mean_field = sample_uniform(dom, p);
        ConcentrationRow row;
        row.N = N;
        // second pass with the same seed walks the identical chain
        sample_uniform(dom, p, [&](const MarkovState& st) {
            double sup = 0;
            const auto& h = st.height();
            for (int v = 0; v < dom->num_vertices(); ++v) {
                double dev = std::abs(double(h[size_t(v)]) / double(N) - mean_field.mean(v));
                sup = std::max(sup, dev);
            }
            ++row.samples;
            if (sup > deviation) ++row.exceed;
        });
        row.tail = row.samples ? double(row.exceed) / double(row.samples) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace domino
