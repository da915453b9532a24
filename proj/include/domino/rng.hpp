#pragma once

#include <cstdint>
#include <random>

namespace domino {

/// mt19937_64 with self-contained bounded draws. The std distributions are
/// implementation-defined, so artifacts would not be byte-stable across
/// standard libraries; these draws are.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    /// Uniform integer in [0, n), n > 0. Rejection sampling, unbiased.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = eng_();
            if (r >= threshold) return r % n;
        }
    }

    int below_int(int n) { return int(below(uint64_t(n))); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

    bool coin() { return (eng_() & 1) != 0; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace domino
