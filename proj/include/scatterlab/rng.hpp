#pragma once

#include <cstdint>

namespace scatterlab {

// Deterministic 64-bit generator (splitmix64). Used instead of std::mt19937 +
// distributions so that seeded runs are bit-identical across platforms and
// standard library implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased value in [0, n) via rejection.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = n * (UINT64_MAX / n);
        uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % n;
    }

private:
    uint64_t state_;
};

} // namespace scatterlab
