#pragma once

#include <cstdint>
#include <vector>

namespace graphcodes {

// splitmix64 (Steele-Lea-Flood). Tiny state, full 64-bit output avalanche;
// every randomized routine in this library draws from one of these streams
// so that a (seed, call-order) pair pins the result exactly.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased draw from [0, bound) by 128-bit multiply with rejection.
    uint64_t below(uint64_t bound) {
        __uint128_t mul = (__uint128_t)next() * bound;
        uint64_t low = (uint64_t)mul;
        if (low < bound) {
            uint64_t floor = (0 - bound) % bound;
            while (low < floor) {
                mul = (__uint128_t)next() * bound;
                low = (uint64_t)mul;
            }
        }
        return (uint64_t)(mul >> 64);
    }

    bool coin() { return next() >> 63; }

private:
    uint64_t state_;
};

// Stable 64-bit combiner for deriving per-trial seeds from a base seed.
// Two finalizer applications keep nearby indices statistically unrelated.
inline uint64_t mix_seed(uint64_t base, uint64_t index) {
    auto fin = [](uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    return fin(base + 0x9e3779b97f4a7c15ull * (index + 1));
}

// Fisher-Yates, high index down, one below() per step.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = (size_t)rng.below(i);
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace graphcodes
