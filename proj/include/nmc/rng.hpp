#pragma once

#include <cstdint>
#include <random>

namespace nmc {

// Seeded random stream. Every randomized operation takes one of these
// explicitly; streams are never shared between concurrent callers.
//
// Draws are built from raw mt19937_64 words only. The standard pins down
// the mt19937_64 sequence bit-exactly, while std::uniform_int_distribution
// is implementation-defined, so we avoid the latter to keep seeded runs
// reproducible across toolchains.
class RngStream {
public:
    explicit RngStream(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 2^w), 0 <= w <= 64.
    uint64_t bits(int w) {
        if (w <= 0) return 0;
        uint64_t v = gen_();
        return w >= 64 ? v : (v >> (64 - w));
    }

    // Uniform on [0, bound) by rejection from a power-of-two window.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        int w = 64 - __builtin_clzll(bound - 1);
        for (;;) {
            uint64_t v = bits(w);
            if (v < bound) return v;
        }
    }

    // Uniform on [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // splitmix64 finalizer; used to derive independent per-cell seeds.
    static uint64_t mix(uint64_t a, uint64_t b) {
        uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace nmc
