#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nmc/rng.hpp"

namespace nmc {

// Common face of every coding scheme in this project: a randomized encoder
// Enc: {0,1}^k -> {0,1}^n that is uniform over a per-message support E(s),
// and a deterministic decoder Dec: {0,1}^n -> {0,1}^k or bot (nullopt).
//
// Codes are immutable once built; decode/support/encode are const and safe
// to call concurrently (each caller brings its own RngStream).
class CodingScheme {
public:
    virtual ~CodingScheme() = default;

    virtual int block_bits() const = 0;    // n
    virtual int message_bits() const = 0;  // k

    virtual std::optional<uint64_t> decode(uint64_t x) const = 0;

    // E(s), sorted ascending. Must be non-empty for valid codes.
    virtual std::vector<uint64_t> support(uint64_t s) const = 0;

    // Uniform draw from E(s).
    virtual uint64_t encode(uint64_t s, RngStream& rng) const {
        std::vector<uint64_t> e = support(s);
        return e[rng.below(e.size())];
    }

    uint64_t message_count() const { return 1ull << message_bits(); }
};

}  // namespace nmc
