#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "nmc/coding_scheme.hpp"
#include "nmc/gf2x.hpp"
#include "nmc/rng.hpp"

namespace nmc {

// Shared parameter block for both constructions.
//   n      block length in bits
//   k      message length in bits
//   t      blob size (table code) / independence parameter (Monte Carlo)
//   delta  relative distance in [0, 1/2)
//   seed   64-bit reproducibility seed
struct CodeParams {
    int n = 0;
    int k = 0;
    uint64_t t = 1;
    double delta = 0.0;
    uint64_t seed = 0;
};

// Exact Hamming-ball volume V(n, radius) = sum_{i<=radius} C(n,i).
// n <= 64, so the result fits comfortably in 128 bits.
u128 hamming_ball_volume(int n, int radius);

// The sparse table code: for each message in lexicographic order, t
// codewords drawn uniformly from the not-yet-removed space, removing the
// radius-(delta*n) Hamming ball around every pick. Decode is blob-membership
// lookup, bot outside every blob. All pairs of codewords across blobs end up
// at Hamming distance > delta*n.
class TableCode final : public CodingScheme {
public:
    // Throws ValidationError if parameters are out of range (requires
    // n <= 24 and t*2^k*V(n, floor(delta*n)) <= 2^n), BuildError if the
    // sample space is exhausted mid-build (cannot happen when the volume
    // bound holds; kept for defense).
    static TableCode build(const CodeParams& params, RngStream& rng);

    // Reassembles a code from stored blobs (deserialization path).
    static TableCode from_blobs(const CodeParams& params, std::vector<std::vector<uint64_t>> blobs);

    int block_bits() const override { return params_.n; }
    int message_bits() const override { return params_.k; }
    std::optional<uint64_t> decode(uint64_t x) const override;
    std::vector<uint64_t> support(uint64_t s) const override;
    uint64_t encode(uint64_t s, RngStream& rng) const override;

    const CodeParams& params() const { return params_; }
    // Blob lists in the order they were drawn (support() returns them sorted).
    const std::vector<std::vector<uint64_t>>& blobs() const { return blobs_; }

private:
    TableCode() = default;

    CodeParams params_;
    std::vector<std::vector<uint64_t>> blobs_;
    std::unordered_map<uint64_t, uint64_t> decode_map_;
};

void validate_table_params(const CodeParams& params);

}  // namespace nmc
