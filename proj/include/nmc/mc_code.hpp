#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "nmc/coding_scheme.hpp"
#include "nmc/gf2x.hpp"
#include "nmc/table_code.hpp"

namespace nmc {

// Monte Carlo code over GF(2^n): a uniformly random polynomial P of degree
// at most 9t-1 defines decode-by-evaluation and encode-by-root-finding.
//
// Bit layout of y = P(x): message s in the low k bits, the m = n-k-b zero
// bits next, and the blob coordinate z in the top b = log2(2t) bits.
class MonteCarloCode final : public CodingScheme {
public:
    enum class Validation { fast, strict };

    // Samples P with rng. In strict mode the support of every message is
    // counted and the build is rejected (BuildError) unless all sizes land
    // in [t, 3t]; fast mode skips the check.
    static MonteCarloCode build(const CodeParams& params, RngStream& rng,
                                Validation mode = Validation::fast);

    // Reassembles a code from explicit parts (deserialization, tests).
    static MonteCarloCode from_parts(const CodeParams& params, const FieldSpec& field, Poly poly);

    int block_bits() const override { return params_.n; }
    int message_bits() const override { return params_.k; }
    std::optional<uint64_t> decode(uint64_t x) const override;

    // E(s) from the cached support index (one shared full-field evaluation
    // of P); falls back to per-z root finding when the field is too large
    // to scan. Throws BuildError for an unencodable message.
    std::vector<uint64_t> support(uint64_t s) const override;
    uint64_t encode(uint64_t s, RngStream& rng) const override;

    // The direct Construction-2 encoder path: roots of P - (s, 0^m, z)
    // collected over all z. Independent of the scan index; used to
    // cross-check it.
    std::vector<uint64_t> support_via_roots(uint64_t s) const;

    const CodeParams& params() const { return params_; }
    const FieldSpec& field() const { return field_; }
    const Poly& poly() const { return poly_; }
    int zero_bits() const { return zero_bits_; }  // m in the paper's layout
    int blob_bits() const { return blob_bits_; }  // b = log2(2t)

private:
    MonteCarloCode() = default;
    void ensure_index() const;

    CodeParams params_;
    FieldSpec field_;
    Poly poly_;
    int zero_bits_ = 0;
    int blob_bits_ = 0;

    // lazily built support index, boxed so the code object stays movable
    struct IndexCache {
        std::once_flag once;
        std::shared_ptr<const std::vector<std::vector<uint64_t>>> index;
    };
    mutable std::unique_ptr<IndexCache> cache_ = std::make_unique<IndexCache>();
};

// Per-message support sizes plus the Lemma-4.3 window check.
struct McSupportReport {
    std::vector<uint64_t> sizes;  // indexed by message
    uint64_t t = 0;
    bool pass = false;  // all sizes in [t, 3t]
};

// Counts |E(s)| for every message via the encoder's root-finding path
// (enforced: k <= 20).
McSupportReport validate_mc_supports(const MonteCarloCode& code);

void validate_mc_params(const CodeParams& params);

}  // namespace nmc
