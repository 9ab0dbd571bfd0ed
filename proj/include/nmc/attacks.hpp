#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nmc/coding_scheme.hpp"
#include "nmc/rng.hpp"
#include "nmc/tamper.hpp"

namespace nmc {

// Trivial scheme that is perfectly non-malleable against any family fixing
// S pointwise: messages map deterministically onto the first 2^k elements
// of S (sorted), everything else decodes to bot.
class FixedSetCode final : public CodingScheme {
public:
    FixedSetCode(int n, int k, std::vector<uint64_t> s_fixed);

    int block_bits() const override { return n_; }
    int message_bits() const override { return k_; }
    std::optional<uint64_t> decode(uint64_t x) const override;
    std::vector<uint64_t> support(uint64_t s) const override;
    uint64_t encode(uint64_t s, RngStream&) const override { return codewords_[s]; }

    const std::vector<uint64_t>& codewords() const { return codewords_; }

private:
    int n_, k_;
    std::vector<uint64_t> codewords_;
    std::map<uint64_t, uint64_t> index_;
};

// The uniformly random coding scheme: the decoder is a uniform random
// function onto {0,1}^k and the encoder picks uniformly from the preimage.
class UniformScheme final : public CodingScheme {
public:
    // Redraws the decoder table until every message has a preimage;
    // `rebuilds` counts the redraws. Requires n <= 20.
    static UniformScheme build(int n, int k, RngStream& rng);

    int block_bits() const override { return n_; }
    int message_bits() const override { return k_; }
    std::optional<uint64_t> decode(uint64_t x) const override { return dec_[x]; }
    std::vector<uint64_t> support(uint64_t s) const override { return preimage_[s]; }

    int rebuilds() const { return rebuilds_; }

private:
    UniformScheme() = default;
    int n_ = 0, k_ = 0, rebuilds_ = 0;
    std::vector<uint64_t> dec_;
    std::vector<std::vector<uint64_t>> preimage_;
};

// Swap adversary: two messages with small supports, f sends all of E(s1)
// to a codeword of s2 and vice versa, identity elsewhere. Verified to have
// strong non-malleability error exactly 1.
struct SwapAttackResult {
    uint64_t s1 = 0, s2 = 0;
    uint64_t c1 = 0, c2 = 0;
    TamperSpec f = TamperSpec::identity(1);
    double achieved_error = 0.0;
};

// budget caps the total number of support elements enumerated during the
// search for the Markov-typical message pair.
SwapAttackResult swap_attack(const CodingScheme& code, uint64_t budget);

// Claim-5.3 heavy set: for a distribution with Shannon entropy <= r, the
// points with mass > 2^(-r/(1-eta)) carry at least eta of the mass and
// number fewer than 2^(r/(1-eta)).
std::vector<uint64_t> heavy_prefix_set(const std::map<uint64_t, double>& dist, double r,
                                       double eta);

double shannon_entropy(const std::map<uint64_t, double>& dist);

struct SubsetAttackResult {
    std::vector<int> positions;  // T
    uint64_t s0 = 0, s1 = 0;
    std::vector<uint64_t> x_eta;  // heavy prefixes of X_T | S = s0
    uint64_t w = 0;               // prefix unextendable over E(s0) u E(s1)
    TamperSpec f = TamperSpec::identity(1);
    double eta = 0.0;
    double mass_s0 = 0.0;  // Pr[X_T in X_eta | S = s0] (>= eta)
    double mass_s1 = 0.0;  // Pr[X_T in X_eta | S = s1] (<= eta/2)
    double measured_gap = 0.0;
};

struct SubsetAttackOutcome {
    bool applicable = false;
    std::string reason;  // set when not applicable
    std::optional<SubsetAttackResult> result;
};

// The rate-barrier adversary on the positions T: rewrite x_T to w whenever
// x_T lands in the heavy prefix set of some message s0, leave the codeword
// alone otherwise. Requires exact enumeration (n <= 20, k <= 20) and code
// rate >= 1 - alpha + delta with alpha = |T|/n; reports inapplicability
// instead of failing when no (s0, s1, w) triple exists.
SubsetAttackOutcome subset_attack(const CodingScheme& code, const std::vector<int>& positions,
                                  double delta, double alpha);

struct BarrierReport {
    double dist_to_uniform_2k = 0.0;       // exact distance of (U, Dec(f(Enc(U)))) from U_{2k}
    double marginal_dist_to_uniform_k = 0.0;  // distance of Dec(f(Enc(U))) from U_k
    double support_bound = 0.0;            // counting floor 1 - 2^(n-2k)
    int rebuilds = 0;
};

// Builds the uniform scheme, applies the first-bit-flip adversary, and
// measures both distances exactly. Requires n <= 20.
BarrierReport uniform_barrier_experiment(int n, int k, RngStream& rng);

}  // namespace nmc
