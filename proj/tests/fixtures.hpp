#pragma once

#include "nmc/coding_scheme.hpp"

namespace nmc::fixtures {

// Rate-(1 - alpha + delta) "identity-style" code for the subset-position
// attack: the message is (a, b); the codeword packs a into the low bits of
// the attacked prefix, pads the prefix with uniform random bits u, and
// copies b verbatim into the suffix:
//
//   x = [ a | u ]  [ b ]          prefix = low tb bits, suffix = rest
//
// k = a_bits + (n - tb), so choosing a_bits > 0 over-packs the prefix.
class OverPackedPrefixCode final : public CodingScheme {
public:
    OverPackedPrefixCode(int n, int tb, int a_bits) : n_(n), tb_(tb), a_bits_(a_bits) {}

    int block_bits() const override { return n_; }
    int message_bits() const override { return a_bits_ + (n_ - tb_); }

    std::optional<uint64_t> decode(uint64_t x) const override {
        uint64_t a = x & ((1ull << a_bits_) - 1);
        uint64_t b = x >> tb_;
        return a | (b << a_bits_);
    }

    std::vector<uint64_t> support(uint64_t s) const override {
        uint64_t a = s & ((1ull << a_bits_) - 1);
        uint64_t b = s >> a_bits_;
        std::vector<uint64_t> e;
        int u_bits = tb_ - a_bits_;
        e.reserve(1ull << u_bits);
        for (uint64_t u = 0; u < (1ull << u_bits); ++u) {
            e.push_back(a | (u << a_bits_) | (b << tb_));
        }
        return e;
    }

private:
    int n_, tb_, a_bits_;
};

// Rate exactly 1 - alpha: message copied outside the prefix, prefix pinned
// to zero by the encoder and ignored by the decoder.
class IdentitySuffixCode final : public CodingScheme {
public:
    IdentitySuffixCode(int n, int tb) : n_(n), tb_(tb) {}

    int block_bits() const override { return n_; }
    int message_bits() const override { return n_ - tb_; }
    std::optional<uint64_t> decode(uint64_t x) const override { return x >> tb_; }
    std::vector<uint64_t> support(uint64_t s) const override { return {s << tb_}; }

private:
    int n_, tb_;
};

}  // namespace nmc::fixtures
