#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nmc/gf2x.hpp"

namespace nmc {

// Full-field polynomial evaluation: the value of p at every element of
// GF(2^m), indexed by element bits. This is the hot kernel behind
// brute-force root finding and Monte Carlo support enumeration.
//
// Two implementations are kept on purpose:
//   * eval_on_field_serial -- plain Horner at each point. Slow, obviously
//     correct, used as the reference in tests and benchmarks.
//   * eval_on_field / eval_on_field_blocks -- OpenMP-parallel remainder
//     tree over the chain of F2-subspaces W_s = span(e_1..e_s). The coset
//     beta + W_s has vanishing polynomial L_s(X) - L_s(beta) where L_s is
//     2-linearized with s+1 terms, so each halving step costs
//     O(2^s * s) multiplications instead of a dense division.

inline constexpr int kMaxEvalFieldBits = 26;

std::vector<uint64_t> eval_on_field_serial(const FieldSpec& f, const Poly& p);

std::vector<uint64_t> eval_on_field(const FieldSpec& f, const Poly& p);

// Streaming variant: sink(base, vals) is invoked once per contiguous block
// of points [base, base + vals.size()), together covering the field exactly
// once. Blocks are disjoint; calls may come from different threads
// concurrently, so the sink must be safe to run in parallel.
void eval_on_field_blocks(
    const FieldSpec& f, const Poly& p,
    const std::function<void(uint64_t base, std::span<const uint64_t> vals)>& sink);

}  // namespace nmc
