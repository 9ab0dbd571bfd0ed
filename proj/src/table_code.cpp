#include "nmc/table_code.hpp"

#include <algorithm>
#include <string>

#include "nmc/errors.hpp"

namespace nmc {

namespace {

constexpr int kMaxTableBits = 24;

// Visit every vector within Hamming distance `radius` of w (w included).
template <typename Fn>
void for_each_in_ball(uint64_t w, int n, int radius, Fn&& fn) {
    fn(w);
    if (radius <= 0) return;
    // flip sets of up to `radius` positions, lexicographic over position tuples
    std::vector<int> pos(static_cast<size_t>(radius), 0);
    for (int r = 1; r <= radius; ++r) {
        // iterate combinations of r positions out of n
        for (int i = 0; i < r; ++i) pos[static_cast<size_t>(i)] = i;
        for (;;) {
            uint64_t mask = 0;
            for (int i = 0; i < r; ++i) mask |= 1ull << pos[static_cast<size_t>(i)];
            fn(w ^ mask);
            int i = r - 1;
            while (i >= 0 && pos[static_cast<size_t>(i)] == n - r + i) --i;
            if (i < 0) break;
            ++pos[static_cast<size_t>(i)];
            for (int j = i + 1; j < r; ++j)
                pos[static_cast<size_t>(j)] = pos[static_cast<size_t>(j - 1)] + 1;
        }
    }
}

}  // namespace

u128 hamming_ball_volume(int n, int radius) {
    u128 total = 0;
    u128 binom = 1;  // C(n, 0)
    for (int i = 0; i <= std::min(radius, n); ++i) {
        total += binom;
        binom = binom * static_cast<u128>(n - i) / static_cast<u128>(i + 1);
    }
    return total;
}

void validate_table_params(const CodeParams& p) {
    if (p.n < 1 || p.n > kMaxTableBits) {
        throw ValidationError("table code requires 1 <= n <= " + std::to_string(kMaxTableBits));
    }
    if (p.k < 0 || p.k > p.n) throw ValidationError("table code requires 0 <= k <= n");
    if (p.t < 1) throw ValidationError("table code requires t >= 1");
    if (!(p.delta >= 0.0 && p.delta < 0.5)) {
        throw ValidationError("table code requires delta in [0, 1/2)");
    }
    u128 picks = static_cast<u128>(p.t) * (static_cast<u128>(1) << p.k);
    if (picks > (static_cast<u128>(1) << p.n)) {
        throw ValidationError("infeasible table code: t * 2^k > 2^n");
    }
    // t * 2^k * V <= 2^n guarantees the build cannot exhaust the space; when
    // only t * 2^k <= 2^n holds the build may still succeed because removed
    // balls overlap, so that case is attempted and reported at runtime.
}

TableCode TableCode::build(const CodeParams& params, RngStream& rng) {
    validate_table_params(params);
    const uint64_t space = 1ull << params.n;
    const int radius = static_cast<int>(params.delta * params.n);

    std::vector<bool> removed(space, false);
    uint64_t remaining = space;

    TableCode code;
    code.params_ = params;
    code.blobs_.resize(1ull << params.k);
    code.decode_map_.reserve(params.t << params.k);

    // Rejection sampling is uniform over the remaining set; once the set
    // gets sparse we compact it into an explicit list instead of spinning.
    std::vector<uint64_t> pool;
    bool use_pool = false;

    for (uint64_t s = 0; s < (1ull << params.k); ++s) {
        auto& blob = code.blobs_[s];
        blob.reserve(params.t);
        for (uint64_t i = 0; i < params.t; ++i) {
            if (remaining == 0) {
                throw BuildError("table code sample space exhausted at message index " +
                                 std::to_string(s));
            }
            if (!use_pool && remaining < space / 16) {
                pool.clear();
                pool.reserve(remaining);
                for (uint64_t x = 0; x < space; ++x) {
                    if (!removed[x]) pool.push_back(x);
                }
                use_pool = true;
            }
            uint64_t w;
            if (use_pool) {
                // draw from the compacted list, swap-removing stale entries
                for (;;) {
                    uint64_t j = rng.below(pool.size());
                    w = pool[j];
                    if (!removed[w]) break;
                    pool[j] = pool.back();
                    pool.pop_back();
                }
            } else {
                do {
                    w = rng.bits(params.n);
                } while (removed[w]);
            }
            blob.push_back(w);
            code.decode_map_.emplace(w, s);
            for_each_in_ball(w, params.n, radius, [&](uint64_t x) {
                if (!removed[x]) {
                    removed[x] = true;
                    --remaining;
                }
            });
        }
    }
    return code;
}

TableCode TableCode::from_blobs(const CodeParams& params,
                                std::vector<std::vector<uint64_t>> blobs) {
    validate_table_params(params);
    if (blobs.size() != (1ull << params.k)) {
        throw ValidationError("blob count does not match 2^k");
    }
    TableCode code;
    code.params_ = params;
    code.blobs_ = std::move(blobs);
    for (uint64_t s = 0; s < code.blobs_.size(); ++s) {
        if (code.blobs_[s].size() != params.t) {
            throw ValidationError("blob " + std::to_string(s) + " does not have t codewords");
        }
        for (uint64_t w : code.blobs_[s]) {
            if (w >> params.n) throw ValidationError("codeword exceeds block length");
            if (!code.decode_map_.emplace(w, s).second) {
                throw ValidationError("blobs are not disjoint");
            }
        }
    }
    return code;
}

std::optional<uint64_t> TableCode::decode(uint64_t x) const {
    auto it = decode_map_.find(x);
    if (it == decode_map_.end()) return std::nullopt;
    return it->second;
}

std::vector<uint64_t> TableCode::support(uint64_t s) const {
    std::vector<uint64_t> e = blobs_[s];
    std::sort(e.begin(), e.end());
    return e;
}

uint64_t TableCode::encode(uint64_t s, RngStream& rng) const {
    const auto& blob = blobs_[s];
    return blob[rng.below(blob.size())];
}

}  // namespace nmc
