#include "nmc/mc_code.hpp"

#include <algorithm>
#include <string>

#include "nmc/errors.hpp"
#include "nmc/field_eval.hpp"
#include "nmc/roots.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nmc {

namespace {

constexpr int kMaxIndexMessageBits = 20;

bool is_pow2(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

void validate_mc_params(const CodeParams& p) {
    if (p.n < 2 || p.n > 64) throw ValidationError("mc code requires 2 <= n <= 64");
    if (p.k < 1 || p.k > p.n) throw ValidationError("mc code requires 1 <= k <= n");
    if (!is_pow2(p.t)) throw ValidationError("mc code requires t to be a power of two");
    int b = 64 - __builtin_clzll(p.t);  // log2(2t) = log2(t) + 1
    int m = p.n - p.k - b;
    if (m < 0) {
        throw ValidationError("mc code requires m = n - k - log2(2t) >= 0, got " +
                              std::to_string(m));
    }
    if (p.delta != 0.0) throw ValidationError("mc code has no distance parameter (delta = 0)");
    // degree 9t - 1 polynomials; keep the dense representation reasonable
    if (p.t > (1ull << 20)) throw ValidationError("mc code caps t at 2^20");
}

MonteCarloCode MonteCarloCode::build(const CodeParams& params, RngStream& rng, Validation mode) {
    validate_mc_params(params);
    MonteCarloCode code;
    code.params_ = params;
    code.field_ = FieldSpec::standard(params.n);
    code.blob_bits_ = 64 - __builtin_clzll(params.t);
    code.zero_bits_ = params.n - params.k - code.blob_bits_;
    code.poly_ = random_poly(code.field_, static_cast<int>(9 * params.t) - 1, rng);
    if (mode == Validation::strict) {
        McSupportReport report = validate_mc_supports(code);
        if (!report.pass) {
            throw BuildError("mc build rejected: some support size outside [t, 3t]");
        }
    }
    return code;
}

MonteCarloCode MonteCarloCode::from_parts(const CodeParams& params, const FieldSpec& field,
                                          Poly poly) {
    validate_mc_params(params);
    if (field.m != params.n) throw ValidationError("field degree must equal n");
    if (poly_deg(poly) >= static_cast<int>(9 * params.t)) {
        throw ValidationError("polynomial degree exceeds 9t - 1");
    }
    MonteCarloCode code;
    code.params_ = params;
    code.field_ = field;
    code.poly_ = std::move(poly);
    code.blob_bits_ = 64 - __builtin_clzll(params.t);
    code.zero_bits_ = params.n - params.k - code.blob_bits_;
    return code;
}

std::optional<uint64_t> MonteCarloCode::decode(uint64_t x) const {
    uint64_t y = poly_eval(field_, poly_, x);
    uint64_t mid = (y >> params_.k) & ((zero_bits_ >= 64 ? ~0ull : (1ull << zero_bits_) - 1));
    if (mid != 0) return std::nullopt;
    return y & ((params_.k >= 64) ? ~0ull : (1ull << params_.k) - 1);
}

void MonteCarloCode::ensure_index() const {
    std::call_once(cache_->once, [this] {
        auto index = std::make_shared<std::vector<std::vector<uint64_t>>>(1ull << params_.k);
        const int k = params_.k;
        const int mid_lo = k;
        const int mid_hi = k + zero_bits_;
        const uint64_t kmask = (1ull << k) - 1;

        // One full-field evaluation of P; every x with the zero pattern in
        // the middle bits of P(x) is a codeword of message low-bits(P(x)).
        int nthreads = 1;
#ifdef _OPENMP
        nthreads = omp_get_max_threads();
#endif
        std::vector<std::vector<std::pair<uint64_t, uint64_t>>> hits(
            static_cast<size_t>(nthreads));
        eval_on_field_blocks(field_, poly_, [&](uint64_t base, std::span<const uint64_t> vals) {
            int tid = 0;
#ifdef _OPENMP
            tid = omp_get_thread_num();
#endif
            auto& local = hits[static_cast<size_t>(tid)];
            for (size_t i = 0; i < vals.size(); ++i) {
                uint64_t y = vals[i];
                uint64_t mid = (y >> mid_lo) & ((1ull << (mid_hi - mid_lo)) - 1);
                if (mid == 0) local.emplace_back(y & kmask, base + i);
            }
        });
        for (auto& local : hits) {
            for (auto [s, x] : local) (*index)[s].push_back(x);
        }
        for (auto& bucket : *index) std::sort(bucket.begin(), bucket.end());
        cache_->index = std::move(index);
    });
}

std::vector<uint64_t> MonteCarloCode::support(uint64_t s) const {
    if (params_.n <= kMaxEvalFieldBits && params_.k <= kMaxIndexMessageBits) {
        ensure_index();
        const auto& e = (*cache_->index)[s];
        if (e.empty()) {
            throw BuildError("unencodable message " + std::to_string(s) +
                             ": empty preimage under P");
        }
        return e;
    }
    return support_via_roots(s);
}

std::vector<uint64_t> MonteCarloCode::support_via_roots(uint64_t s) const {
    std::vector<uint64_t> e;
    for (uint64_t z = 0; z < (1ull << blob_bits_); ++z) {
        uint64_t y = s | (z << (params_.k + zero_bits_));
        Poly diff = poly_;
        if (diff.coeffs.empty()) diff.coeffs.push_back(0);
        diff.coeffs[0] ^= y;
        if (poly_deg(diff) < 0) {
            // P is the constant y: every field element is a preimage
            if (params_.n > kMaxEvalFieldBits) {
                throw BuildError("constant polynomial preimage too large to enumerate");
            }
            e.resize(1ull << params_.n);
            for (uint64_t x = 0; x < e.size(); ++x) e[x] = x;
            return e;
        }
        std::vector<uint64_t> roots = find_roots(field_, diff);
        e.insert(e.end(), roots.begin(), roots.end());
    }
    std::sort(e.begin(), e.end());
    if (e.empty()) {
        throw BuildError("unencodable message " + std::to_string(s) +
                         ": empty preimage under P");
    }
    return e;
}

uint64_t MonteCarloCode::encode(uint64_t s, RngStream& rng) const {
    std::vector<uint64_t> e = support(s);
    return e[rng.below(e.size())];
}

McSupportReport validate_mc_supports(const MonteCarloCode& code) {
    if (code.message_bits() > kMaxIndexMessageBits) {
        throw ValidationError("validate_mc_supports requires k <= " +
                              std::to_string(kMaxIndexMessageBits));
    }
    McSupportReport report;
    report.t = code.params().t;
    report.sizes.resize(code.message_count());
    report.pass = true;
    for (uint64_t s = 0; s < code.message_count(); ++s) {
        uint64_t size = 0;
        try {
            size = code.support(s).size();
        } catch (const BuildError&) {
            size = 0;  // empty preimage
        }
        report.sizes[s] = size;
        if (size < report.t || size > 3 * report.t) report.pass = false;
    }
    return report;
}

}  // namespace nmc
