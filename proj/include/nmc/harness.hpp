#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nmc/coding_scheme.hpp"
#include "nmc/outcome.hpp"
#include "nmc/rng.hpp"
#include "nmc/tamper.hpp"

namespace nmc {

// Distribution of D_s: `same` when f fixes the drawn codeword, the decode
// of the tampered codeword otherwise; encoder draw uniform over E(s).
OutcomeDist tamper_dist_strong_exact(const CodingScheme& code, const TamperSpec& f, uint64_t s);

// Empirical version from n_samples encoder draws; refuses n_samples < 100.
OutcomeDist tamper_dist_strong_sampled(const CodingScheme& code, const TamperSpec& f, uint64_t s,
                                       uint64_t n_samples, RngStream& rng);

// The canonical simulator distribution: `same` with probability p0, the
// decode of tampered outputs landing in the heavy set (threshold 1/r), and
// bot for everything else.
OutcomeDist canonical_df_exact(const CodingScheme& code, const TamperSpec& f, uint64_t r);
OutcomeDist canonical_df_sampled(const CodingScheme& code, const TamperSpec& f, uint64_t r,
                                 uint64_t n_samples, RngStream& rng);

// Default heavy-set threshold parameter r used when a caller does not pick
// one explicitly: max(2, floor(eps^2 * t)).
uint64_t default_heavy_r(double eps, uint64_t t);

// Statistical distance between Dec(f(Enc(s))) and copy(Df, s).
double nm_error_exact(const CodingScheme& code, const TamperSpec& f, uint64_t s,
                      const OutcomeDist& df);
double nm_error_sampled(const CodingScheme& code, const TamperSpec& f, uint64_t s,
                        const OutcomeDist& df, uint64_t n_samples, RngStream& rng);

// Max over unordered message pairs of the distance between strong-form
// tampering distributions; needs at least two messages.
double strong_nm_error_exact(const CodingScheme& code, const TamperSpec& f,
                             std::span<const uint64_t> messages);
double strong_nm_error_sampled(const CodingScheme& code, const TamperSpec& f,
                               std::span<const uint64_t> messages, uint64_t n_samples,
                               RngStream& rng);

// Pr[Dec(f(Enc(s))) != bot].
double error_detection_rate_exact(const CodingScheme& code, const TamperSpec& f, uint64_t s);
double error_detection_rate_sampled(const CodingScheme& code, const TamperSpec& f, uint64_t s,
                                    uint64_t n_samples, RngStream& rng);

// Sample count n = ceil(c * (r_support + 2 + log2(1/eta)) / (eps - gamma)^2)
// sufficient for an empirical distribution on <= r_support points to land
// eps-close with probability 1 - eta, when each draw is gamma-close.
uint64_t sample_size_plan(uint64_t r_support, double eps, double gamma, double eta,
                          double c = 2.0);

// The efficiently samplable baseline simulator: draw S uniform, X = Enc(S);
// output `same` if Dec(f(X)) = S, else Dec(f(X)). Exact computation.
OutcomeDist remark_sampler_dist_exact(const CodingScheme& code, const TamperSpec& f);

// Def-2.4 error against several simulator witnesses, each maximized over
// the given messages. No single witness is canonical in general, so reports
// carry the whole family plus the best value.
struct NmWitnessErrors {
    double canonical = 1.0;
    double point_bot = 1.0;
    double point_same = 1.0;
    double remark_sampler = 1.0;

    double best() const;
};

NmWitnessErrors nm_error_witnesses_exact(const CodingScheme& code, const TamperSpec& f,
                                         std::span<const uint64_t> messages, uint64_t r);

}  // namespace nmc
