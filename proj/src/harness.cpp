#include "nmc/harness.hpp"

#include <algorithm>
#include <cmath>

#include "nmc/errors.hpp"

namespace nmc {

namespace {

Outcome decode_outcome(const CodingScheme& code, uint64_t x) {
    std::optional<uint64_t> s = code.decode(x);
    return s ? Outcome::msg(*s) : Outcome::bot();
}

OutcomeDist canonical_from_stats(const CodingScheme& code, const FixedPointStats& stats,
                                 uint64_t r) {
    HeavySet heavy = heavy_set(stats, r);
    OutcomeDist d;
    d.exact = stats.exact;
    d.samples = stats.samples;
    d.radius = stats.radius;
    double heavy_mass = 0.0;
    if (stats.p0 > 0.0) d.mass[Outcome::same()] += stats.p0;
    for (uint64_t x : heavy.members) {
        double px = stats.p.at(x);
        d.mass[decode_outcome(code, x)] += px;
        heavy_mass += px;
    }
    double rest = 1.0 - stats.p0 - heavy_mass;
    if (rest > 0.0) d.mass[Outcome::bot()] += rest;
    return d;
}

}  // namespace

OutcomeDist tamper_dist_strong_exact(const CodingScheme& code, const TamperSpec& f, uint64_t s) {
    std::vector<uint64_t> e = code.support(s);
    OutcomeDist d;
    d.exact = true;
    double w = 1.0 / static_cast<double>(e.size());
    for (uint64_t x : e) {
        uint64_t y = f.apply(x);
        if (y == x) {
            d.mass[Outcome::same()] += w;
        } else {
            d.mass[decode_outcome(code, y)] += w;
        }
    }
    return d;
}

OutcomeDist tamper_dist_strong_sampled(const CodingScheme& code, const TamperSpec& f, uint64_t s,
                                       uint64_t n_samples, RngStream& rng) {
    if (n_samples < 100) {
        throw ValidationError("sampled tampering distribution needs at least 100 samples");
    }
    OutcomeDist d;
    d.exact = false;
    d.samples = n_samples;
    d.radius = std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n_samples)));
    double w = 1.0 / static_cast<double>(n_samples);
    for (uint64_t i = 0; i < n_samples; ++i) {
        uint64_t x = code.encode(s, rng);
        uint64_t y = f.apply(x);
        if (y == x) {
            d.mass[Outcome::same()] += w;
        } else {
            d.mass[decode_outcome(code, y)] += w;
        }
    }
    return d;
}

OutcomeDist canonical_df_exact(const CodingScheme& code, const TamperSpec& f, uint64_t r) {
    return canonical_from_stats(code, fixed_point_stats_exact(f), r);
}

OutcomeDist canonical_df_sampled(const CodingScheme& code, const TamperSpec& f, uint64_t r,
                                 uint64_t n_samples, RngStream& rng) {
    return canonical_from_stats(code, fixed_point_stats_sampled(f, n_samples, rng), r);
}

uint64_t default_heavy_r(double eps, uint64_t t) {
    double v = eps * eps * static_cast<double>(t);
    uint64_t r = v >= 2.0 ? static_cast<uint64_t>(v) : 2;
    return r;
}

double nm_error_exact(const CodingScheme& code, const TamperSpec& f, uint64_t s,
                      const OutcomeDist& df) {
    OutcomeDist dec_dist = push_copy(tamper_dist_strong_exact(code, f, s), s);
    return stat_dist(dec_dist, push_copy(df, s));
}

double nm_error_sampled(const CodingScheme& code, const TamperSpec& f, uint64_t s,
                        const OutcomeDist& df, uint64_t n_samples, RngStream& rng) {
    OutcomeDist dec_dist = push_copy(tamper_dist_strong_sampled(code, f, s, n_samples, rng), s);
    return stat_dist(dec_dist, push_copy(df, s));
}

double strong_nm_error_exact(const CodingScheme& code, const TamperSpec& f,
                             std::span<const uint64_t> messages) {
    if (messages.size() < 2) throw ValidationError("strong NM error needs >= 2 messages");
    std::vector<OutcomeDist> dists;
    dists.reserve(messages.size());
    for (uint64_t s : messages) dists.push_back(tamper_dist_strong_exact(code, f, s));
    double worst = 0.0;
    for (size_t i = 0; i < dists.size(); ++i) {
        for (size_t j = i + 1; j < dists.size(); ++j) {
            worst = std::max(worst, stat_dist(dists[i], dists[j]));
        }
    }
    return worst;
}

double strong_nm_error_sampled(const CodingScheme& code, const TamperSpec& f,
                               std::span<const uint64_t> messages, uint64_t n_samples,
                               RngStream& rng) {
    if (messages.size() < 2) throw ValidationError("strong NM error needs >= 2 messages");
    std::vector<OutcomeDist> dists;
    dists.reserve(messages.size());
    for (uint64_t s : messages) {
        dists.push_back(tamper_dist_strong_sampled(code, f, s, n_samples, rng));
    }
    double worst = 0.0;
    for (size_t i = 0; i < dists.size(); ++i) {
        for (size_t j = i + 1; j < dists.size(); ++j) {
            worst = std::max(worst, stat_dist(dists[i], dists[j]));
        }
    }
    return worst;
}

double error_detection_rate_exact(const CodingScheme& code, const TamperSpec& f, uint64_t s) {
    OutcomeDist d = tamper_dist_strong_exact(code, f, s);
    return 1.0 - d.at(Outcome::bot());
}

double error_detection_rate_sampled(const CodingScheme& code, const TamperSpec& f, uint64_t s,
                                    uint64_t n_samples, RngStream& rng) {
    OutcomeDist d = tamper_dist_strong_sampled(code, f, s, n_samples, rng);
    return 1.0 - d.at(Outcome::bot());
}

uint64_t sample_size_plan(uint64_t r_support, double eps, double gamma, double eta, double c) {
    if (!(gamma >= 0.0 && gamma < eps)) {
        throw ValidationError("sample_size_plan requires 0 <= gamma < eps");
    }
    if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("sample_size_plan: eta in (0, 1]");
    double gap = eps - gamma;
    double v = c * (static_cast<double>(r_support) + 2.0 + std::log2(1.0 / eta)) / (gap * gap);
    return static_cast<uint64_t>(std::ceil(v));
}

OutcomeDist remark_sampler_dist_exact(const CodingScheme& code, const TamperSpec& f) {
    OutcomeDist d;
    d.exact = true;
    uint64_t msgs = code.message_count();
    double ws = 1.0 / static_cast<double>(msgs);
    for (uint64_t s = 0; s < msgs; ++s) {
        std::vector<uint64_t> e = code.support(s);
        double w = ws / static_cast<double>(e.size());
        for (uint64_t x : e) {
            Outcome o = decode_outcome(code, f.apply(x));
            if (o == Outcome::msg(s)) {
                d.mass[Outcome::same()] += w;
            } else {
                d.mass[o] += w;
            }
        }
    }
    return d;
}

double NmWitnessErrors::best() const {
    return std::min(std::min(canonical, point_bot), std::min(point_same, remark_sampler));
}

NmWitnessErrors nm_error_witnesses_exact(const CodingScheme& code, const TamperSpec& f,
                                         std::span<const uint64_t> messages, uint64_t r) {
    NmWitnessErrors out;
    OutcomeDist canonical = canonical_df_exact(code, f, r);
    OutcomeDist pbot = OutcomeDist::point(Outcome::bot());
    OutcomeDist psame = OutcomeDist::point(Outcome::same());
    OutcomeDist remark = remark_sampler_dist_exact(code, f);
    out.canonical = out.point_bot = out.point_same = out.remark_sampler = 0.0;
    for (uint64_t s : messages) {
        OutcomeDist dec = push_copy(tamper_dist_strong_exact(code, f, s), s);
        out.canonical = std::max(out.canonical, stat_dist(dec, push_copy(canonical, s)));
        out.point_bot = std::max(out.point_bot, stat_dist(dec, push_copy(pbot, s)));
        out.point_same = std::max(out.point_same, stat_dist(dec, push_copy(psame, s)));
        out.remark_sampler = std::max(out.remark_sampler, stat_dist(dec, push_copy(remark, s)));
    }
    return out;
}

}  // namespace nmc
