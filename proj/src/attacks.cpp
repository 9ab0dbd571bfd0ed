#include "nmc/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nmc/errors.hpp"
#include "nmc/harness.hpp"

namespace nmc {

FixedSetCode::FixedSetCode(int n, int k, std::vector<uint64_t> s_fixed) : n_(n), k_(k) {
    if (n < 1 || n > 64) throw ValidationError("fixed-set code: n out of range");
    if (k < 0 || k > n) throw ValidationError("fixed-set code: k out of range");
    std::sort(s_fixed.begin(), s_fixed.end());
    s_fixed.erase(std::unique(s_fixed.begin(), s_fixed.end()), s_fixed.end());
    uint64_t need = 1ull << k;
    if (s_fixed.size() < need) {
        throw ValidationError("fixed-set code needs |S| >= 2^k distinct codewords");
    }
    for (uint64_t x : s_fixed) {
        if (n < 64 && (x >> n)) throw ValidationError("fixed-set codeword exceeds block length");
    }
    codewords_.assign(s_fixed.begin(), s_fixed.begin() + static_cast<int64_t>(need));
    for (uint64_t s = 0; s < need; ++s) index_[codewords_[s]] = s;
}

std::optional<uint64_t> FixedSetCode::decode(uint64_t x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<uint64_t> FixedSetCode::support(uint64_t s) const { return {codewords_[s]}; }

UniformScheme UniformScheme::build(int n, int k, RngStream& rng) {
    if (n < 1 || n > 20) throw ValidationError("uniform scheme requires n <= 20");
    if (k < 1 || k > n) throw ValidationError("uniform scheme requires 1 <= k <= n");
    UniformScheme u;
    u.n_ = n;
    u.k_ = k;
    const uint64_t space = 1ull << n;
    const uint64_t msgs = 1ull << k;
    for (int attempt = 0; attempt < 256; ++attempt) {
        u.dec_.assign(space, 0);
        u.preimage_.assign(msgs, {});
        for (uint64_t x = 0; x < space; ++x) {
            uint64_t s = rng.bits(k);
            u.dec_[x] = s;
            u.preimage_[s].push_back(x);
        }
        bool ok = true;
        for (const auto& pre : u.preimage_) {
            if (pre.empty()) {
                ok = false;
                break;
            }
        }
        if (ok) return u;
        ++u.rebuilds_;
    }
    throw BuildError("uniform scheme: some message kept an empty preimage after 256 draws");
}

SwapAttackResult swap_attack(const CodingScheme& code, uint64_t budget) {
    const int n = code.block_bits();
    const int k = code.message_bits();
    if (k < 1) throw ValidationError("swap attack needs k >= 1");
    if (n > 24) throw ValidationError("swap attack synthesizes f only up to n = 24");

    // Markov-typical threshold: at least half of all messages have
    // |E(s)| <= 2 * 2^(n-k) because the supports are disjoint.
    const uint64_t limit = 2ull << (n - k);
    uint64_t enumerated = 0;
    uint64_t s1 = 0, s2 = 0, c1 = 0, c2 = 0;
    int found = 0;
    for (uint64_t s = 0; s < code.message_count() && found < 2; ++s) {
        std::vector<uint64_t> e = code.support(s);
        enumerated += e.size();
        if (enumerated > budget) {
            throw ValidationError("swap attack enumeration exceeded budget");
        }
        if (e.size() <= limit) {
            if (found == 0) {
                s1 = s;
                c1 = e.front();
            } else {
                s2 = s;
                c2 = e.front();
            }
            ++found;
        }
    }
    if (found < 2) throw BuildError("swap attack: fewer than two Markov-typical messages");

    std::vector<uint64_t> e1 = code.support(s1);
    std::vector<uint64_t> e2 = code.support(s2);

    SwapAttackResult res;
    res.s1 = s1;
    res.s2 = s2;
    res.c1 = c1;
    res.c2 = c2;

    // f_S: everything encoding s1 goes to c2, everything encoding s2 to c1,
    // identity elsewhere. Explicit table up to n = 20, otherwise the same
    // table carried as a subset action on all positions.
    std::vector<uint64_t> table(1ull << n);
    for (uint64_t x = 0; x < table.size(); ++x) table[x] = x;
    for (uint64_t x : e1) table[x] = c2;
    for (uint64_t x : e2) table[x] = c1;
    if (n <= 20) {
        res.f = TamperSpec::explicit_table(n, std::move(table));
    } else {
        std::vector<int> all(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
        res.f = TamperSpec::subset_action(n, std::move(all), std::move(table));
    }

    // exact recomputation of both directions: when each tampered
    // distribution is a single point mass on the crossed message, the two
    // are disjoint and the distance is exactly 1 (no float accumulation)
    OutcomeDist d1 = tamper_dist_strong_exact(code, res.f, s1);
    OutcomeDist d2 = tamper_dist_strong_exact(code, res.f, s2);
    bool crossed = d1.mass.size() == 1 && d1.mass.begin()->first == Outcome::msg(s2) &&
                   d2.mass.size() == 1 && d2.mass.begin()->first == Outcome::msg(s1);
    res.achieved_error = crossed ? 1.0 : stat_dist(d1, d2);
    return res;
}

double shannon_entropy(const std::map<uint64_t, double>& dist) {
    double h = 0.0;
    for (const auto& [x, p] : dist) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

std::vector<uint64_t> heavy_prefix_set(const std::map<uint64_t, double>& dist, double r,
                                       double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw ValidationError("heavy_prefix_set: eta in (0, 1)");
    double threshold = std::exp2(-r / (1.0 - eta));
    std::vector<uint64_t> out;
    for (const auto& [x, p] : dist) {
        if (p > threshold) out.push_back(x);
    }
    return out;
}

namespace {

uint64_t extract_positions(uint64_t x, const std::vector<int>& pos) {
    uint64_t v = 0;
    for (size_t i = 0; i < pos.size(); ++i) v |= ((x >> pos[i]) & 1) << i;
    return v;
}

}  // namespace

SubsetAttackOutcome subset_attack(const CodingScheme& code, const std::vector<int>& positions,
                                  double delta, double alpha) {
    const int n = code.block_bits();
    const int k = code.message_bits();
    SubsetAttackOutcome outcome;
    if (n > 20 || k > 20) throw ValidationError("subset attack requires n, k <= 20");
    if (positions.empty() || positions.size() >= static_cast<size_t>(n)) {
        throw ValidationError("subset attack needs 1 <= |T| < n");
    }
    std::vector<int> pos = positions;
    std::sort(pos.begin(), pos.end());
    const int tb = static_cast<int>(pos.size());
    const double alpha_actual = static_cast<double>(tb) / n;
    if (std::abs(alpha_actual - alpha) > 1e-9) {
        throw ValidationError("subset attack: alpha does not match |T|/n");
    }
    const double rate = static_cast<double>(k) / n;
    if (rate + 1e-12 < 1.0 - alpha + delta) {
        outcome.reason = "rate below 1 - alpha + delta: attack inapplicable";
        return outcome;
    }
    const double eta = delta / (4.0 * alpha);
    if (!(eta > 0.0 && eta < 1.0)) {
        throw ValidationError("subset attack: eta = delta/(4 alpha) outside (0, 1)");
    }

    const uint64_t msgs = code.message_count();

    // exact conditional prefix distributions and supports per message
    std::vector<std::map<uint64_t, double>> prefix_dist(msgs);
    std::vector<std::vector<uint64_t>> supports(msgs);
    for (uint64_t s = 0; s < msgs; ++s) {
        supports[s] = code.support(s);
        double w = 1.0 / static_cast<double>(supports[s].size());
        for (uint64_t x : supports[s]) prefix_dist[s][extract_positions(x, pos)] += w;
    }

    // messages reachable under each T-prefix: prefix_msgs[p] = { Dec(x) : x_T = p }.
    // A prefix w is usable against (s0, s1) iff neither message is in the set;
    // that subsumes "no codeword of E(s0) u E(s1) has prefix w" because every
    // codeword decodes to its own message.
    std::vector<std::set<uint64_t>> prefix_msgs(1ull << tb);
    for (uint64_t x = 0; x < (1ull << n); ++x) {
        auto dec = code.decode(x);
        if (dec) prefix_msgs[extract_positions(x, pos)].insert(*dec);
    }

    struct Candidate {
        uint64_t s0, s1, w;
        std::vector<uint64_t> x_eta;
        double mass_s0, mass_s1, gap;
    };
    std::optional<Candidate> best;

    for (uint64_t s0 = 0; s0 < msgs; ++s0) {
        double r0 = shannon_entropy(prefix_dist[s0]);
        if (r0 <= 0.0) continue;  // degenerate: the Claim-5.3 set is empty
        std::vector<uint64_t> x_eta = heavy_prefix_set(prefix_dist[s0], r0, eta);
        if (x_eta.empty()) continue;
        std::set<uint64_t> x_eta_set(x_eta.begin(), x_eta.end());
        double mass_s0 = 0.0;
        for (uint64_t x : x_eta) mass_s0 += prefix_dist[s0].at(x);
        if (mass_s0 + 1e-12 < eta) continue;

        for (uint64_t s1 = 0; s1 < msgs; ++s1) {
            if (s1 == s0) continue;
            double mass_s1 = 0.0;
            for (uint64_t x : x_eta) {
                auto it = prefix_dist[s1].find(x);
                if (it != prefix_dist[s1].end()) mass_s1 += it->second;
            }
            if (mass_s1 > eta / 2.0 + 1e-12) continue;

            // smallest w with Dec(w, x2) outside {s0, s1} for every suffix
            std::optional<uint64_t> w;
            for (uint64_t cand = 0; cand < (1ull << tb); ++cand) {
                const auto& reach = prefix_msgs[cand];
                if (!reach.count(s0) && !reach.count(s1)) {
                    w = cand;
                    break;
                }
            }
            if (!w) continue;

            // f: rewrite the T-prefix to w inside X_eta, identity elsewhere
            std::vector<uint64_t> g(1ull << tb);
            for (uint64_t x = 0; x < g.size(); ++x) g[x] = x_eta_set.count(x) ? *w : x;
            TamperSpec f = TamperSpec::subset_action(n, pos, std::move(g));
            OutcomeDist d0 = tamper_dist_strong_exact(code, f, s0);
            OutcomeDist d1 = tamper_dist_strong_exact(code, f, s1);
            double gap = stat_dist(d0, d1);

            bool better = !best || gap > best->gap + 1e-15 ||
                          (std::abs(gap - best->gap) <= 1e-15 &&
                           std::pair(s0, s1) < std::pair(best->s0, best->s1));
            if (better) {
                best = Candidate{s0, s1, *w, x_eta, mass_s0, mass_s1, gap};
            }
        }
        if (best && best->gap >= 1.0 - 1e-12) break;  // gap is capped at 1
    }

    if (!best) {
        outcome.reason = "no (s0, s1, w) triple satisfies the heavy-prefix conditions";
        return outcome;
    }

    SubsetAttackResult res;
    res.positions = pos;
    res.s0 = best->s0;
    res.s1 = best->s1;
    res.x_eta = best->x_eta;
    res.w = best->w;
    res.eta = eta;
    res.mass_s0 = best->mass_s0;
    res.mass_s1 = best->mass_s1;
    res.measured_gap = best->gap;
    std::set<uint64_t> x_eta_set(best->x_eta.begin(), best->x_eta.end());
    std::vector<uint64_t> g(1ull << tb);
    for (uint64_t x = 0; x < g.size(); ++x) g[x] = x_eta_set.count(x) ? best->w : x;
    res.f = TamperSpec::subset_action(n, pos, std::move(g));

    outcome.applicable = true;
    outcome.result = std::move(res);
    return outcome;
}

BarrierReport uniform_barrier_experiment(int n, int k, RngStream& rng) {
    if (n < 2 || n > 20) throw ValidationError("barrier experiment requires 2 <= n <= 20");
    if (k < 1 || k > n) throw ValidationError("barrier experiment requires 1 <= k <= n");
    UniformScheme scheme = UniformScheme::build(n, k, rng);

    BarrierReport report;
    report.rebuilds = scheme.rebuilds();
    report.support_bound = std::max(0.0, 1.0 - std::exp2(static_cast<double>(n - 2 * k)));

    // first-bit-flip adversary; joint distribution of (S, Dec(f(Enc(S))))
    const uint64_t msgs = 1ull << k;
    std::vector<double> joint(1ull << (2 * k), 0.0);
    std::vector<double> marginal(msgs, 0.0);
    const double ws = 1.0 / static_cast<double>(msgs);
    for (uint64_t s = 0; s < msgs; ++s) {
        std::vector<uint64_t> pre = scheme.support(s);
        double w = ws / static_cast<double>(pre.size());
        for (uint64_t x : pre) {
            uint64_t out = *scheme.decode(x ^ 1);  // uniform decoder never outputs bot
            joint[(s << k) | out] += w;
            marginal[out] += w;
        }
    }
    double u2k = std::exp2(-2.0 * k);
    double l1 = 0.0;
    for (double p : joint) l1 += std::abs(p - u2k);
    report.dist_to_uniform_2k = l1 / 2.0;

    double uk = std::exp2(-1.0 * k);
    double l1m = 0.0;
    for (double p : marginal) l1m += std::abs(p - uk);
    report.marginal_dist_to_uniform_k = l1m / 2.0;
    return report;
}

}  // namespace nmc
