// Acceptance suite: one criterion per function, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "nmc/attacks.hpp"
#include "nmc/field_eval.hpp"
#include "nmc/harness.hpp"
#include "nmc/mc_code.hpp"
#include "nmc/roots.hpp"
#include "nmc/table_code.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace nmc;

namespace {

struct State {
    std::vector<std::shared_ptr<TableCode>> detection_codes;  // criterion 2
    std::shared_ptr<TableCode> distance_code;                 // criterion 3
    std::vector<std::shared_ptr<MonteCarloCode>> mc_codes;    // criterion 4
    std::shared_ptr<TableCode> sanity_code;                   // criterion 6
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---------------------------------------------------------------------
// 1. find_roots against brute-force evaluation over the whole field
std::optional<std::string> criterion1(State&) {
    for (int m : {3, 8, 12}) {
        FieldSpec f = FieldSpec::standard(m);
        RngStream rng(9000 + static_cast<uint64_t>(m));
        for (int i = 0; i < 200; ++i) {
            int deg = 1 + static_cast<int>(rng.below(50));
            Poly p = random_poly(f, deg, rng);
            if (poly_deg(p) < 0) p.coeffs[0] = 1;
            std::vector<uint64_t> brute;
            for (uint64_t x = 0; x < (1ull << m); ++x) {
                if (poly_eval(f, p, x) == 0) brute.push_back(x);
            }
            if (find_roots(f, p) != brute) {
                return "root mismatch at m=" + std::to_string(m) + " iter " + std::to_string(i);
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// 2. error detection rate of the table code against the first-bit flip
std::optional<std::string> criterion2(State& st) {
    const int builds = 100;
    const double bound = 64.0 * 7.0 / (16384.0 - 64.0);  // t(K-1)/(N-t)
    TamperSpec flip = TamperSpec::additive(14, 1);

    st.detection_codes.resize(builds);
    std::vector<double> rate(builds, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int b = 0; b < builds; ++b) {
        CodeParams p{14, 3, 64, 0.0, 140000 + static_cast<uint64_t>(b)};
        RngStream rng(p.seed);
        auto code = std::make_shared<TableCode>(TableCode::build(p, rng));
        double acc = 0;
        for (uint64_t s = 0; s < 8; ++s) acc += error_detection_rate_exact(*code, flip, s);
        rate[static_cast<size_t>(b)] = acc / 8.0;
        st.detection_codes[static_cast<size_t>(b)] = std::move(code);
    }

    double grand = 0;
    int over5x = 0;
    for (double r : rate) {
        grand += r;
        if (r > 5.0 * bound) ++over5x;
    }
    grand /= builds;
    if (grand < bound / 3.0 || grand > 3.0 * bound) {
        return "mean rate " + fmt("%.5f", grand) + " outside [bound/3, 3*bound], bound " +
               fmt("%.5f", bound);
    }
    if (over5x * 100 >= 5 * builds) {
        return std::to_string(over5x) + "% of builds exceeded 5x the bound";
    }
    std::printf("         mean rate %.5f vs bound %.5f, %d/100 builds over 5x\n", grand, bound,
                over5x);
    return std::nullopt;
}

// ---------------------------------------------------------------------
// 3. relative distance: every nonzero offset of weight <= delta*n detects
std::optional<std::string> criterion3(State& st) {
    CodeParams p{14, 2, 4, 0.2, 77};
    RngStream rng(p.seed);
    st.distance_code = std::make_shared<TableCode>(TableCode::build(p, rng));
    const TableCode& code = *st.distance_code;

    std::vector<uint64_t> deltas;
    for (uint64_t d = 1; d < (1ull << 14); ++d) {
        if (__builtin_popcountll(d) <= 2) deltas.push_back(d);
    }
    for (uint64_t s = 0; s < 4; ++s) {
        for (uint64_t w : code.support(s)) {
            for (uint64_t d : deltas) {
                if (code.decode(w ^ d).has_value()) {
                    return "offset " + std::to_string(d) + " of codeword survived decoding";
                }
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// 4. Lemma 4.3 support-size window over 20 Monte Carlo builds
std::optional<std::string> criterion4(State& st) {
    const int builds = 20;
    CodeParams base{24, 8, 256, 0.0, 0};
    int pass_count = 0;
    double size_sum = 0;
    uint64_t size_count = 0;
    for (int b = 0; b < builds; ++b) {
        CodeParams p = base;
        p.seed = 240000 + static_cast<uint64_t>(b);
        RngStream rng(p.seed);
        auto code = std::make_shared<MonteCarloCode>(MonteCarloCode::build(p, rng));
        McSupportReport rep = validate_mc_supports(*code);
        if (rep.pass) ++pass_count;
        for (uint64_t s : rep.sizes) {
            size_sum += static_cast<double>(s);
            ++size_count;
        }
        st.mc_codes.push_back(std::move(code));
    }
    double mean = size_sum / static_cast<double>(size_count);
    std::printf("         %d/20 builds pass, mean support %.2f (2t = 512)\n", pass_count, mean);
    if (pass_count * 100 < 95 * builds) {
        return "only " + std::to_string(pass_count) + "/20 builds had all supports in [t, 3t]";
    }
    if (mean < 512.0 * 0.9 || mean > 512.0 * 1.1) {
        return "grand mean support " + fmt("%.2f", mean) + " outside [460.8, 563.2]";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// 5. Monte Carlo round trip on the criterion-4 builds
std::optional<std::string> criterion5(State& st) {
    if (st.mc_codes.empty()) return "criterion 4 left no builds behind";
    const MonteCarloCode& code = *st.mc_codes.front();
    RngStream rng(5550);
    for (uint64_t s = 0; s < 256; ++s) {
        for (int i = 0; i < 50; ++i) {
            if (code.decode(code.encode(s, rng)) != s) {
                return "decode(encode(s)) != s for s = " + std::to_string(s);
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// 6. sampled strong non-malleability against 200 bit-tampering functions
std::optional<std::string> criterion6(State& st) {
    CodeParams p{16, 4, 128, 0.0, 660000};
    RngStream rng(p.seed);
    st.sanity_code = std::make_shared<TableCode>(TableCode::build(p, rng));
    const TableCode& code = *st.sanity_code;

    const uint64_t samples = sample_size_plan(10, 0.05, 0.0, std::exp2(-20.0));
    RngStream frng(661);
    std::vector<TamperSpec> fam = sample_family("bitwise", 16, 200, frng);
    std::vector<uint64_t> msgs(16);
    for (uint64_t s = 0; s < 16; ++s) msgs[s] = s;

    std::vector<double> errs(fam.size(), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t i = 0; i < static_cast<int64_t>(fam.size()); ++i) {
        RngStream cell(RngStream::mix(662, static_cast<uint64_t>(i)));
        errs[static_cast<size_t>(i)] =
            strong_nm_error_sampled(code, fam[static_cast<size_t>(i)], msgs, samples, cell);
    }
    int ok = 0;
    double worst = 0;
    for (double e : errs) {
        if (e <= 0.1) ++ok;
        worst = std::max(worst, e);
    }
    std::printf("         N=%llu per cell, %d/200 under 0.1, worst %.4f\n",
                static_cast<unsigned long long>(samples), ok, worst);
    if (ok * 100 < 95 * static_cast<int>(fam.size())) {
        return "only " + std::to_string(ok) + "/200 functions stayed under error 0.1";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// 7. swap attack achieves error exactly 1 on every code built above
std::optional<std::string> criterion7(State& st) {
    std::vector<std::pair<std::string, const CodingScheme*>> codes;
    for (size_t i = 0; i < st.detection_codes.size(); ++i) {
        codes.emplace_back("detection[" + std::to_string(i) + "]", st.detection_codes[i].get());
    }
    codes.emplace_back("distance", st.distance_code.get());
    for (size_t i = 0; i < st.mc_codes.size(); ++i) {
        codes.emplace_back("mc[" + std::to_string(i) + "]", st.mc_codes[i].get());
    }
    codes.emplace_back("sanity", st.sanity_code.get());

    for (auto& [name, code] : codes) {
        if (!code) return "missing code " + name;
        SwapAttackResult res = swap_attack(*code, 1ull << 26);
        if (res.achieved_error != 1.0) {
            return "swap error " + fmt("%.6f", res.achieved_error) + " on " + name;
        }
    }
    std::printf("         swap verified on %zu codes\n", codes.size());
    return std::nullopt;
}

// ---------------------------------------------------------------------
// 8. subset attack on a rate-3/4 over-packed code at n = 12, alpha = 1/2
std::optional<std::string> criterion8(State&) {
    fixtures::OverPackedPrefixCode code(12, 6, 3);  // k = 9
    std::vector<int> T = {0, 1, 2, 3, 4, 5};
    SubsetAttackOutcome out = subset_attack(code, T, 0.25, 0.5);
    if (!out.applicable) return "attack inapplicable: " + out.reason;
    const SubsetAttackResult& r = *out.result;
    if (std::abs(r.eta - 0.125) > 1e-12) return "eta != 1/8";
    if (r.mass_s0 < r.eta) return "Pr[X_T in X_eta | s0] < eta";
    if (r.mass_s1 > r.eta / 2) return "Pr[X_T in X_eta | s1] > eta/2";
    if (r.measured_gap < r.eta / 2) {
        return "measured gap " + fmt("%.4f", r.measured_gap) + " below eta/2";
    }
    std::printf("         s0=%llu s1=%llu w=%llu mass0=%.3f mass1=%.3f gap=%.3f\n",
                static_cast<unsigned long long>(r.s0), static_cast<unsigned long long>(r.s1),
                static_cast<unsigned long long>(r.w), r.mass_s0, r.mass_s1, r.measured_gap);
    return std::nullopt;
}

// ---------------------------------------------------------------------
// 9. uniform-scheme barrier at n = 16
std::optional<std::string> criterion9(State&) {
    RngStream rng(9990);
    BarrierReport high = uniform_barrier_experiment(16, 10, rng);
    if (high.dist_to_uniform_2k < 0.9375) {
        return "joint distance " + fmt("%.4f", high.dist_to_uniform_2k) + " below 0.9375";
    }
    double worst = 0, worst_joint = 0;
    for (int seed = 0; seed < 10; ++seed) {
        RngStream r(9991 + static_cast<uint64_t>(seed));
        BarrierReport low = uniform_barrier_experiment(16, 6, r);
        worst = std::max(worst, low.marginal_dist_to_uniform_k);
        worst_joint = std::max(worst_joint, low.dist_to_uniform_2k);
    }
    std::printf("         joint dist %.4f (floor 0.9375), k=6 worst marginal %.4f joint %.4f\n",
                high.dist_to_uniform_2k, worst, worst_joint);
    if (worst > 0.05) {
        return "marginal distance " + fmt("%.4f", worst) + " above 0.05";
    }
    if (worst_joint > 0.2) {  // k <= n/2 - 2: the joint variable stays near uniform
        return "joint distance " + fmt("%.4f", worst_joint) + " above 0.2 at k = 6";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// 10. Claim 5.3 heavy-set property on 1000 random distributions
std::optional<std::string> criterion10(State&) {
    RngStream rng(101010);
    for (int trial = 0; trial < 1000; ++trial) {
        int support = 2 + static_cast<int>(rng.below(63));
        std::map<uint64_t, double> dist;
        double total = 0;
        for (int i = 0; i < support; ++i) {
            double w = -std::log(rng.unit() + 1e-300);
            dist[static_cast<uint64_t>(i)] = w;
            total += w;
        }
        for (auto& [x, q] : dist) q /= total;
        double r = shannon_entropy(dist);
        if (r <= 0.0) continue;
        double eta = 0.05 + 0.9 * rng.unit();
        auto heavy = heavy_prefix_set(dist, r, eta);
        double mass = 0;
        for (uint64_t x : heavy) mass += dist.at(x);
        if (mass + 1e-9 < eta) return "heavy mass below eta at trial " + std::to_string(trial);
        if (static_cast<double>(heavy.size()) >= std::exp2(r / (1.0 - eta))) {
            return "heavy set too large at trial " + std::to_string(trial);
        }
    }
    return std::nullopt;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::function<std::optional<std::string>(State&)> run;
    };
    const std::vector<Entry> criteria = {
        {1, "field/poly oracle equivalence (m in {3,8,12}, 200 polys each)", criterion1},
        {2, "construction-1 error detection vs t(K-1)/(N-t)", criterion2},
        {3, "construction-1 relative distance (all offsets of weight <= 2)", criterion3},
        {4, "lemma-4.3 support window over 20 mc builds (n=24, t=256)", criterion4},
        {5, "mc round trip, 50 cycles per message", criterion5},
        {6, "sampled strong-NM error on 200 bit-tampering functions", criterion6},
        {7, "swap attack error exactly 1 on every code from 2-6", criterion7},
        {8, "subset attack at rate 3/4 (n=12, eta=1/8)", criterion8},
        {9, "uniform-scheme barrier at n=16 (k=10 floor, k=6 marginal)", criterion9},
        {10, "claim-5.3 heavy-set property on 1000 random distributions", criterion10},
    };

    State st;
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::optional<std::string> fail;
        try {
            fail = c.run(st);
        } catch (const std::exception& e) {
            fail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (fail) {
            ++failures;
            std::printf("[FAIL] criterion %2d: %s (%.1fs)\n       %s\n", c.id, c.name, secs,
                        fail->c_str());
        } else {
            std::printf("[PASS] criterion %2d: %s (%.1fs)\n", c.id, c.name, secs);
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
