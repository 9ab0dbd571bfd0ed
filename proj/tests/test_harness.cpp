#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nmc/harness.hpp"
#include "nmc/table_code.hpp"

using namespace nmc;

namespace {

TableCode small_code(int n, int k, uint64_t t, double delta, uint64_t seed) {
    CodeParams p{n, k, t, delta, seed};
    RngStream rng(seed);
    return TableCode::build(p, rng);
}

// Decoder wrapper replacing bot by the all-zero message (Remark-style).
class BotToZero final : public CodingScheme {
public:
    explicit BotToZero(const CodingScheme& inner) : inner_(inner) {}
    int block_bits() const override { return inner_.block_bits(); }
    int message_bits() const override { return inner_.message_bits(); }
    std::optional<uint64_t> decode(uint64_t x) const override {
        auto d = inner_.decode(x);
        return d ? d : std::optional<uint64_t>(0);
    }
    std::vector<uint64_t> support(uint64_t s) const override { return inner_.support(s); }

private:
    const CodingScheme& inner_;
};

}  // namespace

TEST_CASE("copy_op literal definition") {
    CHECK(copy_op(Outcome::same(), 5) == Outcome::msg(5));
    CHECK(copy_op(Outcome::bot(), 5) == Outcome::bot());
    CHECK(copy_op(Outcome::msg(7), 5) == Outcome::msg(7));
}

TEST_CASE("stat_dist basics") {
    OutcomeDist pb = OutcomeDist::point(Outcome::bot());
    OutcomeDist ps = OutcomeDist::point(Outcome::same());
    CHECK(stat_dist(pb, pb) == 0.0);
    CHECK(stat_dist(pb, ps) == 1.0);

    OutcomeDist half;
    half.mass[Outcome::bot()] = 0.5;
    half.mass[Outcome::same()] = 0.5;
    CHECK(stat_dist(half, pb) == doctest::Approx(0.5));
}

TEST_CASE("stat_dist symmetry and triangle inequality on random distributions") {
    RngStream rng(12);
    auto random_dist = [&]() {
        OutcomeDist d;
        double total = 0;
        std::vector<Outcome> outs = {Outcome::bot(), Outcome::same(), Outcome::msg(0),
                                     Outcome::msg(1), Outcome::msg(2)};
        std::vector<double> w(outs.size());
        for (auto& v : w) {
            v = -std::log(rng.unit() + 1e-12);
            total += v;
        }
        for (size_t i = 0; i < outs.size(); ++i) {
            if (w[i] > 0) d.mass[outs[i]] = w[i] / total;
        }
        return d;
    };
    for (int i = 0; i < 200; ++i) {
        OutcomeDist a = random_dist(), b = random_dist(), c = random_dist();
        double ab = stat_dist(a, b), ba = stat_dist(b, a);
        CHECK(ab == doctest::Approx(ba));
        CHECK(ab <= stat_dist(a, c) + stat_dist(c, b) + 1e-12);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0 + 1e-12);
    }
}

TEST_CASE("strong tampering distribution: identity and forced constant") {
    TableCode code = small_code(10, 2, 4, 0.0, 31);
    TamperSpec id = TamperSpec::identity(10);
    for (uint64_t s = 0; s < 4; ++s) {
        OutcomeDist d = tamper_dist_strong_exact(code, id, s);
        CHECK(d.mass.size() == 1);
        CHECK(d.at(Outcome::same()) == doctest::Approx(1.0));
    }

    // constant c outside every blob and not decodable -> point mass on bot
    uint64_t c = 0;
    for (uint64_t x = 0; x < 1024; ++x) {
        bool in_support = false;
        for (uint64_t s = 0; s < 4; ++s) {
            auto e = code.support(s);
            if (std::binary_search(e.begin(), e.end(), x)) in_support = true;
        }
        if (!in_support && !code.decode(x)) {
            c = x;
            break;
        }
    }
    TamperSpec fc = TamperSpec::constant_fn(10, c);
    for (uint64_t s = 0; s < 4; ++s) {
        OutcomeDist d = tamper_dist_strong_exact(code, fc, s);
        CHECK(d.at(Outcome::bot()) == doctest::Approx(1.0));
    }
}

TEST_CASE("additive offset: non-bot mass matches the direct count") {
    TableCode code = small_code(12, 2, 4, 0.0, 77);
    RngStream drng(5);
    for (int rep = 0; rep < 20; ++rep) {
        TamperSpec f = TamperSpec::additive(12, 1 + drng.bits(11));
        for (uint64_t s = 0; s < 4; ++s) {
            int hits = 0;
            for (uint64_t w : code.support(s)) {
                if (code.decode(w ^ f.delta()).has_value()) ++hits;
            }
            OutcomeDist d = tamper_dist_strong_exact(code, f, s);
            CHECK(1.0 - d.at(Outcome::bot()) ==
                  doctest::Approx(static_cast<double>(hits) / 4.0));
        }
    }
}

TEST_CASE("every produced distribution sums to one") {
    TableCode code = small_code(12, 2, 8, 0.0, 82);
    RngStream frng(19);
    auto fam = sample_family("bitwise", 12, 6, frng);
    fam.push_back(TamperSpec::additive(12, 5));
    fam.push_back(TamperSpec::constant_fn(12, 9));
    for (const auto& f : fam) {
        for (uint64_t s = 0; s < 4; ++s) {
            CHECK(tamper_dist_strong_exact(code, f, s).total() ==
                  doctest::Approx(1.0).epsilon(1e-9));
            RngStream rng(7);
            CHECK(tamper_dist_strong_sampled(code, f, s, 500, rng).total() ==
                  doctest::Approx(1.0).epsilon(1e-9));
        }
        CHECK(canonical_df_exact(code, f, 4).total() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(remark_sampler_dist_exact(code, f).total() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("sampled distribution requires at least 100 samples") {
    TableCode code = small_code(10, 2, 4, 0.0, 3);
    TamperSpec id = TamperSpec::identity(10);
    RngStream rng(1);
    CHECK_THROWS_AS(tamper_dist_strong_sampled(code, id, 0, 99, rng), ValidationError);
}

TEST_CASE("canonical Df: identity, fixpoint-free bijection, constant") {
    TableCode code = small_code(8, 2, 8, 0.0, 13);

    OutcomeDist did = canonical_df_exact(code, TamperSpec::identity(8), 4);
    CHECK(did.at(Outcome::same()) == doctest::Approx(1.0));

    // additive offsets spread mass uniformly: empty heavy set, all bot
    OutcomeDist dadd = canonical_df_exact(code, TamperSpec::additive(8, 3), 4);
    CHECK(dadd.at(Outcome::same()) == 0.0);
    CHECK(dadd.at(Outcome::bot()) == doctest::Approx(1.0));

    // constant function onto a codeword: mass 1 - 2^-8 on its message
    uint64_t c = code.support(2).front();
    OutcomeDist dc = canonical_df_exact(code, TamperSpec::constant_fn(8, c), 2);
    CHECK(dc.at(Outcome::msg(2)) == doctest::Approx(1.0 - 1.0 / 256));
    CHECK(dc.at(Outcome::same()) == doctest::Approx(1.0 / 256));
}

TEST_CASE("sampled canonical Df approximates the exact one") {
    TableCode code = small_code(10, 2, 8, 0.0, 15);
    RngStream frng(16);
    for (const auto& f : sample_family("random", 10, 3, frng)) {
        OutcomeDist exact = canonical_df_exact(code, f, 4);
        RngStream rng(77);
        OutcomeDist sampled = canonical_df_sampled(code, f, 4, 400000, rng);
        CHECK_FALSE(sampled.exact);
        CHECK(stat_dist(exact, sampled) < 0.05);
    }
}

TEST_CASE("nm_error: identity vs point(same) is zero; self-witness is zero") {
    TableCode code = small_code(10, 3, 4, 0.0, 21);
    TamperSpec id = TamperSpec::identity(10);
    OutcomeDist psame = OutcomeDist::point(Outcome::same());
    for (uint64_t s = 0; s < 8; ++s) {
        CHECK(nm_error_exact(code, id, s, psame) == doctest::Approx(0.0));
    }

    RngStream rng(9);
    auto fam = sample_family("bitwise", 10, 5, rng);
    for (const auto& f : fam) {
        for (uint64_t s = 0; s < 8; s += 3) {
            OutcomeDist self = tamper_dist_strong_exact(code, f, s);
            CHECK(nm_error_exact(code, f, s, self) == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("fixpoint-free bijection: error vs point(bot) equals the detection rate") {
    TableCode code = small_code(12, 3, 8, 0.0, 22);
    OutcomeDist pbot = OutcomeDist::point(Outcome::bot());
    RngStream rng(14);
    for (int rep = 0; rep < 10; ++rep) {
        uint64_t delta = 1 + rng.bits(11);
        TamperSpec f = TamperSpec::additive(12, delta);
        for (uint64_t s = 0; s < 8; s += 2) {
            double err = nm_error_exact(code, f, s, pbot);
            double rate = error_detection_rate_exact(code, f, s);
            CHECK(err == doctest::Approx(rate));
        }
    }
}

TEST_CASE("strong error: identity zero, swap-free constants zero") {
    TableCode code = small_code(10, 2, 4, 0.0, 44);
    std::vector<uint64_t> msgs = {0, 1, 2, 3};
    CHECK(strong_nm_error_exact(code, TamperSpec::identity(10), msgs) == 0.0);

    uint64_t outside = 0;
    for (uint64_t x = 0; x < 1024; ++x) {
        if (!code.decode(x).has_value()) {
            outside = x;
            break;
        }
    }
    CHECK(strong_nm_error_exact(code, TamperSpec::constant_fn(10, outside), msgs) == 0.0);

    std::vector<uint64_t> one = {0};
    CHECK_THROWS_AS(strong_nm_error_exact(code, TamperSpec::identity(10), one),
                    ValidationError);
}

TEST_CASE("error detection rate: full packing and identity are 1") {
    TableCode full = small_code(8, 2, 64, 0.0, 5);  // t*2^k = 2^n, no bot anywhere
    RngStream rng(6);
    for (const auto& f : sample_family("bitwise", 8, 5, rng)) {
        for (uint64_t s = 0; s < 4; ++s) {
            CHECK(error_detection_rate_exact(full, f, s) == doctest::Approx(1.0));
        }
    }
    TableCode sparse = small_code(12, 2, 4, 0.0, 7);
    CHECK(error_detection_rate_exact(sparse, TamperSpec::identity(12), 1) ==
          doctest::Approx(1.0));
}

TEST_CASE("sample size plan: exact value, quadratic growth, eta limit") {
    CHECK(sample_size_plan(10, 0.1, 0.0, std::exp2(-20.0)) == 6400);
    uint64_t n1 = sample_size_plan(10, 0.2, 0.1, 0.01);
    uint64_t n2 = sample_size_plan(10, 0.15, 0.1, 0.01);
    CHECK(n2 == 4 * n1);  // halving eps - gamma quadruples n
    CHECK(sample_size_plan(10, 0.1, 0.0, 1.0) ==
          static_cast<uint64_t>(std::ceil(2.0 * 12.0 / 0.01)));
    CHECK_THROWS_AS(sample_size_plan(10, 0.1, 0.1, 0.5), ValidationError);
}

TEST_CASE("exact vs sampled agreement at the planned sample size") {
    TableCode code = small_code(12, 2, 8, 0.0, 90);
    RngStream frng(17);
    auto fam = sample_family("bitwise", 12, 4, frng);
    const double eps = 0.1;
    const double eta = std::exp2(-20.0);
    uint64_t N = sample_size_plan(4 + 2, eps, 0.0, eta);
    int ok = 0, trials = 0;
    for (const auto& f : fam) {
        OutcomeDist exact = tamper_dist_strong_exact(code, f, 1);
        for (int trial = 0; trial < 50; ++trial) {
            RngStream rng(1000 + static_cast<uint64_t>(trial));
            OutcomeDist emp = tamper_dist_strong_sampled(code, f, 1, N, rng);
            if (stat_dist(exact, emp) <= eps) ++ok;
            ++trials;
        }
    }
    CHECK(ok == trials);  // eta = 2^-20: a failure here is a real bug
}

TEST_CASE("strong error obeys the triangle bound through a common simulator") {
    TableCode code = small_code(10, 2, 4, 0.0, 55);
    RngStream rng(23);
    auto fam = sample_family("bitwise", 10, 10, rng);
    for (const auto& f : fam) {
        OutcomeDist df = canonical_df_exact(code, f, 4);
        for (uint64_t s1 = 0; s1 < 4; ++s1) {
            for (uint64_t s2 = s1 + 1; s2 < 4; ++s2) {
                std::vector<uint64_t> pair = {s1, s2};
                double strong = strong_nm_error_exact(code, f, pair);
                double a = stat_dist(tamper_dist_strong_exact(code, f, s1), df);
                double b = stat_dist(tamper_dist_strong_exact(code, f, s2), df);
                CHECK(strong <= a + b + 1e-12);
            }
        }
    }
}

TEST_CASE("replacing bot by the zero message preserves strong distances") {
    TableCode code = small_code(10, 2, 4, 0.0, 66);
    BotToZero wrapped(code);
    RngStream rng(24);
    auto fam = sample_family("bitwise", 10, 8, rng);
    std::vector<uint64_t> msgs = {1, 2, 3};  // message 0 excluded
    for (const auto& f : fam) {
        for (size_t i = 0; i < msgs.size(); ++i) {
            for (size_t j = i + 1; j < msgs.size(); ++j) {
                double before = stat_dist(tamper_dist_strong_exact(code, f, msgs[i]),
                                          tamper_dist_strong_exact(code, f, msgs[j]));
                double after = stat_dist(tamper_dist_strong_exact(wrapped, f, msgs[i]),
                                         tamper_dist_strong_exact(wrapped, f, msgs[j]));
                CHECK(before == doctest::Approx(after).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("witness family: identity favors point(same), offsets favor point(bot)") {
    TableCode code = small_code(12, 2, 4, 0.0, 67);
    std::vector<uint64_t> msgs = {0, 1, 2, 3};

    NmWitnessErrors wid = nm_error_witnesses_exact(code, TamperSpec::identity(12), msgs, 4);
    CHECK(wid.point_same == doctest::Approx(0.0));
    CHECK(wid.best() == doctest::Approx(0.0));

    NmWitnessErrors wadd =
        nm_error_witnesses_exact(code, TamperSpec::additive(12, 9), msgs, 4);
    CHECK(wadd.canonical == doctest::Approx(wadd.point_bot));  // empty heavy set
    CHECK(wadd.best() <= 0.5);
}
