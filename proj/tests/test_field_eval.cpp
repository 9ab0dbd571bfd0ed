#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <map>

#include "nmc/field_eval.hpp"

using namespace nmc;

TEST_CASE("remainder tree equals serial Horner on random polynomials") {
    RngStream rng(101);
    for (int m : {2, 3, 5, 8, 11, 14}) {
        FieldSpec f = FieldSpec::standard(m);
        for (int rep = 0; rep < 8; ++rep) {
            int deg = static_cast<int>(rng.below(200));
            Poly p = random_poly(f, deg, rng);
            CHECK(eval_on_field(f, p) == eval_on_field_serial(f, p));
        }
    }
}

TEST_CASE("degrees at and above the field size fold correctly") {
    FieldSpec f = FieldSpec::standard(4);
    RngStream rng(55);
    for (int deg : {15, 16, 17, 40, 1000}) {
        Poly p = random_poly(f, deg, rng);
        CHECK(eval_on_field(f, p) == eval_on_field_serial(f, p));
    }
    // X^16 + X vanishes identically over GF(2^4)
    Poly vanish;
    vanish.coeffs.assign(17, 0);
    vanish.coeffs[1] = 1;
    vanish.coeffs[16] = 1;
    auto vals = eval_on_field(f, vanish);
    for (uint64_t v : vals) CHECK(v == 0);
}

TEST_CASE("constant and zero polynomials") {
    FieldSpec f = FieldSpec::standard(6);
    auto zeros = eval_on_field(f, Poly{});
    CHECK(zeros == std::vector<uint64_t>(64, 0));
    auto c = eval_on_field(f, Poly::constant(0b101010));
    CHECK(c == std::vector<uint64_t>(64, 0b101010));
}

TEST_CASE("block streaming covers every point exactly once") {
    FieldSpec f = FieldSpec::standard(10);
    RngStream rng(77);
    Poly p = random_poly(f, 37, rng);
    std::vector<uint64_t> reference = eval_on_field_serial(f, p);

    std::vector<std::atomic<uint32_t>> visits(1ull << 10);
    std::atomic<bool> values_ok{true};
    eval_on_field_blocks(f, p, [&](uint64_t base, std::span<const uint64_t> vals) {
        for (size_t i = 0; i < vals.size(); ++i) {
            visits[base + i].fetch_add(1);
            if (vals[i] != reference[base + i]) values_ok = false;
        }
    });
    CHECK(values_ok.load());
    for (auto& v : visits) CHECK(v.load() == 1);
}

TEST_CASE("field size cap enforced") {
    FieldSpec f = FieldSpec::standard(32);
    CHECK_THROWS_AS(eval_on_field(f, Poly::x()), ValidationError);
}
