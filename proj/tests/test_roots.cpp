#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "nmc/roots.hpp"

using namespace nmc;

namespace {

// Brute-force oracle: Horner at every field element.
std::vector<uint64_t> roots_brute(const FieldSpec& f, const Poly& p) {
    std::vector<uint64_t> out;
    for (uint64_t x = 0; x < (1ull << f.m); ++x) {
        if (poly_eval(f, p, x) == 0) out.push_back(x);
    }
    return out;
}

Poly product_of_linears(const FieldSpec& f, const std::vector<uint64_t>& roots) {
    Poly p = Poly::constant(1);
    for (uint64_t r : roots) p = poly_mul(f, p, Poly{{r, 1}});
    return p;
}

}  // namespace

TEST_CASE("linear and quadratic hand cases") {
    FieldSpec f2 = FieldSpec::from_modulus(2, 0b111);
    // X^2+X+1 has the two non-subfield elements as roots in GF(4)
    Poly q{{1, 1, 1}};
    CHECK(find_roots(f2, q) == std::vector<uint64_t>{0b10, 0b11});

    FieldSpec f8 = FieldSpec::standard(8);
    for (uint64_t a : {0ull, 1ull, 77ull, 255ull}) {
        CHECK(find_roots(f8, Poly{{a, 1}}) == std::vector<uint64_t>{a});
    }

    // (X+a)(X+b) for distinct a, b
    uint64_t a = 13, b = 200;
    Poly quad = product_of_linears(f8, {a, b});
    CHECK(find_roots(f8, quad) == std::vector<uint64_t>{a, b});
}

TEST_CASE("zero polynomial and constants") {
    FieldSpec f = FieldSpec::standard(8);
    CHECK_THROWS_AS(find_roots(f, Poly{}), ValidationError);
    CHECK_THROWS_AS(find_roots(f, Poly{{0, 0, 0}}), ValidationError);
    CHECK(find_roots(f, Poly::constant(7)).empty());
}

TEST_CASE("brute-force agreement on random polynomials, m <= 12") {
    for (int m : {3, 8, 12}) {
        FieldSpec f = FieldSpec::standard(m);
        RngStream rng(300 + static_cast<uint64_t>(m));
        for (int i = 0; i < 100; ++i) {
            Poly p = random_poly(f, 1 + static_cast<int>(rng.below(50)), rng);
            if (poly_deg(p) < 0) continue;
            auto got = find_roots(f, p);
            CHECK(got == roots_brute(f, p));
            CHECK(got.size() <= static_cast<size_t>(poly_deg(p)));
        }
    }
}

TEST_CASE("many planted roots are all recovered") {
    for (int m : {10, 14}) {
        FieldSpec f = FieldSpec::standard(m);
        RngStream rng(400 + static_cast<uint64_t>(m));
        std::vector<uint64_t> roots;
        while (roots.size() < 20) {
            uint64_t r = rng.bits(m);
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
        Poly p = product_of_linears(f, roots);
        std::sort(roots.begin(), roots.end());
        CHECK(find_roots(f, p) == roots);
    }
}

TEST_CASE("gcd/trace route matches brute force beyond the brute-force cutoff") {
    FieldSpec f = FieldSpec::standard(24);
    RngStream rng(500);

    // planted linear factors times an irreducible-ish random tail
    std::vector<uint64_t> roots;
    while (roots.size() < 12) {
        uint64_t r = rng.bits(24);
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    Poly p = product_of_linears(f, roots);
    Poly tail = random_poly(f, 10, rng);
    tail.coeffs[10] = 1;
    Poly full = poly_mul(f, p, tail);

    std::sort(roots.begin(), roots.end());
    auto got = find_roots_cz(f, full);
    // tail may contribute a few extra roots of its own; planted ones must appear
    for (uint64_t r : roots) CHECK(std::binary_search(got.begin(), got.end(), r));
    for (uint64_t r : got) CHECK(poly_eval(f, full, r) == 0);

    // repeated factors collapse to one root
    Poly sq = poly_mul(f, Poly{{5, 1}}, Poly{{5, 1}});
    CHECK(find_roots_cz(f, sq) == std::vector<uint64_t>{5});

    // cz route agrees with brute force on a small field
    FieldSpec f10 = FieldSpec::standard(10);
    for (int i = 0; i < 30; ++i) {
        Poly q = random_poly(f10, 1 + static_cast<int>(rng.below(40)), rng);
        if (poly_deg(q) < 0) continue;
        CHECK(find_roots_cz(f10, q) == roots_brute(f10, q));
    }
}

TEST_CASE("determinism: identical inputs give identical outputs") {
    FieldSpec f = FieldSpec::standard(24);
    RngStream rng(600);
    std::vector<uint64_t> roots;
    for (int i = 0; i < 8; ++i) roots.push_back(rng.bits(24) | 1ull << i);
    Poly p = product_of_linears(f, roots);
    CHECK(find_roots(f, p) == find_roots(f, p));
}
