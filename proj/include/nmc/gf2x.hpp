#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmc/errors.hpp"
#include "nmc/rng.hpp"

#ifdef NMC_PCLMUL
#include <wmmintrin.h>
#endif

namespace nmc {

using u128 = unsigned __int128;

namespace detail {

// Portable 64x64 carry-less multiply, 4-bit windowed.
u128 clmul_soft(uint64_t a, uint64_t b);

inline u128 clmul64(uint64_t a, uint64_t b) {
#ifdef NMC_PCLMUL
    __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
    __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
    __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
    uint64_t lo = static_cast<uint64_t>(_mm_cvtsi128_si64(r));
    uint64_t hi = static_cast<uint64_t>(_mm_cvtsi128_si64(_mm_srli_si128(r, 8)));
    return (static_cast<u128>(hi) << 64) | lo;
#else
    return clmul_soft(a, b);
#endif
}

}  // namespace detail

// GF(2)[X] helpers on integer bit masks (bit i = coefficient of X^i).
// Degrees stay below 128; these back modulus validation, not field kernels.
bool gf2_poly_irreducible(int m, u128 poly);

// The field GF(2^m), 2 <= m <= 64, fixed by a monic irreducible modulus.
// Elements are m-bit unsigned integers, bit i = coefficient of X^i.
// `reduction` is the modulus with the degree-m bit cleared, i.e. the
// representation of X^m in the field.
struct FieldSpec {
    int m = 0;
    uint64_t reduction = 0;

    // Low-weight irreducible modulus (trinomial/pentanomial) from the
    // built-in table; the same m always yields the same field.
    static FieldSpec standard(int m);

    // Validates that `modulus` is monic of degree exactly m and irreducible.
    static FieldSpec from_modulus(int m, u128 modulus);

    u128 modulus() const { return (static_cast<u128>(1) << m) | reduction; }
    std::string modulus_hex() const;
    uint64_t mask() const { return m >= 64 ? ~0ull : (1ull << m) - 1; }
    uint64_t order_minus_one() const { return mask(); }  // 2^m - 1

    bool operator==(const FieldSpec& o) const = default;
};

inline uint64_t ff_add(uint64_t a, uint64_t b) { return a ^ b; }

inline uint64_t ff_reduce(const FieldSpec& f, u128 v) {
    const int m = f.m;
    const u128 low = (static_cast<u128>(1) << m) - 1;
    while (v >> m) {
        uint64_t hi = static_cast<uint64_t>(v >> m);
        v = (v & low) ^ detail::clmul64(hi, f.reduction);
    }
    return static_cast<uint64_t>(v);
}

inline uint64_t ff_mul(const FieldSpec& f, uint64_t a, uint64_t b) {
    return ff_reduce(f, detail::clmul64(a, b));
}

inline uint64_t ff_sqr(const FieldSpec& f, uint64_t a) {
    return ff_reduce(f, detail::clmul64(a, a));
}

uint64_t ff_pow(const FieldSpec& f, uint64_t a, uint64_t e);

// Multiplicative inverse; throws ValidationError on zero.
uint64_t ff_inv(const FieldSpec& f, uint64_t a);

// Dense polynomial over GF(2^m): coeffs[i] multiplies X^i. The vector is
// kept verbatim (random_poly returns exactly d+1 entries, zeros included);
// poly_deg skips trailing zeros, arithmetic results come back trimmed.
struct Poly {
    std::vector<uint64_t> coeffs;

    Poly() = default;
    explicit Poly(std::vector<uint64_t> c) : coeffs(std::move(c)) {}
    static Poly constant(uint64_t c) { return Poly{{c}}; }
    static Poly x() { return Poly{{0, 1}}; }

    bool operator==(const Poly& o) const = default;
};

int poly_deg(const Poly& p);          // -1 for the zero polynomial
Poly poly_trim(Poly p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const FieldSpec& f, const Poly& a, const Poly& b);
Poly poly_scale(const FieldSpec& f, const Poly& p, uint64_t c);

// Division with remainder; divisor must be nonzero.
struct PolyDivMod {
    Poly quot;
    Poly rem;
};
PolyDivMod poly_divmod(const FieldSpec& f, const Poly& a, const Poly& b);
Poly poly_mod(const FieldSpec& f, const Poly& a, const Poly& b);

// Monic gcd; throws ValidationError if both inputs are zero.
Poly poly_gcd(const FieldSpec& f, const Poly& a, const Poly& b);

uint64_t poly_eval(const FieldSpec& f, const Poly& p, uint64_t x);

// d+1 independent uniform coefficients; the leading one may be zero.
Poly random_poly(const FieldSpec& f, int degree_bound, RngStream& rng);

}  // namespace nmc
