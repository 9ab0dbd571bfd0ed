#include "nmc/gf2x.hpp"

#include <algorithm>
#include <array>

namespace nmc {

namespace detail {

u128 clmul_soft(uint64_t a, uint64_t b) {
    // Window the left operand into 16 precomputed multiples.
    u128 tab[16];
    tab[0] = 0;
    tab[1] = a;
    for (int i = 2; i < 16; i += 2) {
        tab[i] = tab[i / 2] << 1;
        tab[i + 1] = tab[i] ^ a;
    }
    u128 r = 0;
    for (int sh = 60; sh >= 0; sh -= 4) {
        r = (r << 4) ^ tab[(b >> sh) & 0xf];
    }
    return r;
}

}  // namespace detail

namespace {

int gf2_deg(u128 v) {
    if (v == 0) return -1;
    uint64_t hi = static_cast<uint64_t>(v >> 64);
    if (hi) return 127 - __builtin_clzll(hi);
    return 63 - __builtin_clzll(static_cast<uint64_t>(v));
}

u128 gf2_mod(u128 a, u128 b) {
    int db = gf2_deg(b);
    for (int da = gf2_deg(a); da >= db; da = gf2_deg(a)) {
        a ^= b << (da - db);
    }
    return a;
}

u128 gf2_mulmod(u128 a, u128 b, u128 f) {
    u128 r = 0;
    a = gf2_mod(a, f);
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (gf2_deg(a) == gf2_deg(f)) a ^= f;
    }
    return r;
}

u128 gf2_gcd(u128 a, u128 b) {
    while (b) {
        u128 t = gf2_mod(a, b);
        a = b;
        b = t;
    }
    return a;
}

// Lowest-weight irreducible modulus per degree, 2..64, stored without the
// leading bit. Regenerate by exhaustive search (trinomials first, then
// pentanomials, smallest mask wins); every entry is re-verified by
// gf2_poly_irreducible in the unit tests.
constexpr std::array<uint64_t, 65> kStandardReduction = []() {
    std::array<uint64_t, 65> t{};
    t[2] = 0x3;
    t[3] = 0x3;
    t[4] = 0x3;
    t[5] = 0x5;
    t[6] = 0x3;
    t[7] = 0x3;
    t[8] = 0x1b;
    t[9] = 0x3;
    t[10] = 0x9;
    t[11] = 0x5;
    t[12] = 0x9;
    t[13] = 0x1b;
    t[14] = 0x21;
    t[15] = 0x3;
    t[16] = 0x2b;
    t[17] = 0x9;
    t[18] = 0x9;
    t[19] = 0x27;
    t[20] = 0x9;
    t[21] = 0x5;
    t[22] = 0x3;
    t[23] = 0x21;
    t[24] = 0x1b;
    t[25] = 0x9;
    t[26] = 0x1b;
    t[27] = 0x27;
    t[28] = 0x3;
    t[29] = 0x5;
    t[30] = 0x3;
    t[31] = 0x9;
    t[32] = 0x8d;
    t[33] = 0x401;
    t[34] = 0x81;
    t[35] = 0x5;
    t[36] = 0x201;
    t[37] = 0x53;
    t[38] = 0x63;
    t[39] = 0x11;
    t[40] = 0x39;
    t[41] = 0x9;
    t[42] = 0x81;
    t[43] = 0x59;
    t[44] = 0x21;
    t[45] = 0x1b;
    t[46] = 0x3;
    t[47] = 0x21;
    t[48] = 0x2d;
    t[49] = 0x201;
    t[50] = 0x1d;
    t[51] = 0x4b;
    t[52] = 0x9;
    t[53] = 0x47;
    t[54] = 0x201;
    t[55] = 0x81;
    t[56] = 0x95;
    t[57] = 0x11;
    t[58] = 0x80001;
    t[59] = 0x95;
    t[60] = 0x3;
    t[61] = 0x27;
    t[62] = 0x20000001;
    t[63] = 0x3;
    t[64] = 0x1b;
    return t;
}();

}  // namespace

bool gf2_poly_irreducible(int m, u128 poly) {
    if (m < 1 || gf2_deg(poly) != m) return false;
    if (m == 1) return true;
    // Rabin: x^(2^m) = x mod poly, and gcd(x^(2^(m/q)) - x, poly) = 1 for
    // every prime divisor q of m.
    auto x_pow_2e = [&](int e) {
        u128 r = 2;
        for (int i = 0; i < e; ++i) r = gf2_mulmod(r, r, poly);
        return r;
    };
    if (x_pow_2e(m) != 2) return false;
    int rest = m;
    for (int q = 2; q * q <= rest; ++q) {
        if (rest % q) continue;
        while (rest % q == 0) rest /= q;
        if (gf2_gcd(x_pow_2e(m / q) ^ 2, poly) != 1) return false;
    }
    if (rest > 1) {
        if (gf2_gcd(x_pow_2e(m / rest) ^ 2, poly) != 1) return false;
    }
    return true;
}

FieldSpec FieldSpec::standard(int m) {
    if (m < 2 || m > 64) {
        throw ValidationError("field degree must be in [2, 64], got " + std::to_string(m));
    }
    return FieldSpec{m, kStandardReduction[static_cast<size_t>(m)]};
}

FieldSpec FieldSpec::from_modulus(int m, u128 modulus) {
    if (m < 2 || m > 64) {
        throw ValidationError("field degree must be in [2, 64], got " + std::to_string(m));
    }
    if (gf2_deg(modulus) != m) {
        throw ValidationError("modulus must be monic of degree exactly m");
    }
    if (!gf2_poly_irreducible(m, modulus)) {
        throw ValidationError("modulus is reducible over GF(2)");
    }
    return FieldSpec{m, static_cast<uint64_t>(modulus ^ (static_cast<u128>(1) << m))};
}

std::string FieldSpec::modulus_hex() const {
    u128 v = modulus();
    std::string s;
    while (v) {
        s += "0123456789abcdef"[static_cast<unsigned>(v & 0xf)];
        v >>= 4;
    }
    std::reverse(s.begin(), s.end());
    return s.empty() ? "0" : s;
}

uint64_t ff_pow(const FieldSpec& f, uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = ff_mul(f, r, a);
        a = ff_sqr(f, a);
        e >>= 1;
    }
    return r;
}

uint64_t ff_inv(const FieldSpec& f, uint64_t a) {
    if (a == 0) throw ValidationError("division by zero in GF(2^m)");
    // a^(2^m - 2) = prod_{i=1}^{m-1} a^(2^i)
    uint64_t r = 1;
    uint64_t t = a;
    for (int i = 1; i < f.m; ++i) {
        t = ff_sqr(f, t);
        r = ff_mul(f, r, t);
    }
    return r;
}

int poly_deg(const Poly& p) {
    for (size_t i = p.coeffs.size(); i-- > 0;) {
        if (p.coeffs[i] != 0) return static_cast<int>(i);
    }
    return -1;
}

Poly poly_trim(Poly p) {
    p.coeffs.resize(static_cast<size_t>(poly_deg(p) + 1));
    return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] ^= a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] ^= b.coeffs[i];
    return poly_trim(std::move(r));
}

Poly poly_mul(const FieldSpec& f, const Poly& a, const Poly& b) {
    int da = poly_deg(a), db = poly_deg(b);
    if (da < 0 || db < 0) return Poly{};
    Poly r;
    r.coeffs.assign(static_cast<size_t>(da + db + 1), 0);
    for (int i = 0; i <= da; ++i) {
        uint64_t ai = a.coeffs[static_cast<size_t>(i)];
        if (!ai) continue;
        for (int j = 0; j <= db; ++j) {
            uint64_t bj = b.coeffs[static_cast<size_t>(j)];
            if (bj) r.coeffs[static_cast<size_t>(i + j)] ^= ff_mul(f, ai, bj);
        }
    }
    return r;
}

Poly poly_scale(const FieldSpec& f, const Poly& p, uint64_t c) {
    if (c == 0) return Poly{};
    Poly r = p;
    for (auto& v : r.coeffs) v = ff_mul(f, v, c);
    return poly_trim(std::move(r));
}

PolyDivMod poly_divmod(const FieldSpec& f, const Poly& a, const Poly& b) {
    int db = poly_deg(b);
    if (db < 0) throw ValidationError("polynomial division by zero");
    std::vector<uint64_t> rem = a.coeffs;
    int dr = poly_deg(a);
    if (dr < db) return {Poly{}, poly_trim(Poly{std::move(rem)})};

    uint64_t lead_inv = ff_inv(f, b.coeffs[static_cast<size_t>(db)]);
    std::vector<uint64_t> quot(static_cast<size_t>(dr - db + 1), 0);
    for (int e = dr; e >= db; --e) {
        uint64_t c = rem[static_cast<size_t>(e)];
        if (!c) continue;
        uint64_t q = ff_mul(f, c, lead_inv);
        quot[static_cast<size_t>(e - db)] = q;
        for (int j = 0; j <= db; ++j) {
            uint64_t bj = b.coeffs[static_cast<size_t>(j)];
            if (bj) rem[static_cast<size_t>(e - db + j)] ^= ff_mul(f, q, bj);
        }
    }
    rem.resize(static_cast<size_t>(db));
    return {poly_trim(Poly{std::move(quot)}), poly_trim(Poly{std::move(rem)})};
}

Poly poly_mod(const FieldSpec& f, const Poly& a, const Poly& b) {
    return poly_divmod(f, a, b).rem;
}

Poly poly_gcd(const FieldSpec& f, const Poly& a, const Poly& b) {
    Poly x = poly_trim(a), y = poly_trim(b);
    if (poly_deg(x) < 0 && poly_deg(y) < 0) {
        throw ValidationError("gcd(0, 0) is undefined");
    }
    while (poly_deg(y) >= 0) {
        Poly r = poly_mod(f, x, y);
        x = std::move(y);
        y = std::move(r);
    }
    // monic normalization
    uint64_t lead = x.coeffs[static_cast<size_t>(poly_deg(x))];
    if (lead != 1) x = poly_scale(f, x, ff_inv(f, lead));
    return x;
}

uint64_t poly_eval(const FieldSpec& f, const Poly& p, uint64_t x) {
    uint64_t acc = 0;
    for (size_t i = p.coeffs.size(); i-- > 0;) {
        acc = ff_mul(f, acc, x) ^ p.coeffs[i];
    }
    return acc;
}

Poly random_poly(const FieldSpec& f, int degree_bound, RngStream& rng) {
    if (degree_bound < 0) throw ValidationError("degree bound must be >= 0");
    Poly p;
    p.coeffs.resize(static_cast<size_t>(degree_bound) + 1);
    for (auto& c : p.coeffs) c = rng.bits(f.m);
    return p;
}

}  // namespace nmc
