#include "nmc/roots.hpp"

#include <algorithm>

#include "nmc/field_eval.hpp"

namespace nmc {

namespace {

// Square a polynomial of degree < deg(mod) and reduce. In characteristic 2
// squaring just spreads coefficients to even positions.
Poly modsq(const FieldSpec& f, const Poly& a, const Poly& mod) {
    int d = poly_deg(a);
    if (d < 0) return Poly{};
    Poly sq;
    sq.coeffs.assign(static_cast<size_t>(2 * d) + 1, 0);
    for (int i = 0; i <= d; ++i) {
        uint64_t c = a.coeffs[static_cast<size_t>(i)];
        if (c) sq.coeffs[static_cast<size_t>(2 * i)] = ff_sqr(f, c);
    }
    return poly_mod(f, sq, mod);
}

// X^(2^m) mod p, via m modular squarings of X.
Poly frobenius_power(const FieldSpec& f, const Poly& p) {
    Poly r = poly_mod(f, Poly::x(), p);
    for (int i = 0; i < f.m; ++i) r = modsq(f, r, p);
    return r;
}

// g is a monic product of distinct linear factors; peel roots off by
// splitting with the trace map Tr(alpha*X) = sum_i (alpha*X)^(2^i).
void split_linear(const FieldSpec& f, Poly g, RngStream& rng, std::vector<uint64_t>& out) {
    int d = poly_deg(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(g.coeffs[0]);  // monic X + r
        return;
    }
    for (;;) {
        uint64_t alpha = rng.bits(f.m);
        if (alpha == 0) continue;
        Poly term = poly_mod(f, Poly{{0, alpha}}, g);
        Poly acc = term;
        for (int i = 1; i < f.m; ++i) {
            term = modsq(f, term, g);
            acc = poly_add(acc, term);
        }
        if (poly_deg(acc) < 0) continue;
        Poly d1 = poly_gcd(f, acc, g);
        int dd = poly_deg(d1);
        if (dd == 0 || dd == d) continue;  // trivial split, retry
        Poly d2 = poly_divmod(f, g, d1).quot;
        split_linear(f, std::move(d1), rng, out);
        split_linear(f, std::move(d2), rng, out);
        return;
    }
}

uint64_t hash_poly(const FieldSpec& f, const Poly& p) {
    uint64_t h = 0x243f6a8885a308d3ull ^ static_cast<uint64_t>(f.m);
    for (uint64_t c : p.coeffs) h = RngStream::mix(h, c);
    return h;
}

}  // namespace

std::vector<uint64_t> find_roots_cz(const FieldSpec& f, const Poly& p) {
    Poly q = poly_trim(p);
    int d = poly_deg(q);
    if (d < 0) throw ValidationError("find_roots: zero polynomial");
    std::vector<uint64_t> roots;
    if (d == 0) return roots;
    if (d == 1) {
        roots.push_back(ff_mul(f, q.coeffs[0], ff_inv(f, q.coeffs[1])));
        return roots;
    }

    Poly xq = frobenius_power(f, q);
    // gcd(p, X^(2^m) - X): multiplicities collapse, only in-field roots survive
    Poly lin = poly_gcd(f, poly_add(xq, Poly::x()), q);
    if (poly_deg(lin) >= 1) {
        RngStream rng(hash_poly(f, q));
        split_linear(f, std::move(lin), rng, roots);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<uint64_t> find_roots(const FieldSpec& f, const Poly& p) {
    Poly q = poly_trim(p);
    int d = poly_deg(q);
    if (d < 0) throw ValidationError("find_roots: zero polynomial");
    std::vector<uint64_t> roots;
    if (d == 0) return roots;

    if (f.m <= 16) {
        std::vector<uint64_t> vals = eval_on_field(f, q);
        for (uint64_t x = 0; x < vals.size(); ++x) {
            if (vals[x] == 0) roots.push_back(x);
        }
        return roots;  // index order is already ascending
    }
    return find_roots_cz(f, q);
}

}  // namespace nmc
