#include "nmc/field_eval.hpp"

#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nmc {

namespace {

// Exponent folding with X^(2^m) = X, so that poly_deg < 2^m afterwards.
Poly fold_onto_field(const FieldSpec& f, const Poly& p) {
    if (f.m >= 63 || p.coeffs.size() <= (1ull << f.m)) return p;
    uint64_t period = (1ull << f.m) - 1;
    Poly r;
    r.coeffs.assign(1ull << f.m, 0);
    for (size_t e = 0; e < p.coeffs.size(); ++e) {
        uint64_t c = p.coeffs[e];
        if (!c) continue;
        size_t e2 = e < (1ull << f.m) ? e : ((e - 1) % period) + 1;
        r.coeffs[e2] ^= c;
    }
    return r;
}

// Per-field data for the subspace chain: coefficients of the linearized
// vanishing polynomials L_s and their values at the standard basis.
struct SubspaceChain {
    // lin[s][i] multiplies X^(2^i) in L_s; lin[s].size() == s+1, lin[s][s] == 1.
    std::vector<std::vector<uint64_t>> lin;
    // basis_val[s][j] = L_s(e_{j+1}) for s <= j < m (value at bit-j basis element).
    std::vector<std::vector<uint64_t>> basis_val;

    explicit SubspaceChain(const FieldSpec& f) {
        int m = f.m;
        lin.resize(static_cast<size_t>(m) + 1);
        lin[0] = {1};
        basis_val.resize(static_cast<size_t>(m) + 1);
        for (int s = 0; s <= m; ++s) {
            if (s > 0) {
                // L_s(X) = L_{s-1}(X)^2 + L_{s-1}(e_s) * L_{s-1}(X)
                uint64_t c = basis_val[static_cast<size_t>(s - 1)][static_cast<size_t>(s - 1)];
                auto& prev = lin[static_cast<size_t>(s - 1)];
                auto& cur = lin[static_cast<size_t>(s)];
                cur.assign(static_cast<size_t>(s) + 1, 0);
                for (int i = 0; i < s; ++i) {
                    cur[static_cast<size_t>(i + 1)] ^= ff_sqr(f, prev[static_cast<size_t>(i)]);
                    cur[static_cast<size_t>(i)] ^= ff_mul(f, c, prev[static_cast<size_t>(i)]);
                }
            }
            // evaluate L_s at each basis element e_{j+1} = 1 << j, j >= s
            auto& bv = basis_val[static_cast<size_t>(s)];
            bv.assign(static_cast<size_t>(f.m), 0);
            for (int j = s; j < m; ++j) {
                uint64_t x = 1ull << j;
                uint64_t acc = 0;
                uint64_t pw = x;  // x^(2^i)
                for (int i = 0; i <= s; ++i) {
                    uint64_t a = lin[static_cast<size_t>(s)][static_cast<size_t>(i)];
                    if (a) acc ^= ff_mul(f, a, pw);
                    pw = ff_sqr(f, pw);
                }
                bv[static_cast<size_t>(j)] = acc;
            }
        }
    }
};

// DFS work space for one thread; slot[s] holds the remainder owned by the
// level-s node on the current path, wk is the shared folding buffer.
struct Scratch {
    std::vector<std::vector<uint64_t>> slot;
    std::vector<uint64_t> wk;

    explicit Scratch(int s_top) {
        slot.resize(static_cast<size_t>(s_top) + 1);
        for (int s = 0; s <= s_top; ++s) slot[static_cast<size_t>(s)].resize(1ull << s);
        wk.resize(1ull << s_top);
    }
};

// Reduce src (len coefficients, degree < 2^s) modulo L_{s-1}(X) - c and
// write the 2^(s-1) remainder coefficients to dst. Uses scr.wk.
void reduce_half(const FieldSpec& f, const SubspaceChain& chain, int s, uint64_t c,
                 const uint64_t* src, size_t len, uint64_t* dst, Scratch& scr) {
    size_t half = 1ull << (s - 1);
    const auto& a = chain.lin[static_cast<size_t>(s - 1)];  // a[s-1] == 1
    uint64_t* wk = scr.wk.data();
    std::copy(src, src + len, wk);
    for (size_t e = len; e-- > half;) {
        uint64_t coef = wk[e];
        if (!coef) continue;
        size_t base = e - half;
        for (int i = 0; i < s - 1; ++i) {
            uint64_t ai = a[static_cast<size_t>(i)];
            if (ai) wk[base + (1ull << i)] ^= ff_mul(f, coef, ai);
        }
        if (c) wk[base] ^= ff_mul(f, coef, c);
    }
    std::copy(wk, wk + half, dst);
}

// Evaluate on the coset coset_base + W_{s_top}; out[i] = value at
// coset_base + i. cvec[j] must hold L_j(coset_base) for j < s_top.
void eval_coset(const FieldSpec& f, const SubspaceChain& chain, const Poly& p,
                int s_top, std::vector<uint64_t>& cvec, uint64_t* out, Scratch& scr) {
    // recursive descent; rem for level s lives in scr.slot[s] (p itself at the root)
    auto dfs = [&](auto&& self, int s, uint64_t offset, const uint64_t* rem, size_t len) -> void {
        if (s == 0) {
            out[offset] = len ? rem[0] : 0;
            return;
        }
        uint64_t c_left = cvec[static_cast<size_t>(s - 1)];
        uint64_t c_right =
            c_left ^ chain.basis_val[static_cast<size_t>(s - 1)][static_cast<size_t>(s - 1)];
        auto& child = scr.slot[static_cast<size_t>(s - 1)];
        size_t half = 1ull << (s - 1);

        if (len <= half) {
            // degree already below the modulus degree: remainder is p itself
            self(self, s - 1, offset, rem, len);
            for (int j = 0; j < s - 1; ++j)
                cvec[static_cast<size_t>(j)] ^=
                    chain.basis_val[static_cast<size_t>(j)][static_cast<size_t>(s - 1)];
            self(self, s - 1, offset | half, rem, len);
            for (int j = 0; j < s - 1; ++j)
                cvec[static_cast<size_t>(j)] ^=
                    chain.basis_val[static_cast<size_t>(j)][static_cast<size_t>(s - 1)];
            return;
        }

        reduce_half(f, chain, s, c_left, rem, len, child.data(), scr);
        self(self, s - 1, offset, child.data(), half);

        for (int j = 0; j < s - 1; ++j)
            cvec[static_cast<size_t>(j)] ^=
                chain.basis_val[static_cast<size_t>(j)][static_cast<size_t>(s - 1)];
        reduce_half(f, chain, s, c_right, rem, len, child.data(), scr);
        self(self, s - 1, offset | half, child.data(), half);
        for (int j = 0; j < s - 1; ++j)
            cvec[static_cast<size_t>(j)] ^=
                chain.basis_val[static_cast<size_t>(j)][static_cast<size_t>(s - 1)];
    };
    dfs(dfs, s_top, 0, p.coeffs.data(), p.coeffs.size());
}

void check_eval_args(const FieldSpec& f) {
    if (f.m > kMaxEvalFieldBits) {
        throw ValidationError("full-field evaluation capped at m <= " +
                              std::to_string(kMaxEvalFieldBits));
    }
}

}  // namespace

std::vector<uint64_t> eval_on_field_serial(const FieldSpec& f, const Poly& p) {
    check_eval_args(f);
    uint64_t n = 1ull << f.m;
    std::vector<uint64_t> out(n);
    for (uint64_t x = 0; x < n; ++x) out[x] = poly_eval(f, p, x);
    return out;
}

void eval_on_field_blocks(
    const FieldSpec& f, const Poly& p,
    const std::function<void(uint64_t base, std::span<const uint64_t> vals)>& sink) {
    check_eval_args(f);
    Poly q = poly_trim(fold_onto_field(f, p));
    int d = poly_deg(q);
    uint64_t n = 1ull << f.m;

    if (d <= 0) {
        // constant polynomial: emit in fat blocks
        uint64_t c = d == 0 ? q.coeffs[0] : 0;
        uint64_t block = std::min<uint64_t>(n, 1ull << 16);
        std::vector<uint64_t> vals(block, c);
        for (uint64_t base = 0; base < n; base += block) {
            sink(base, std::span<const uint64_t>(vals.data(), block));
        }
        return;
    }

    int s_top = 1;
    while ((1ull << s_top) <= static_cast<uint64_t>(d)) ++s_top;
    if (s_top > f.m) s_top = f.m;  // cannot happen after folding, kept as a guard

    const SubspaceChain chain(f);
    int64_t cosets = static_cast<int64_t>(n >> s_top);

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        Scratch scr(s_top);
        std::vector<uint64_t> cvec(static_cast<size_t>(s_top), 0);
        std::vector<uint64_t> block(1ull << s_top);
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
        for (int64_t ci = 0; ci < cosets; ++ci) {
            uint64_t base = static_cast<uint64_t>(ci) << s_top;
            for (int j = 0; j < s_top; ++j) {
                uint64_t acc = 0;
                for (int bit = s_top; bit < f.m; ++bit) {
                    if ((base >> bit) & 1)
                        acc ^= chain.basis_val[static_cast<size_t>(j)][static_cast<size_t>(bit)];
                }
                cvec[static_cast<size_t>(j)] = acc;
            }
            eval_coset(f, chain, q, s_top, cvec, block.data(), scr);
            sink(base, std::span<const uint64_t>(block.data(), block.size()));
        }
    }
}

std::vector<uint64_t> eval_on_field(const FieldSpec& f, const Poly& p) {
    check_eval_args(f);
    std::vector<uint64_t> out(1ull << f.m);
    eval_on_field_blocks(f, p, [&](uint64_t base, std::span<const uint64_t> vals) {
        std::copy(vals.begin(), vals.end(), out.begin() + static_cast<int64_t>(base));
    });
    return out;
}

}  // namespace nmc
