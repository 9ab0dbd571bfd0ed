#include "nmc/tamper.hpp"

#include <algorithm>
#include <cmath>

#include "nmc/errors.hpp"

namespace nmc {

namespace {

constexpr int kMaxTableBits = 20;

uint64_t width_mask(int n) { return n >= 64 ? ~0ull : (1ull << n) - 1; }

void check_width(int n) {
    if (n < 1 || n > 64) throw ValidationError("tampering width must be in [1, 64]");
}

void check_table(const std::vector<uint64_t>& table, int idx_bits, int out_bits,
                 const char* what) {
    if (table.size() != (1ull << idx_bits)) {
        throw ValidationError(std::string(what) + ": table must have exactly 2^" +
                              std::to_string(idx_bits) + " entries");
    }
    uint64_t mask = width_mask(out_bits);
    for (uint64_t v : table) {
        if (v & ~mask) {
            throw ValidationError(std::string(what) + ": table entry exceeds output width");
        }
    }
}

}  // namespace

TamperSpec TamperSpec::identity(int n) {
    check_width(n);
    return TamperSpec(TamperKind::identity, n);
}

TamperSpec TamperSpec::bitwise(std::vector<BitAction> actions) {
    int n = static_cast<int>(actions.size());
    check_width(n);
    TamperSpec f(TamperKind::bitwise, n);
    for (int i = 0; i < n; ++i) {
        uint64_t bit = 1ull << i;
        switch (actions[static_cast<size_t>(i)]) {
            case BitAction::keep: f.pass_mask_ |= bit; break;
            case BitAction::flip: f.pass_mask_ |= bit; f.flip_mask_ |= bit; break;
            case BitAction::set0: break;
            case BitAction::set1: f.set1_mask_ |= bit; break;
        }
    }
    f.actions_ = std::move(actions);
    return f;
}

TamperSpec TamperSpec::additive(int n, uint64_t delta) {
    check_width(n);
    if (delta & ~width_mask(n)) throw ValidationError("additive offset exceeds width");
    TamperSpec f(TamperKind::additive, n);
    f.delta_ = delta;
    return f;
}

TamperSpec TamperSpec::constant_fn(int n, uint64_t c) {
    check_width(n);
    if (c & ~width_mask(n)) throw ValidationError("constant exceeds width");
    TamperSpec f(TamperKind::constant, n);
    f.constant_ = c;
    return f;
}

TamperSpec TamperSpec::split_state(int n, std::vector<uint64_t> g1, std::vector<uint64_t> g2) {
    check_width(n);
    int h1 = (n + 1) / 2, h2 = n / 2;
    if (h1 > kMaxTableBits || h2 > kMaxTableBits) {
        throw ValidationError("split-state halves capped at 2^20 table entries");
    }
    check_table(g1, h1, h1, "split g1");
    check_table(g2, h2, h2, "split g2");
    TamperSpec f(TamperKind::split, n);
    f.g1_ = std::move(g1);
    f.g2_ = std::move(g2);
    return f;
}

TamperSpec TamperSpec::subset_action(int n, std::vector<int> positions,
                                     std::vector<uint64_t> g) {
    check_width(n);
    std::vector<int> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= n) throw ValidationError("subset position out of range");
        if (i > 0 && sorted[i] == sorted[i - 1]) throw ValidationError("duplicate subset position");
    }
    int tb = static_cast<int>(sorted.size());
    if (tb < 1 || tb > 24) throw ValidationError("subset size must be in [1, 24]");
    check_table(g, tb, tb, "subset g");
    TamperSpec f(TamperKind::subset, n);
    f.positions_ = std::move(sorted);
    f.table_ = std::move(g);
    return f;
}

TamperSpec TamperSpec::explicit_table(int n, std::vector<uint64_t> table) {
    check_width(n);
    if (n > kMaxTableBits) throw ValidationError("explicit tables capped at n <= 20");
    check_table(table, n, n, "explicit table");
    TamperSpec f(TamperKind::table, n);
    f.table_ = std::move(table);
    return f;
}

uint64_t TamperSpec::apply(uint64_t x) const {
    switch (kind_) {
        case TamperKind::identity:
            return x;
        case TamperKind::bitwise:
            return ((x ^ flip_mask_) & pass_mask_) | set1_mask_;
        case TamperKind::additive:
            return x ^ delta_;
        case TamperKind::constant:
            return constant_;
        case TamperKind::split: {
            int h1 = split_low_bits();
            uint64_t x1 = x & width_mask(h1);
            uint64_t x2 = x >> h1;
            return g1_[x1] | (g2_[x2] << h1);
        }
        case TamperKind::subset: {
            uint64_t idx = 0;
            for (size_t i = 0; i < positions_.size(); ++i) {
                idx |= ((x >> positions_[i]) & 1) << i;
            }
            uint64_t out = table_[idx];
            uint64_t y = x;
            for (size_t i = 0; i < positions_.size(); ++i) {
                uint64_t bit = 1ull << positions_[i];
                y = (y & ~bit) | (((out >> i) & 1) << positions_[i]);
            }
            return y;
        }
        case TamperKind::table:
            return table_[x];
    }
    return x;  // unreachable
}

const char* tamper_kind_name(TamperKind kind) {
    switch (kind) {
        case TamperKind::identity: return "identity";
        case TamperKind::bitwise: return "bitwise";
        case TamperKind::additive: return "additive";
        case TamperKind::constant: return "constant";
        case TamperKind::split: return "split";
        case TamperKind::subset: return "subset";
        case TamperKind::table: return "table";
    }
    return "?";
}

TamperKind tamper_kind_from_name(const std::string& name) {
    if (name == "identity") return TamperKind::identity;
    if (name == "bitwise") return TamperKind::bitwise;
    if (name == "additive") return TamperKind::additive;
    if (name == "constant") return TamperKind::constant;
    if (name == "split") return TamperKind::split;
    if (name == "subset") return TamperKind::subset;
    if (name == "table" || name == "random") return TamperKind::table;
    throw ValidationError("unknown tampering family: " + name);
}

std::vector<TamperSpec> sample_family(const std::string& kind, int n, uint64_t count,
                                      RngStream& rng) {
    check_width(n);
    if (count < 1) throw ValidationError("sample_family: count must be >= 1");
    TamperKind k = tamper_kind_from_name(kind);
    std::vector<TamperSpec> out;
    out.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        switch (k) {
            case TamperKind::identity:
                out.push_back(TamperSpec::identity(n));
                break;
            case TamperKind::bitwise: {
                std::vector<BitAction> acts(static_cast<size_t>(n));
                for (auto& a : acts) a = static_cast<BitAction>(rng.bits(2));
                out.push_back(TamperSpec::bitwise(std::move(acts)));
                break;
            }
            case TamperKind::additive:
                out.push_back(TamperSpec::additive(n, rng.bits(n)));
                break;
            case TamperKind::constant:
                out.push_back(TamperSpec::constant_fn(n, rng.bits(n)));
                break;
            case TamperKind::split: {
                int h1 = (n + 1) / 2, h2 = n / 2;
                if (h1 > kMaxTableBits) {
                    throw ValidationError("split family sampling requires n <= 40");
                }
                std::vector<uint64_t> g1(1ull << h1), g2(1ull << h2);
                for (auto& v : g1) v = rng.bits(h1);
                for (auto& v : g2) v = rng.bits(h2);
                out.push_back(TamperSpec::split_state(n, std::move(g1), std::move(g2)));
                break;
            }
            case TamperKind::subset: {
                int tb = (n + 1) / 2;
                std::vector<int> pos(static_cast<size_t>(tb));
                for (int j = 0; j < tb; ++j) pos[static_cast<size_t>(j)] = j;
                std::vector<uint64_t> g(1ull << tb);
                for (auto& v : g) v = rng.bits(tb);
                out.push_back(TamperSpec::subset_action(n, std::move(pos), std::move(g)));
                break;
            }
            case TamperKind::table: {
                if (n > kMaxTableBits) {
                    throw ValidationError("random-function family requires n <= 20");
                }
                std::vector<uint64_t> table(1ull << n);
                for (auto& v : table) v = rng.bits(n);
                out.push_back(TamperSpec::explicit_table(n, std::move(table)));
                break;
            }
        }
    }
    return out;
}

FixedPointStats fixed_point_stats_exact(const TamperSpec& f) {
    if (f.n() > kMaxTableBits) {
        throw ValidationError("exact fixed-point stats require n <= 20");
    }
    FixedPointStats st;
    st.n = f.n();
    st.exact = true;
    uint64_t space = 1ull << f.n();
    uint64_t fixed = 0;
    std::vector<uint32_t> counts(space, 0);
    for (uint64_t x = 0; x < space; ++x) {
        uint64_t y = f.apply(x);
        if (y == x) {
            ++fixed;
        } else {
            ++counts[y];
        }
    }
    st.p0 = static_cast<double>(fixed) / static_cast<double>(space);
    for (uint64_t y = 0; y < space; ++y) {
        if (counts[y]) st.p[y] = static_cast<double>(counts[y]) / static_cast<double>(space);
    }
    return st;
}

FixedPointStats fixed_point_stats_sampled(const TamperSpec& f, uint64_t n_samples,
                                          RngStream& rng) {
    if (n_samples < 1) throw ValidationError("sampled stats need at least one sample");
    FixedPointStats st;
    st.n = f.n();
    st.exact = false;
    st.samples = n_samples;
    uint64_t fixed = 0;
    std::map<uint64_t, uint64_t> counts;
    for (uint64_t i = 0; i < n_samples; ++i) {
        uint64_t x = rng.bits(f.n());
        uint64_t y = f.apply(x);
        if (y == x) {
            ++fixed;
        } else {
            ++counts[y];
        }
    }
    st.p0 = static_cast<double>(fixed) / static_cast<double>(n_samples);
    for (auto [y, c] : counts) st.p[y] = static_cast<double>(c) / static_cast<double>(n_samples);
    // two-sided Chernoff-Hoeffding radius at 99% confidence
    st.radius = std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n_samples)));
    return st;
}

HeavySet heavy_set(const FixedPointStats& stats, uint64_t r) {
    if (r < 1) throw ValidationError("heavy_set: r must be >= 1");
    HeavySet h;
    h.r = r;
    double threshold = 1.0 / static_cast<double>(r);
    for (const auto& [x, px] : stats.p) {
        if (px > threshold) h.members.push_back(x);
    }
    return h;
}

bool is_bijective_fixpoint_free(const TamperSpec& f) {
    switch (f.kind()) {
        case TamperKind::identity:
            return false;
        case TamperKind::additive:
            return f.delta() != 0;
        case TamperKind::constant:
            return false;  // n >= 1, never injective
        case TamperKind::bitwise: {
            bool flips = false;
            for (BitAction a : f.actions()) {
                if (a == BitAction::set0 || a == BitAction::set1) return false;
                if (a == BitAction::flip) flips = true;
            }
            return flips;
        }
        case TamperKind::split: {
            // f is bijective iff both halves are; a fixed point of f is a
            // simultaneous fixed point of both halves
            auto bijective = [](const std::vector<uint64_t>& t) {
                std::vector<bool> seen(t.size(), false);
                for (uint64_t v : t) {
                    if (seen[v]) return false;
                    seen[v] = true;
                }
                return true;
            };
            auto has_fixpoint = [](const std::vector<uint64_t>& t) {
                for (uint64_t i = 0; i < t.size(); ++i) {
                    if (t[i] == i) return true;
                }
                return false;
            };
            if (!bijective(f.g1()) || !bijective(f.g2())) return false;
            return !has_fixpoint(f.g1()) || !has_fixpoint(f.g2());
        }
        default:
            break;
    }
    if (f.n() > kMaxTableBits) {
        throw ValidationError("bijectivity check for table-backed specs requires n <= 20");
    }
    uint64_t space = 1ull << f.n();
    std::vector<bool> seen(space, false);
    for (uint64_t x = 0; x < space; ++x) {
        uint64_t y = f.apply(x);
        if (y == x || seen[y]) return false;
        seen[y] = true;
    }
    return true;
}

}  // namespace nmc
