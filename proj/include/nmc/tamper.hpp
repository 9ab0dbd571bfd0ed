#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nmc/rng.hpp"

namespace nmc {

enum class TamperKind { identity, bitwise, additive, constant, split, subset, table };

enum class BitAction : uint8_t { keep, flip, set0, set1 };

// A tampering function f: {0,1}^n -> {0,1}^n in one of several compact
// representations. Values are immutable after construction; apply() is pure.
class TamperSpec {
public:
    static TamperSpec identity(int n);
    static TamperSpec bitwise(std::vector<BitAction> actions);
    static TamperSpec additive(int n, uint64_t delta);
    static TamperSpec constant_fn(int n, uint64_t c);
    // g1 acts on the first (low) ceil(n/2) bits, g2 on the last floor(n/2).
    static TamperSpec split_state(int n, std::vector<uint64_t> g1, std::vector<uint64_t> g2);
    // g rewrites the bits at `positions` as a function of those bits only;
    // all other positions pass through untouched.
    static TamperSpec subset_action(int n, std::vector<int> positions, std::vector<uint64_t> g);
    static TamperSpec explicit_table(int n, std::vector<uint64_t> table);

    uint64_t apply(uint64_t x) const;

    TamperKind kind() const { return kind_; }
    int n() const { return n_; }

    const std::vector<BitAction>& actions() const { return actions_; }
    uint64_t delta() const { return delta_; }
    uint64_t constant() const { return constant_; }
    const std::vector<uint64_t>& g1() const { return g1_; }
    const std::vector<uint64_t>& g2() const { return g2_; }
    const std::vector<int>& positions() const { return positions_; }
    const std::vector<uint64_t>& table() const { return table_; }

    int split_low_bits() const { return (n_ + 1) / 2; }

private:
    TamperSpec(TamperKind kind, int n) : kind_(kind), n_(n) {}

    TamperKind kind_;
    int n_;

    std::vector<BitAction> actions_;  // bitwise
    uint64_t flip_mask_ = 0, pass_mask_ = 0, set1_mask_ = 0;
    uint64_t delta_ = 0;              // additive
    uint64_t constant_ = 0;           // constant
    std::vector<uint64_t> g1_, g2_;   // split
    std::vector<int> positions_;      // subset
    std::vector<uint64_t> table_;     // subset action table or full table
};

const char* tamper_kind_name(TamperKind kind);
TamperKind tamper_kind_from_name(const std::string& name);

// Uniform i.i.d. members of the named family. "random" (alias "table")
// draws uniformly random functions, which requires n <= 20. For the subset
// family the acted-on positions default to the low ceil(n/2) bits.
std::vector<TamperSpec> sample_family(const std::string& kind, int n, uint64_t count,
                                      RngStream& rng);

// p0 = Pr[f(U) = U] and p(x) = Pr[f(U) = x and x != U], the fixed-point
// statistics behind the canonical simulator distribution.
struct FixedPointStats {
    int n = 0;
    double p0 = 0.0;
    std::map<uint64_t, double> p;  // only nonzero entries
    bool exact = true;
    uint64_t samples = 0;   // 0 when exact
    double radius = 0.0;    // 99% Chernoff confidence radius when sampled
};

FixedPointStats fixed_point_stats_exact(const TamperSpec& f);  // requires n <= 20
FixedPointStats fixed_point_stats_sampled(const TamperSpec& f, uint64_t n_samples,
                                          RngStream& rng);

struct HeavySet {
    uint64_t r = 0;
    std::vector<uint64_t> members;  // sorted; fewer than r of them
};

// Elements with p(x) > 1/r.
HeavySet heavy_set(const FixedPointStats& stats, uint64_t r);

// True iff f is a bijection with no fixed point. Structural for the
// families where the answer is syntactic; enumeration (n <= 20) otherwise.
bool is_bijective_fixpoint_free(const TamperSpec& f);

}  // namespace nmc
