#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace nmc {

// One decoder outcome: a k-bit message, bot (detected error), or the
// placeholder `same` marking an untampered codeword.
struct Outcome {
    enum class Tag : uint8_t { message = 0, bot = 1, same = 2 };

    Tag tag = Tag::bot;
    uint64_t value = 0;  // only meaningful for messages

    static Outcome msg(uint64_t s) { return {Tag::message, s}; }
    static Outcome bot() { return {Tag::bot, 0}; }
    static Outcome same() { return {Tag::same, 0}; }

    bool is_msg() const { return tag == Tag::message; }
    bool is_bot() const { return tag == Tag::bot; }
    bool is_same() const { return tag == Tag::same; }

    auto operator<=>(const Outcome&) const = default;
};

std::string outcome_to_string(const Outcome& o);

// copy(x, y): substitute the placeholder `same` by the actual message y.
inline Outcome copy_op(const Outcome& x, uint64_t y) {
    return x.is_same() ? Outcome::msg(y) : x;
}

// A probability distribution over {0,1}^k union {bot, same}, either exact
// or empirical with a recorded sample size and confidence radius.
struct OutcomeDist {
    std::map<Outcome, double> mass;
    bool exact = true;
    uint64_t samples = 0;
    double radius = 0.0;

    static OutcomeDist point(const Outcome& o) {
        OutcomeDist d;
        d.mass[o] = 1.0;
        return d;
    }

    double at(const Outcome& o) const {
        auto it = mass.find(o);
        return it == mass.end() ? 0.0 : it->second;
    }

    double total() const;
};

// Half L1 distance over the union of supports.
double stat_dist(const OutcomeDist& a, const OutcomeDist& b);

// Pushforward through copy(., s): collapses `same` onto the message s.
OutcomeDist push_copy(const OutcomeDist& d, uint64_t s);

}  // namespace nmc
