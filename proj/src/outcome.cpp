#include "nmc/outcome.hpp"

#include <cmath>

namespace nmc {

std::string outcome_to_string(const Outcome& o) {
    switch (o.tag) {
        case Outcome::Tag::bot: return "bot";
        case Outcome::Tag::same: return "same";
        case Outcome::Tag::message: {
            // fixed-width-free lowercase hex
            std::string s;
            uint64_t v = o.value;
            do {
                s += "0123456789abcdef"[v & 0xf];
                v >>= 4;
            } while (v);
            return std::string(s.rbegin(), s.rend());
        }
    }
    return "?";
}

double OutcomeDist::total() const {
    double t = 0.0;
    for (const auto& [o, m] : mass) t += m;
    return t;
}

double stat_dist(const OutcomeDist& a, const OutcomeDist& b) {
    double l1 = 0.0;
    for (const auto& [o, m] : a.mass) l1 += std::abs(m - b.at(o));
    for (const auto& [o, m] : b.mass) {
        if (a.mass.find(o) == a.mass.end()) l1 += m;
    }
    return l1 / 2.0;
}

OutcomeDist push_copy(const OutcomeDist& d, uint64_t s) {
    OutcomeDist out;
    out.exact = d.exact;
    out.samples = d.samples;
    out.radius = d.radius;
    for (const auto& [o, m] : d.mass) out.mass[copy_op(o, s)] += m;
    return out;
}

}  // namespace nmc
