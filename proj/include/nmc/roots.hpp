#pragma once

#include <cstdint>
#include <vector>

#include "nmc/gf2x.hpp"

namespace nmc {

// All distinct roots of p in GF(2^m), sorted ascending; |result| <= deg p.
// Throws ValidationError for the zero polynomial (every element is a root).
//
// Strategy: brute-force evaluation over the whole field for m <= 16;
// otherwise gcd(p, X^(2^m) - X) by repeated squaring of the Frobenius map
// modulo p, then randomized trace-map splitting of the product of linear
// factors. The splitting randomness is derived from p itself, so the
// function stays a pure function of its inputs.
std::vector<uint64_t> find_roots(const FieldSpec& f, const Poly& p);

// Exposed for tests: the gcd/trace route regardless of field size.
std::vector<uint64_t> find_roots_cz(const FieldSpec& f, const Poly& p);

}  // namespace nmc
