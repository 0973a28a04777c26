#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace semipred {

// Exact rational arithmetic for the probability layer. All semimeasure
// values are Rat; no rounding ever happens below the analytics layer.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// 2^e for arbitrary sign of e.
inline Rat pow2(long e) {
    Int num = 1;
    if (e >= 0) {
        num <<= static_cast<unsigned>(e);
        return Rat(num);
    }
    num <<= static_cast<unsigned>(-e);
    return Rat(1) / Rat(num);
}

inline Rat rat_pow(Rat base, unsigned long e) {
    Rat out = 1;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

inline bool is_probability(const Rat& r) { return r >= 0 && r <= 1; }

// "num/den" or plain integer, the manifest wire format for rationals.
inline std::string rat_to_string(const Rat& r) { return r.str(); }

inline Rat rat_from_string(const std::string& s) { return Rat(s); }

}  // namespace semipred
