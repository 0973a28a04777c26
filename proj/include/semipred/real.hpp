#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>

#include "rational.hpp"

namespace semipred {

// Working-precision reals for the analytics layer (square roots, logs, exp).
// Precision is configurable at runtime; all inequality assertions use a
// tolerance of 2^-(bits-20) so that genuine violations are not masked.
using Real = boost::multiprecision::mpfr_float;

namespace detail {
inline unsigned& precision_bits_ref() {
    static unsigned bits = 100;
    return bits;
}
}  // namespace detail

inline unsigned precision_bits() { return detail::precision_bits_ref(); }

inline void set_precision_bits(unsigned bits) {
    if (bits < 24) bits = 24;
    detail::precision_bits_ref() = bits;
    // digits10 such that the mpfr backend allocates at least `bits` bits
    unsigned digits10 = static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2;
    Real::default_precision(digits10);
}

struct PrecisionInit {
    PrecisionInit() { set_precision_bits(100); }
};
inline const PrecisionInit precision_init{};

inline Real tolerance() {
    unsigned bits = precision_bits();
    unsigned drop = bits > 20 ? bits - 20 : 4;
    Real t = 1;
    return boost::multiprecision::ldexp(t, -static_cast<int>(drop));
}

inline Real to_real(const Rat& r) {
    return Real(boost::multiprecision::numerator(r)) /
           Real(boost::multiprecision::denominator(r));
}

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::log2;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

}  // namespace semipred
