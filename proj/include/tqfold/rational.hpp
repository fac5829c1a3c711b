#pragma once

/**
 * Exact rational coefficient domain.
 *
 * `Rat` is an arbitrary-precision signed rational, always kept in lowest
 * terms with positive denominator.  It is the coefficient ring for every
 * series, fraction and determinant in this library; no floating point is
 * used anywhere.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace tqfold {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---- construction ----

// rat(p, q) == p/q in lowest terms.  (Division keeps the representation
// canonical; the two-argument Rat constructor is avoided on purpose.)
inline Rat rat(long long num, long long den = 1) {
    if (den == 0) throw NotInvertible("rat: zero denominator");
    return Rat(num) / Rat(den);
}

// ---- powers ----

// base^e for any integer e (negative exponents invert; 0^0 == 1).
inline Rat rat_pow(const Rat& base, long long e) {
    if (e == 0) return Rat(1);
    if (base.is_zero()) {
        if (e < 0) throw NotInvertible("rat_pow: negative power of zero");
        return Rat(0);
    }
    Rat b = e < 0 ? Rat(Rat(1) / base) : base;
    unsigned long long n =
        e < 0 ? -static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
    Rat acc(1);
    while (n != 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

// (-1)^e as a Rat, for any (possibly negative) integer e.
inline Rat sign_pow(long long e) { return (e % 2 == 0) ? Rat(1) : Rat(-1); }

// ---- text round-trip ----

inline std::string rat_str(const Rat& x) { return x.str(); }

inline Rat rat_parse(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw Error("rat_parse: cannot parse rational '" + s + "'");
    }
}

}  // namespace tqfold
