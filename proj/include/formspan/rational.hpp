#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace formspan {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, unsigned e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// q^e for possibly negative e, as an exact rational.
inline Rat qpow(long q, long e) {
    if (e >= 0) return Rat(ipow(BigInt(q), static_cast<unsigned>(e)));
    return Rat(1, ipow(BigInt(q), static_cast<unsigned>(-e)));
}

inline std::string rat_string(const Rat& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

// Lossy decimal rendering, round-to-nearest with the given number of digits.
inline std::string rat_decimal(const Rat& r, int digits = 12) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt scale = ipow(BigInt(10), static_cast<unsigned>(digits));
    BigInt scaled = (num * scale * 2 + den) / (den * 2);  // rounded
    BigInt whole = scaled / scale, frac = scaled % scale;
    std::string f = frac.str();
    f.insert(f.begin(), static_cast<size_t>(digits) - f.size(), '0');
    while (f.size() > 1 && f.back() == '0') f.pop_back();
    std::string s = whole.str() + "." + f;
    return neg ? "-" + s : s;
}

// Floor of sqrt for non-negative big integers (Newton).
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    if (n == 0) return 0;
    BigInt x = BigInt(1) << (static_cast<unsigned>(boost::multiprecision::msb(n)) / 2 + 1);
    while (true) {
        BigInt y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return x;
}

}  // namespace formspan
