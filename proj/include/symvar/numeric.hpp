#pragma once

// Shared numeric substrate: exact big integers/rationals, a 64-digit binary
// float for Euler products, and locale-independent number formatting.

#include <bit>
#include <charconv>
#include <cstdint>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "symvar/errors.hpp"

namespace symvar {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// ~64 significant decimal digits; products of ~10^6 near-unit factors lose
// about 6 digits, leaving comfortably more than the 50 the constants need.
using real_hp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<64>>;

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline real_hp pi_hp() { return boost::math::constants::pi<real_hp>(); }

// Integer floor sqrt, no floating point. Newton from a power-of-two seed
// >= sqrt(n) converges monotonically down to the floor.
inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 x = u64(1) << ((std::bit_width(n) + 1) / 2);
    u64 y = (x + n / x) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

inline bool is_perfect_square(u64 n) {
    u64 r = isqrt(n);
    return r * r == n;
}

// smallest a with a*a >= n
inline u64 ceil_sqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = isqrt(n);
    return r * r == n ? r : r + 1;
}

inline cpp_int binomial(u64 n, u64 r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    cpp_int acc = 1;
    for (u64 j = 1; j <= r; ++j) {
        acc *= cpp_int(n - r + j);
        acc /= j; // exact at every step: acc is C(n-r+j, j)
    }
    return acc;
}

inline cpp_int factorial(u64 n) {
    cpp_int acc = 1;
    for (u64 j = 2; j <= n; ++j) acc *= j;
    return acc;
}

inline cpp_int pow2(u64 e) { return cpp_int(1) << e; }

// Locale-independent shortest round-trip formatting (CSV determinism).
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_u64(u64 v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Decimal rendering of an exact rational (for CSV "exact value" columns).
// 40 significant digits is far beyond double round-trip needs.
inline std::string rational_decimal_string(const cpp_rational& q, unsigned digits = 40) {
    if (denominator(q) == 1) return numerator(q).str();
    real_hp v = real_hp(numerator(q)) / real_hp(denominator(q));
    return v.str(digits);
}

inline double rational_to_double(const cpp_rational& q) {
    return static_cast<double>(real_hp(numerator(q)) / real_hp(denominator(q)));
}

} // namespace symvar
