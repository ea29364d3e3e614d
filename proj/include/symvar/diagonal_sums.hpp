#pragma once

// Exact diagonal sums
//   D = sum_{Ax < n,m <= Bx, nm = square} d_k(n) d_k(m) [prod_{p|nm} (1+1/p)^{-1}],
// their O(x^2) brute-force oracle, the log-volume lemmas, and the asymptotic
// predictors a * (sqrt B - sqrt A)^2 * x * gamma_lead * (log x)^{2k^2+k-2}.
//
// Fast path: nm is a square iff n = q a^2, m = q b^2 for one squarefree q, so
// the sum groups by kernel q at O(x log x) pair enumerations. Exact rationals
// throughout; per-q subtotals keep the gcd work on small denominators.

#include <algorithm>
#include <cmath>
#include <vector>

#include "symvar/core_arith.hpp"
#include "symvar/errors.hpp"
#include "symvar/euler_products.hpp"
#include "symvar/numeric.hpp"
#include "symvar/parallel.hpp"
#include "symvar/rmt_moments.hpp"

namespace symvar {

enum class Setting { T, S, N };

inline const char* to_string(Setting s) {
    switch (s) {
        case Setting::T: return "T";
        case Setting::S: return "S";
        case Setting::N: return "N";
    }
    return "?";
}

struct Interval {
    cpp_rational A{0};
    cpp_rational B{1};
};

struct DiagonalSumResult {
    unsigned k = 1;
    u64 x = 0;
    Interval interval;
    bool weighted = false;
    cpp_rational value;
};

namespace detail {

inline cpp_int u128_to_cpp_int(u128 v) {
    cpp_int hi = static_cast<u64>(v >> 64);
    return (hi << 64) | cpp_int(static_cast<u64>(v));
}

inline u64 floor_rational_times(const cpp_rational& r, u64 x) {
    cpp_int q = numerator(r) * x / denominator(r);
    return q.convert_to<u64>();
}

inline void validate_interval(const Interval& iv) {
    if (iv.A < 0 || !(iv.A < iv.B))
        throw validation_error("interval: need 0 <= A < B");
}

// distinct primes of q (squarefree), a and b, deduplicated; num = prod p,
// den = prod (p+1): the weight prod_{p | q a^2 b^2} (1+1/p)^{-1}
inline cpp_rational pair_weight(const SpfTable& spf, u64 q, u64 a, u64 b) {
    u64 primes[48];
    int np = 0;
    auto add = [&](u64 n) {
        while (n > 1) {
            u64 p = spf.spf[n];
            while (n % p == 0) n /= p;
            bool seen = false;
            for (int i = 0; i < np; ++i)
                if (primes[i] == p) {
                    seen = true;
                    break;
                }
            if (!seen) primes[np++] = p;
        }
    };
    add(q);
    add(a);
    add(b);
    u64 num = 1;
    u128 den = 1;
    for (int i = 0; i < np; ++i) {
        num *= primes[i];
        den *= primes[i] + 1;
    }
    return cpp_rational(cpp_int(num), u128_to_cpp_int(den));
}

} // namespace detail

inline DiagonalSumResult diagonal_sum(unsigned k, u64 x, Interval iv, bool weighted,
                                      const DivisorTable* table = nullptr) {
    if (k < 1 || x < 1) throw validation_error("diagonal_sum: k >= 1, x >= 1 required");
    detail::validate_interval(iv);
    const u64 lo = detail::floor_rational_times(iv.A, x) + 1;
    const u64 hi = detail::floor_rational_times(iv.B, x);
    const u64 cap = weighted ? limits::diagonal_weighted_bound_max
                             : limits::diagonal_unweighted_bound_max;
    if (hi > cap) throw capacity_error("diagonal_sum: bound B*x exceeds configured limit");

    DiagonalSumResult res{k, x, iv, weighted, cpp_rational(0)};
    if (hi < lo) return res;

    DivisorTable local;
    if (table == nullptr || table->k != k || table->x_max < hi) {
        local = build_divisor_table(k, hi);
        table = &local;
    }
    const auto& d = *table;
    SpfTable spf;
    if (weighted) spf = SpfTable(hi);
    const auto sf = squarefree_flags(1, hi);

    auto per_block = [&](u64 qlo, u64 qhi) {
        cpp_rational block(0);
        u128 block_unweighted = 0;
        for (u64 q = qlo; q < qhi; ++q) {
            if (!sf[q - 1]) continue;
            const u64 amax = isqrt(hi / q);
            const u64 amin = ceil_sqrt((lo + q - 1) / q);
            if (amin > amax) continue;
            if (!weighted) {
                u128 s = 0;
                for (u64 a = amin; a <= amax; ++a) s += d(q * a * a);
                block_unweighted += s * s;
            } else {
                cpp_rational qsub(0);
                for (u64 a = amin; a <= amax; ++a) {
                    const u64 da = d(q * a * a);
                    // diagonal term b = a
                    qsub += cpp_rational(cpp_int(u128(da) * da)) *
                            detail::pair_weight(spf, q, a, a);
                    for (u64 b = a + 1; b <= amax; ++b) {
                        const u128 dd = u128(da) * d(q * b * b);
                        qsub += cpp_rational(detail::u128_to_cpp_int(2 * dd)) *
                                detail::pair_weight(spf, q, a, b);
                    }
                }
                block += qsub;
            }
        }
        if (!weighted) return cpp_rational(detail::u128_to_cpp_int(block_unweighted));
        return block;
    };

    res.value = blocked_reduce(
        1, hi + 1, u64(1) << 15, cpp_rational(0), per_block,
        [](cpp_rational a, cpp_rational b) { return a + b; });
    return res;
}

// O(x^2) oracle: direct pair scan with the integer square test. Kept free of
// the kernel parametrization so the two routes stay independent.
inline DiagonalSumResult diagonal_sum_bruteforce(unsigned k, u64 x, Interval iv, bool weighted) {
    if (k < 1 || x < 1)
        throw validation_error("diagonal_sum_bruteforce: k >= 1, x >= 1 required");
    detail::validate_interval(iv);
    if (x > limits::bruteforce_x_max)
        throw capacity_error("diagonal_sum_bruteforce: x exceeds 10^4");
    const u64 lo = detail::floor_rational_times(iv.A, x) + 1;
    const u64 hi = detail::floor_rational_times(iv.B, x);

    DiagonalSumResult res{k, x, iv, weighted, cpp_rational(0)};
    if (hi < lo) return res;

    const DivisorTable d = build_divisor_table(k, hi);
    SpfTable spf;
    if (weighted) spf = SpfTable(hi);

    cpp_rational total(0);
    for (u64 n = lo; n <= hi; ++n) {
        cpp_rational row(0);
        u128 row_unweighted = 0;
        for (u64 m = lo; m <= hi; ++m) {
            if (!is_perfect_square(n * m)) continue;
            const u128 dd = u128(d(n)) * d(m);
            if (weighted)
                row += cpp_rational(detail::u128_to_cpp_int(dd)) *
                       detail::pair_weight(spf, 1, n, m);
            else
                row_unweighted += dd;
        }
        total += weighted ? row : cpp_rational(detail::u128_to_cpp_int(row_unweighted));
    }
    res.value = total;
    return res;
}

// ---------------------------------------------------------------------------
// Log-volume lemmas (closed forms; the defining iterated integrals live in the
// oracle module and in the tests)
// ---------------------------------------------------------------------------

// I_{m,n}(Y) = m!/(m+n)! (log Y)^{m+n}
inline double lemma_I(unsigned m, unsigned n, double Y) {
    if (n < 1) throw validation_error("lemma_I: n >= 1 required");
    if (!(Y > 1.0)) throw validation_error("lemma_I: Y > 1 required");
    double factor = 1.0;
    for (unsigned j = m + 1; j <= m + n; ++j) factor /= static_cast<double>(j);
    return factor * std::pow(std::log(Y), static_cast<double>(m + n));
}

// J_n(Y) = (-1)^n + Y sum_{j=0}^{n-1} (-1)^{n-1-j} (log Y)^j / j!
inline double lemma_J(unsigned n, double Y) {
    if (n < 1) throw validation_error("lemma_J: n >= 1 required");
    if (!(Y >= 1.0)) throw validation_error("lemma_J: Y >= 1 required");
    const double L = std::log(Y);
    double sum = 0.0, term = 1.0; // term = L^j / j!
    for (unsigned j = 0; j < n; ++j) {
        double sign = ((n - 1 - j) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * term;
        term *= L / static_cast<double>(j + 1);
    }
    return ((n % 2 == 0) ? 1.0 : -1.0) + Y * sum;
}

// Leading term of the continuous diagonal-box volume: x * leading_coefficient
// * (log x)^degree. The coefficient is exactly twice the moment polynomial's
// leading coefficient -- the parity constraint halves the discrete count but
// not the volume, which is where the global factor of 2 comes from.
struct VolumeAsymptotic {
    unsigned k = 1;
    unsigned degree = 0;
    cpp_rational leading_coefficient;
};

inline VolumeAsymptotic volume_asymptotic(unsigned k) {
    if (k < 1) throw validation_error("volume_asymptotic: k >= 1 required");
    const u64 a = static_cast<u64>(k) * k + k;
    VolumeAsymptotic v;
    v.k = k;
    v.degree = moment_degree(k);
    v.leading_coefficient =
        cpp_rational(binomial(a - 2, a / 2 - 1),
                     pow2(a - 2) * factorial(2 * static_cast<u64>(k) * k + k - 2));
    return v;
}

// (sqrt B - sqrt A)^2, the interval correction to the (0,1] main term
inline double interval_factor(const cpp_rational& A, const cpp_rational& B) {
    if (A < 0 || !(A < B)) throw validation_error("interval_factor: need 0 <= A < B");
    double sb = std::sqrt(rational_to_double(B));
    double sa = std::sqrt(rational_to_double(A));
    return (sb - sa) * (sb - sa);
}

// a * (sqrt B - sqrt A)^2 * x * gamma_lead * (log x)^{2k^2+k-2}; gamma is a
// pure monomial on (0, 1/2], so (log y) cancels and no y parameter appears.
inline double predicted_diagonal(unsigned k, double x, const Interval& iv, double a_value) {
    if (!(x > 1.0)) throw validation_error("predicted_diagonal: x > 1 required");
    return a_value * interval_factor(iv.A, iv.B) * x *
           rational_to_double(gamma_leading_coefficient(k)) *
           std::pow(std::log(x), static_cast<double>(moment_degree(k)));
}

inline double predicted_diagonal(unsigned k, double x, Setting setting,
                                 Interval iv = Interval{}, u64 prime_cutoff = 100000) {
    if (setting != Setting::T && setting != Setting::S)
        throw validation_error("predicted_diagonal: setting must be T or S");
    ConstantResult a = setting == Setting::T ? a_T(k, prime_cutoff) : a_S(k, prime_cutoff);
    return predicted_diagonal(k, x, iv, static_cast<double>(a.value));
}

} // namespace symvar
