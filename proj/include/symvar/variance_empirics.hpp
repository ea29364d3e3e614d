#pragma once

// Brute-force empirical variances.
//
// T setting: mean of squares of sum_{n <= x} d_k(n) chi_r(n) over positive
// fundamental discriminants r in (y, 2y], chi_r(n) = kronecker(r, n).
// No mean subtraction -- the T variance is defined as a raw second moment.
//
// S setting: (1/4y) sum_{y < p <= 2y} log p (sum_{n <= x, p !| n} d_k(n) chi_p(n))^2
// with chi_p(n) the Legendre symbol (n|p); the reduced weighted form, which is
// what the diagonal analysis computes (the mean-subtracted definition agrees
// asymptotically). p !| n is automatic: the symbol vanishes there.
//
// Character sums accumulate in exact integers; the only division is the final
// expectation. Parallel over moduli in fixed blocks, combined in index order.

#include <cmath>
#include <vector>

#include "symvar/core_arith.hpp"
#include "symvar/diagonal_sums.hpp"
#include "symvar/errors.hpp"
#include "symvar/euler_products.hpp"
#include "symvar/gaussian_ideals.hpp"
#include "symvar/numeric.hpp"
#include "symvar/parallel.hpp"

namespace symvar {

// One modulus' exact character sum; |sum_value| can never exceed sum d_k(n).
struct CharacterSumProfile {
    u64 x = 0;
    unsigned k = 1;
    u64 modulus = 0;
    i64 sum_value = 0;
};

// T side: sum_{n <= x} d_k(n) chi_r(n), chi_r(n) = kronecker(r, n)
inline CharacterSumProfile character_sum_T(const DivisorTable& dk, u64 r) {
    CharacterSumProfile p{dk.x_max, dk.k, r, 0};
    for (u64 n = 1; n <= dk.x_max; ++n)
        p.sum_value += static_cast<i64>(dk(n)) *
                       kronecker(static_cast<i64>(r), static_cast<i64>(n));
    return p;
}

// S side: sum_{n <= x} d_k(n) (n|p), the Legendre symbol; p | n terms vanish
inline CharacterSumProfile character_sum_S(const DivisorTable& dk, u64 p) {
    CharacterSumProfile prof{dk.x_max, dk.k, p, 0};
    for (u64 n = 1; n <= dk.x_max; ++n)
        prof.sum_value += static_cast<i64>(dk(n)) *
                          kronecker(static_cast<i64>(n), static_cast<i64>(p));
    return prof;
}

inline double empirical_variance_T(const DivisorTable& dk, double y) {
    if (!(y >= 2)) throw validation_error("empirical_variance_T: y >= 2 required");
    auto discs = enumerate_fundamental_discriminants(y, 2 * y);
    if (discs.empty())
        throw validation_error("empirical_variance_T: no fundamental discriminants in (y,2y]");

    auto per_block = [&](u64 lo, u64 hi) {
        u128 sq = 0;
        for (u64 i = lo; i < hi; ++i) {
            i64 s = character_sum_T(dk, discs[i]).sum_value;
            sq += u128(s) * s;
        }
        return sq;
    };
    u128 total = blocked_reduce(0, discs.size(), 1024, u128(0), per_block,
                                [](u128 a, u128 b) { return a + b; });
    return static_cast<double>(total) / static_cast<double>(discs.size());
}

inline double empirical_variance_T(unsigned k, u64 x, double y) {
    if (x < 1) throw validation_error("empirical_variance_T: x >= 1 required");
    return empirical_variance_T(build_divisor_table(k, x), y);
}

inline double empirical_variance_S(const DivisorTable& dk, double y) {
    if (!(y >= 2)) throw validation_error("empirical_variance_S: y >= 2 required");
    // integer primes with floor(y) < p <= floor(2y) are exactly y < p <= 2y
    auto primes = PrimeStream(static_cast<u64>(y), static_cast<u64>(2 * y)).collect();
    if (primes.empty())
        throw validation_error("empirical_variance_S: no primes in (y,2y]");

    auto per_block = [&](u64 lo, u64 hi) {
        double acc = 0.0;
        for (u64 i = lo; i < hi; ++i) {
            const u64 p = primes[i];
            i64 s = character_sum_S(dk, p).sum_value;
            acc += std::log(static_cast<double>(p)) * static_cast<double>(s) *
                   static_cast<double>(s);
        }
        return acc;
    };
    double total = blocked_reduce(0, primes.size(), 1024, 0.0, per_block,
                                  [](double a, double b) { return a + b; });
    return total / (4 * y);
}

inline double empirical_variance_S(unsigned k, u64 x, double y) {
    if (x < 1) throw validation_error("empirical_variance_S: x >= 1 required");
    return empirical_variance_S(build_divisor_table(k, x), y);
}

// ---------------------------------------------------------------------------
// Ratio harness: one row per x comparing empirics against the conjectured
// main term. y (or K) is derived from the fixed c: y = x^{1/c} for T and S,
// K = x^{1/(2c)} for N.
// ---------------------------------------------------------------------------

struct VarianceReport {
    Setting setting = Setting::T;
    unsigned k_or_l = 1;
    u64 x = 0;
    double y_or_K = 0.0;
    double empirical = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
};

inline std::vector<VarianceReport> ratio_report(Setting setting, unsigned kl, double c,
                                                const std::vector<u64>& xs,
                                                u64 prime_cutoff = 100000) {
    if (!(c > 0.0 && c <= 0.5))
        throw validation_error("ratio_report: c must lie in (0, 1/2]");
    if (kl < 1) throw validation_error("ratio_report: fold count >= 1 required");

    ConstantResult a;
    switch (setting) {
        case Setting::T: a = a_T(kl, prime_cutoff); break;
        case Setting::S: a = a_S(kl, prime_cutoff); break;
        case Setting::N: a = a_N(kl, prime_cutoff); break;
    }
    const double aval = static_cast<double>(a.value);
    const double glead = rational_to_double(gamma_leading_coefficient(kl));
    const double deg = static_cast<double>(moment_degree(kl));

    std::vector<VarianceReport> rows;
    rows.reserve(xs.size());
    for (u64 x : xs) {
        if (x < 3) throw validation_error("ratio_report: x >= 3 required");
        VarianceReport row;
        row.setting = setting;
        row.k_or_l = kl;
        row.x = x;
        const double lx = std::log(static_cast<double>(x));
        // gamma is a pure monomial on (0,1/2]: gamma(c) (log y)^deg = glead (log x)^deg
        const double shape = glead * std::pow(lx, deg);
        switch (setting) {
            case Setting::T: {
                double y = std::pow(static_cast<double>(x), 1.0 / c);
                row.y_or_K = y;
                row.empirical = empirical_variance_T(kl, x, y);
                row.predicted = aval * static_cast<double>(x) * shape;
                break;
            }
            case Setting::S: {
                double y = std::pow(static_cast<double>(x), 1.0 / c);
                row.y_or_K = y;
                row.empirical = empirical_variance_S(kl, x, y);
                row.predicted = aval * (static_cast<double>(x) / 4.0) * shape;
                break;
            }
            case Setting::N: {
                double K = std::pow(static_cast<double>(x), 1.0 / (2.0 * c));
                row.y_or_K = K;
                row.empirical = variance_diagonal(kl, K, x);
                row.predicted = aval * (static_cast<double>(x) / K) * shape;
                break;
            }
        }
        row.ratio = row.predicted != 0.0 ? row.empirical / row.predicted : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace symvar
