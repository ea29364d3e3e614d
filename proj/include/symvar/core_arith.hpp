#pragma once

// Exact integer substrate: d_k sieves, Kronecker symbol, fundamental
// discriminants, squarefree machinery, and prime streams by residue class.

#include <cstdint>
#include <optional>
#include <vector>

#include "symvar/errors.hpp"
#include "symvar/numeric.hpp"
#include "symvar/parallel.hpp"

namespace symvar {

// ---------------------------------------------------------------------------
// DivisorTable: values[n] = d_k(n), the number of ordered factorizations of n
// into k positive integers. Built by k-1 divisor convolutions of the constant
// 1 function, O(x log x) each, all exact.
// ---------------------------------------------------------------------------

struct DivisorTable {
    unsigned k = 1;
    u64 x_max = 0;
    std::vector<u64> values; // values[0] unused

    u64 operator()(u64 n) const { return values[n]; }
};

namespace limits {
inline constexpr unsigned divisor_k_max = 16;
inline constexpr u64 divisor_x_max = 300'000'000;
inline constexpr u64 diagonal_weighted_bound_max = 20'000'000;
inline constexpr u64 diagonal_unweighted_bound_max = 100'000'000;
inline constexpr u64 bruteforce_x_max = 10'000;
inline constexpr u64 ideal_norm_max = 100'000'000;
inline constexpr u64 prime_cutoff_max = 1'000'000'000;
} // namespace limits

inline DivisorTable build_divisor_table(unsigned k, u64 x_max) {
    if (k < 1 || k > limits::divisor_k_max)
        throw capacity_error("build_divisor_table: k out of range [1," +
                             std::to_string(limits::divisor_k_max) + "]");
    if (x_max < 1 || x_max > limits::divisor_x_max)
        throw capacity_error("build_divisor_table: x_max out of range");

    DivisorTable t;
    t.k = k;
    t.x_max = x_max;
    t.values.assign(x_max + 1, 1);
    t.values[0] = 0;

    std::vector<u64> next(x_max + 1);
    for (unsigned fold = 1; fold < k; ++fold) {
        std::fill(next.begin(), next.end(), 0);
        for (u64 a = 1; a <= x_max; ++a) {
            if (t.values[a] == 0) continue;
            for (u64 m = a; m <= x_max; m += a) {
                if (__builtin_add_overflow(next[m], t.values[a], &next[m]))
                    throw capacity_error("build_divisor_table: d_k value overflows 64 bits");
            }
        }
        t.values.swap(next);
        t.values[0] = 0;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Kronecker symbol (a|n), the full extension of the Jacobi/Legendre symbol.
// Binary reciprocity on machine integers, no allocation; this sits in loops
// that run 10^7..10^8 evaluations.
// ---------------------------------------------------------------------------

inline int kronecker(i64 a, i64 n) {
    if (a == 0 && n == 0)
        throw validation_error("kronecker: (0|0) undefined");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;

    int result = 1;

    // factor 2s out of n; (a|2) = 0, +1, -1 for a even, a = +-1, a = +-3 (mod 8)
    int twos = 0;
    while ((n & 1) == 0) {
        n /= 2;
        ++twos;
    }
    if (twos & 1) {
        int am8 = static_cast<int>(a % 8);
        if (am8 < 0) am8 += 8;
        if (am8 == 3 || am8 == 5) result = -result;
    }

    // (a|-1) = sign of a
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // n odd positive from here
    a %= n;
    if (a < 0) a += n;

    while (a != 0) {
        while ((a & 1) == 0) {
            a /= 2;
            i64 nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if ((a % 4) == 3 && (n % 4) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// ---------------------------------------------------------------------------
// Squarefree flags over a segment [lo, hi], by sieving with squares d^2 <= hi.
// Cheaper than factorization when the segment is what dominates the runtime.
// ---------------------------------------------------------------------------

inline std::vector<char> squarefree_flags(u64 lo, u64 hi) {
    if (lo > hi) return {};
    std::vector<char> flags(hi - lo + 1, 1);
    if (lo == 0) flags[0] = 0;
    for (u64 d = 2; d * d <= hi; ++d) {
        u64 q = d * d;
        u64 first = ((lo + q - 1) / q) * q;
        for (u64 m = first; m <= hi; m += q) flags[m - lo] = 0;
    }
    return flags;
}

// Standalone predicate by trial division; used as the independent check
// against the sieved enumeration.
inline bool is_squarefree(u64 n) {
    if (n == 0) return false;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

// Positive fundamental discriminant: r == 1 (mod 4) squarefree, or r = 4m with
// m == 2,3 (mod 4) squarefree. r = 1 (trivial character) is excluded; every
// range used downstream is (y, 2y] with y >= 1, which never reaches it.
inline bool is_fundamental_discriminant(u64 r) {
    if (r <= 1) return false;
    if (r % 4 == 1) return is_squarefree(r);
    if (r % 4 == 0) {
        u64 m = r / 4;
        return (m % 4 == 2 || m % 4 == 3) && is_squarefree(m);
    }
    return false;
}

inline std::vector<u64> enumerate_fundamental_discriminants(double y_low, double y_high) {
    if (!(y_low >= 0) || !(y_low < y_high))
        throw validation_error("enumerate_fundamental_discriminants: need 0 <= y_low < y_high");
    u64 lo = static_cast<u64>(y_low) + 1; // smallest integer > y_low
    while (static_cast<double>(lo) <= y_low) ++lo;
    u64 hi = static_cast<u64>(y_high);
    while (static_cast<double>(hi) > y_high) --hi;
    std::vector<u64> out;
    if (hi < 2 || lo > hi) return out;
    lo = std::max<u64>(lo, 2);

    auto sf = squarefree_flags(lo, hi);
    u64 mlo = (lo + 3) / 4, mhi = hi / 4;
    std::vector<char> sfm = mlo <= mhi ? squarefree_flags(mlo, mhi) : std::vector<char>{};

    for (u64 r = lo; r <= hi; ++r) {
        if (r % 4 == 1) {
            if (sf[r - lo]) out.push_back(r);
        } else if (r % 4 == 0) {
            u64 m = r / 4;
            if ((m % 4 == 2 || m % 4 == 3) && sfm[m - mlo]) out.push_back(r);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Smallest-prime-factor table: factorization workhorse for the kernel loops.
// ---------------------------------------------------------------------------

struct SpfTable {
    std::vector<u32> spf; // spf[n] = smallest prime factor of n, spf[1] = 1

    SpfTable() = default;
    explicit SpfTable(u64 n) {
        if (n > limits::diagonal_unweighted_bound_max)
            throw capacity_error("SpfTable: bound too large");
        spf.assign(n + 1, 0);
        if (n >= 1) spf[1] = 1;
        for (u64 i = 2; i <= n; ++i) {
            if (spf[i] == 0) {
                for (u64 j = i; j <= n; j += i)
                    if (spf[j] == 0) spf[j] = static_cast<u32>(i);
            }
        }
    }

    u64 bound() const { return spf.empty() ? 0 : spf.size() - 1; }

    // f(p, e) for each prime power p^e || n
    template <class F>
    void for_each_prime_power(u64 n, F f) const {
        while (n > 1) {
            u64 p = spf[n];
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f(p, e);
        }
    }

    u64 squarefree_kernel(u64 n) const {
        u64 ker = 1;
        for_each_prime_power(n, [&](u64 p, unsigned e) {
            if (e & 1) ker *= p;
        });
        return ker;
    }
};

// Product of primes dividing n to an odd power; n*m is a square iff the
// kernels of n and m agree. Trial division version for standalone use.
inline u64 squarefree_kernel(u64 n) {
    if (n == 0) throw validation_error("squarefree_kernel: n >= 1 required");
    u64 ker = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e & 1) ker *= p;
    }
    return ker * n; // leftover n is 1 or a prime appearing once
}

// prod_{p | nm} (1 + 1/p)^{-1} = prod p/(p+1), exact.
inline cpp_rational local_factor_prod(u64 nm) {
    if (nm == 0) throw validation_error("local_factor_prod: n >= 1 required");
    cpp_rational acc(1);
    for (u64 p = 2; p * p <= nm; ++p) {
        if (nm % p) continue;
        while (nm % p == 0) nm /= p;
        acc *= cpp_rational(p, p + 1);
    }
    if (nm > 1) acc *= cpp_rational(nm, nm + 1);
    return acc;
}

// ---------------------------------------------------------------------------
// PrimeStream: primes p with lower < p <= upper, optionally restricted to a
// residue class, in increasing order. Segmented Eratosthenes underneath.
// ---------------------------------------------------------------------------

inline std::vector<u64> simple_prime_sieve(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<char> mark(limit + 1, 1);
    mark[0] = mark[1] = 0;
    for (u64 i = 2; i * i <= limit; ++i)
        if (mark[i])
            for (u64 j = i * i; j <= limit; j += i) mark[j] = 0;
    for (u64 i = 2; i <= limit; ++i)
        if (mark[i]) primes.push_back(i);
    return primes;
}

class PrimeStream {
public:
    PrimeStream(u64 lower, u64 upper)
        : PrimeStream(lower, upper, std::nullopt) {}

    PrimeStream(u64 lower, u64 upper, u64 modulus, u64 residue)
        : PrimeStream(lower, upper, std::make_optional(std::pair<u64, u64>{modulus, residue})) {}

    bool next(u64& p) {
        while (pos_ >= buffer_.size()) {
            if (segment_lo_ > upper_) return false;
            fill_segment();
        }
        p = buffer_[pos_++];
        return true;
    }

    std::vector<u64> collect() {
        std::vector<u64> out;
        u64 p;
        while (next(p)) out.push_back(p);
        return out;
    }

private:
    PrimeStream(u64 lower, u64 upper, std::optional<std::pair<u64, u64>> filter)
        : lower_(lower), upper_(upper), filter_(filter) {
        if (upper_ > limits::prime_cutoff_max)
            throw capacity_error("PrimeStream: upper bound too large");
        base_ = simple_prime_sieve(isqrt(upper_));
        segment_lo_ = lower_ + 1;
    }

    void fill_segment() {
        buffer_.clear();
        pos_ = 0;
        u64 lo = segment_lo_;
        u64 hi = std::min(upper_, lo + segment_size_ - 1);
        segment_lo_ = hi + 1;
        if (lo > hi) return;

        std::vector<char> mark(hi - lo + 1, 1);
        if (lo == 0) mark[0] = 0;
        if (lo <= 1 && hi >= 1) mark[1 - lo] = 0;
        for (u64 p : base_) {
            u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (u64 j = start; j <= hi; j += p) mark[j - lo] = 0;
        }
        for (u64 v = lo; v <= hi; ++v) {
            if (!mark[v - lo]) continue;
            if (filter_ && v % filter_->first != filter_->second) continue;
            buffer_.push_back(v);
        }
    }

    static constexpr u64 segment_size_ = 1 << 20;
    u64 lower_, upper_;
    std::optional<std::pair<u64, u64>> filter_;
    std::vector<u64> base_;
    std::vector<u64> buffer_;
    std::size_t pos_ = 0;
    u64 segment_lo_ = 0;
};

inline std::vector<u64> primes_in_range(u64 lower, u64 upper) {
    return PrimeStream(lower, upper).collect();
}

} // namespace symvar
