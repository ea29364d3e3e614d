#pragma once

// High-precision arithmetic constants: the Euler products over local factors
// at the central point, the Landau-Ramanujan constant, and the assembled
// constants a_T(k), a_S(k), a_N(l).
//
// Truncation bookkeeping: every absolutely convergent local factor here is
// 1 + O(1/p^2), so |log prod_{p > P} f_p| <= C sum_{p > P} p^{-2} < C/(P-1).
// C is fitted from sample primes with a 1.5x margin (heuristic-rigorous, not
// a certified enclosure). Reported per constant:
//   log_tail_bound = C/(P-1),  tail_bound = value * (e^{log_tail_bound} - 1).

#include <cmath>
#include <string>
#include <vector>

#include "symvar/core_arith.hpp"
#include "symvar/errors.hpp"
#include "symvar/numeric.hpp"
#include "symvar/parallel.hpp"

namespace symvar {

enum class LocalFactorKind { T, S, N1mod4, N3mod4, N2adic, LandauRamanujan };

inline const char* to_string(LocalFactorKind k) {
    switch (k) {
        case LocalFactorKind::T: return "T";
        case LocalFactorKind::S: return "S";
        case LocalFactorKind::N1mod4: return "N1mod4";
        case LocalFactorKind::N3mod4: return "N3mod4";
        case LocalFactorKind::N2adic: return "N2adic";
        case LocalFactorKind::LandauRamanujan: return "LandauRamanujan";
    }
    return "?";
}

namespace detail {

// (1+u)^{-2k} + (1-u)^{-2k} at u = p^{-1/2}
inline real_hp symmetric_sqrt_term(unsigned k, const real_hp& p) {
    real_hp u = 1 / sqrt(p);
    return pow(1 + u, -2 * static_cast<int>(k)) + pow(1 - u, -2 * static_cast<int>(k));
}

// sum_{n>=0} C(n+2l-1, 2l-1)^2 p^{-n}, summed to relative 1e-62 with a
// geometric remainder check (term ratio ((n+2l)/(n+1))^2 / p < 1/2 at exit).
inline real_hp hypergeometric_sum_1mod4(unsigned l, const real_hp& p) {
    const real_hp eps("1e-62");
    real_hp term = 1, acc = 0, b = 1; // b = C(n+2l-1, 2l-1)
    for (u64 n = 0;; ++n) {
        acc += term;
        real_hp ratio_num(n + 2 * static_cast<u64>(l));
        real_hp ratio_den(n + 1);
        b = b * ratio_num / ratio_den;
        term = b * b / pow(p, static_cast<int>(n + 1));
        real_hp r = (ratio_num * ratio_num) / (ratio_den * ratio_den * p);
        if (r < real_hp(0.5) && term < eps * acc) {
            acc += term / (1 - r); // cap the tail by its geometric bound
            break;
        }
        if (n > 100000) throw accuracy_error("hypergeometric_sum_1mod4: no convergence");
    }
    return acc;
}

} // namespace detail

inline real_hp local_factor(LocalFactorKind kind, unsigned kl, u64 p) {
    if (kl < 1) throw validation_error("local_factor: fold count >= 1 required");
    const real_hp rp(p);
    const int a = 2 * static_cast<int>(kl) * static_cast<int>(kl) + static_cast<int>(kl);
    switch (kind) {
        case LocalFactorKind::T: {
            real_hp s = detail::symmetric_sqrt_term(kl, rp);
            return pow(1 - 1 / rp, a) * (1 / (rp + 1)) * (1 + rp / 2 * s);
        }
        case LocalFactorKind::S:
            return pow(1 - 1 / rp, a) * detail::symmetric_sqrt_term(kl, rp) / 2;
        case LocalFactorKind::N1mod4:
            if (p % 4 != 1)
                throw validation_error("local_factor: N1mod4 requires p == 1 (mod 4)");
            return pow(1 - 1 / rp, 4 * static_cast<int>(kl) * static_cast<int>(kl)) *
                   detail::hypergeometric_sum_1mod4(kl, rp);
        case LocalFactorKind::N3mod4:
            if (p % 4 != 3)
                throw validation_error("local_factor: N3mod4 requires p == 3 (mod 4)");
            return pow(1 - 1 / rp, a - 2 * static_cast<int>(kl));
        case LocalFactorKind::N2adic: {
            if (p != 2) throw validation_error("local_factor: N2adic requires p = 2");
            real_hp s2 = sqrt(real_hp(2));
            return (pow(2 + s2, 2 * static_cast<int>(kl)) + pow(2 - s2, 2 * static_cast<int>(kl))) /
                   pow(real_hp(2), a + 1);
        }
        case LocalFactorKind::LandauRamanujan:
            if (p % 4 != 3)
                throw validation_error("local_factor: LandauRamanujan requires p == 3 (mod 4)");
            return 1 / sqrt(1 - 1 / (rp * rp));
    }
    throw validation_error("local_factor: unknown kind");
}

struct ConstantResult {
    std::string name;
    unsigned k_or_l = 0;
    real_hp value;
    u64 prime_cutoff = 0;
    double tail_bound = 0.0;     // absolute bound on |limit - value|
    double log_tail_bound = 0.0; // bound on |log(limit / value)|
};

namespace detail {

inline u64 next_prime_at_least(u64 n) {
    for (u64 v = std::max<u64>(n, 2);; ++v) {
        bool prime = v >= 2;
        for (u64 d = 2; d * d <= v; ++d)
            if (v % d == 0) {
                prime = false;
                break;
            }
        if (prime) return v;
    }
}

inline u64 next_prime_in_class(u64 n, u64 mod, u64 res) {
    for (u64 v = std::max<u64>(n, 2);; v = next_prime_at_least(v + 1)) {
        v = next_prime_at_least(v);
        if (v % mod == res) return v;
    }
}

// fitted C with 1.5x margin: max over spread-out sample primes of p^2 |log f_p|
template <class FactorF>
double fit_tail_constant(FactorF f, u64 mod, u64 res) {
    static constexpr u64 anchors[] = {1000, 2000, 5000, 10000, 20000, 50000, 100000};
    double c = 0.0;
    for (u64 a : anchors) {
        u64 p = mod == 0 ? next_prime_at_least(a) : next_prime_in_class(a, mod, res);
        double lf = static_cast<double>(log(f(p)));
        c = std::max(c, static_cast<double>(p) * static_cast<double>(p) * std::abs(lf));
    }
    return 1.5 * std::max(c, 1e-12);
}

// Deterministic product over a prime list: fixed 4096-prime blocks, block
// products multiplied in index order regardless of thread count.
template <class FactorF>
real_hp prime_product(const std::vector<u64>& primes, FactorF f) {
    return blocked_reduce(
        0, primes.size(), 4096, real_hp(1),
        [&](u64 lo, u64 hi) {
            real_hp prod = 1;
            for (u64 i = lo; i < hi; ++i) prod *= f(primes[i]);
            return prod;
        },
        [](real_hp a, real_hp b) { return a * b; });
}

inline void attach_tail(ConstantResult& r, double fitted_c, u64 cutoff) {
    double L = fitted_c / static_cast<double>(std::max<u64>(cutoff, 2) - 1);
    r.log_tail_bound = L;
    r.tail_bound = static_cast<double>(r.value) * std::expm1(L);
}

} // namespace detail

// b = (1/sqrt 2) prod_{p == 3 (4), p <= cutoff} (1 - 1/p^2)^{-1/2}
inline ConstantResult landau_ramanujan(u64 prime_cutoff) {
    if (prime_cutoff > limits::prime_cutoff_max)
        throw capacity_error("landau_ramanujan: cutoff too large");
    ConstantResult r;
    r.name = "landau_ramanujan";
    r.k_or_l = 0;
    r.prime_cutoff = prime_cutoff;
    auto primes = prime_cutoff >= 3 ? PrimeStream(2, prime_cutoff, 4, 3).collect()
                                    : std::vector<u64>{};
    auto f = [](u64 p) { return local_factor(LocalFactorKind::LandauRamanujan, 1, p); };
    r.value = detail::prime_product(primes, f) / sqrt(real_hp(2));
    detail::attach_tail(r, detail::fit_tail_constant(f, 4, 3), prime_cutoff);
    return r;
}

inline ConstantResult a_T(unsigned k, u64 prime_cutoff) {
    if (k < 1) throw validation_error("a_T: k >= 1 required");
    if (prime_cutoff > limits::prime_cutoff_max) throw capacity_error("a_T: cutoff too large");
    ConstantResult r;
    r.name = "a_T";
    r.k_or_l = k;
    r.prime_cutoff = prime_cutoff;
    auto primes = prime_cutoff >= 2 ? primes_in_range(1, prime_cutoff) : std::vector<u64>{};
    auto f = [k](u64 p) { return local_factor(LocalFactorKind::T, k, p); };
    r.value = 2 * detail::prime_product(primes, f);
    detail::attach_tail(r, detail::fit_tail_constant(f, 0, 0), prime_cutoff);
    return r;
}

inline ConstantResult a_S(unsigned k, u64 prime_cutoff) {
    if (k < 1) throw validation_error("a_S: k >= 1 required");
    if (prime_cutoff > limits::prime_cutoff_max) throw capacity_error("a_S: cutoff too large");
    ConstantResult r;
    r.name = "a_S";
    r.k_or_l = k;
    r.prime_cutoff = prime_cutoff;
    auto primes = prime_cutoff >= 2 ? primes_in_range(1, prime_cutoff) : std::vector<u64>{};
    auto f = [k](u64 p) { return local_factor(LocalFactorKind::S, k, p); };
    r.value = 2 * detail::prime_product(primes, f);
    detail::attach_tail(r, detail::fit_tail_constant(f, 0, 0), prime_cutoff);
    return r;
}

// a_N(l) = 2 (pi/(8b^2))^{l(2l-1)} * [2-adic factor] * prod_{p == 1 (4)} [...]
// b is evaluated at the same cutoff; its truncation enters the combined tail
// bound with weight 2l(2l-1) through the (pi/(8b^2))^{l(2l-1)} prefactor.
inline ConstantResult a_N(unsigned l, u64 prime_cutoff) {
    if (l < 1) throw validation_error("a_N: l >= 1 required");
    if (prime_cutoff > limits::prime_cutoff_max) throw capacity_error("a_N: cutoff too large");
    ConstantResult b = landau_ramanujan(prime_cutoff);
    const int e = static_cast<int>(l) * (2 * static_cast<int>(l) - 1);

    ConstantResult r;
    r.name = "a_N";
    r.k_or_l = l;
    r.prime_cutoff = prime_cutoff;
    auto primes = prime_cutoff >= 5 ? PrimeStream(2, prime_cutoff, 4, 1).collect()
                                    : std::vector<u64>{};
    auto f = [l](u64 p) { return local_factor(LocalFactorKind::N1mod4, l, p); };
    real_hp pref = 2 * pow(pi_hp() / (8 * b.value * b.value), e) *
                   local_factor(LocalFactorKind::N2adic, l, 2);
    r.value = pref * detail::prime_product(primes, f);

    double c1 = detail::fit_tail_constant(f, 4, 1);
    double L = c1 / static_cast<double>(std::max<u64>(prime_cutoff, 2) - 1) +
               2.0 * e * b.log_tail_bound;
    r.log_tail_bound = L;
    r.tail_bound = static_cast<double>(r.value) * std::expm1(L);
    return r;
}

// Same constant assembled from the unsimplified per-class local factors:
//   [2-adic] * prod_{p==3(4)} (1-1/p)^{2l^2-l} * prod_{p==1(4)} (1-1/p)^{2l^2+l} S(p),
// whose two-class product converges only conditionally. Its truncation tail is
// completed through L(1, chi_{-4}) = pi/4 -- precisely the identity that folds
// the 3 (mod 4) class into pi/(8b^2) -- so the two assemblies must coincide.
inline ConstantResult a_N_section6(unsigned l, u64 prime_cutoff) {
    if (l < 1) throw validation_error("a_N_section6: l >= 1 required");
    if (prime_cutoff > limits::prime_cutoff_max)
        throw capacity_error("a_N_section6: cutoff too large");
    const int e = static_cast<int>(l) * (2 * static_cast<int>(l) - 1);
    const int a = 2 * static_cast<int>(l) * static_cast<int>(l) + static_cast<int>(l);

    auto p3 = prime_cutoff >= 3 ? PrimeStream(2, prime_cutoff, 4, 3).collect()
                                : std::vector<u64>{};
    auto p1 = prime_cutoff >= 5 ? PrimeStream(2, prime_cutoff, 4, 1).collect()
                                : std::vector<u64>{};

    real_hp prod3 = detail::prime_product(p3, [l](u64 p) {
        return local_factor(LocalFactorKind::N3mod4, l, p);
    });
    real_hp prod1 = detail::prime_product(p1, [a, l](u64 p) {
        real_hp rp(p);
        return pow(1 - 1 / rp, a) * detail::hypergeometric_sum_1mod4(l, rp);
    });

    // finite part of the conditionally convergent class balance, and its
    // pi/4-regularized completion
    real_hp lambda_partial = detail::prime_product(p3, [](u64 p) {
                                 return 1 - 1 / real_hp(p);
                             }) /
                             detail::prime_product(p1, [](u64 p) {
                                 return 1 - 1 / real_hp(p);
                             });
    real_hp lambda_reg = (pi_hp() / 4) * detail::prime_product(p3, [](u64 p) {
                             real_hp rp(p);
                             return 1 - 1 / (rp * rp);
                         });

    ConstantResult r;
    r.name = "a_N_section6";
    r.k_or_l = l;
    r.prime_cutoff = prime_cutoff;
    r.value = 2 * local_factor(LocalFactorKind::N2adic, l, 2) * prod3 * prod1 *
              pow(lambda_reg / lambda_partial, e);

    auto f = [l](u64 p) { return local_factor(LocalFactorKind::N1mod4, l, p); };
    double c1 = detail::fit_tail_constant(f, 4, 1);
    double L = (c1 + 1.02 * e) / static_cast<double>(std::max<u64>(prime_cutoff, 2) - 1);
    r.log_tail_bound = L;
    r.tail_bound = static_cast<double>(r.value) * std::expm1(L);
    return r;
}

} // namespace symvar
