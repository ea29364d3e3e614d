#pragma once

// Ideals of Z[i]: enumeration with canonical first-quadrant generators,
// the ideal divisor function d_l, and the Rudnick-Waxman sector variance
// in exact pairwise-overlap form and in diagonal form.
//
// Canonical generator a + bi, a > 0, b >= 0: picks exactly one associate
// among {g, ig, -g, -ig}, axis cases included. The angle theta = atan2(b, a)
// represents theta mod pi/2. Equality of angles (a/b rational ratio) is
// always decided on integer primitive parts, never on floats.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "symvar/core_arith.hpp"
#include "symvar/errors.hpp"
#include "symvar/numeric.hpp"
#include "symvar/rmt_moments.hpp"

namespace symvar {

struct GaussianIdeal {
    i64 gen_a = 1;
    i64 gen_b = 0;
    u64 norm = 1;

    double theta() const { return std::atan2(static_cast<double>(gen_b), static_cast<double>(gen_a)); }
};

// all nonzero ideals of norm <= x, sorted by angle (exact slope comparison)
inline std::vector<GaussianIdeal> enumerate_ideals(u64 x) {
    if (x < 1) throw validation_error("enumerate_ideals: x >= 1 required");
    if (x > limits::ideal_norm_max) throw capacity_error("enumerate_ideals: x too large");
    std::vector<GaussianIdeal> out;
    for (i64 a = 1; static_cast<u64>(a) * a <= x; ++a) {
        for (i64 b = 0; static_cast<u64>(a) * a + static_cast<u64>(b) * b <= x; ++b)
            out.push_back({a, b, static_cast<u64>(a) * a + static_cast<u64>(b) * b});
    }
    std::sort(out.begin(), out.end(), [](const GaussianIdeal& u, const GaussianIdeal& v) {
        u64 lhs = static_cast<u64>(u.gen_b) * static_cast<u64>(v.gen_a);
        u64 rhs = static_cast<u64>(v.gen_b) * static_cast<u64>(u.gen_a);
        if (lhs != rhs) return lhs < rhs;
        return u.norm < v.norm;
    });
    return out;
}

namespace detail {

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

struct Gaussian {
    i128 re, im;
};

inline Gaussian gaussian_sub_mul(const Gaussian& a, const Gaussian& q, const Gaussian& b) {
    // a - q*b
    return {a.re - (q.re * b.re - q.im * b.im), a.im - (q.re * b.im + q.im * b.re)};
}

inline i128 rounded_div(i128 num, i128 den) {
    // nearest integer to num/den, den > 0
    if (num >= 0) return (num + den / 2) / den;
    return -((-num + den / 2) / den);
}

inline Gaussian gaussian_gcd(Gaussian a, Gaussian b) {
    while (b.re != 0 || b.im != 0) {
        i128 nb = b.re * b.re + b.im * b.im;
        i128 xr = a.re * b.re + a.im * b.im;  // Re(a * conj b)
        i128 xi = a.im * b.re - a.re * b.im;  // Im(a * conj b)
        Gaussian q{rounded_div(xr, nb), rounded_div(xi, nb)};
        Gaussian r = gaussian_sub_mul(a, q, b);
        a = b;
        b = r;
    }
    return a;
}

// a fixed Gaussian prime above p == 1 (mod 4): gcd(p, z + i) with z^2 == -1 (p)
inline std::pair<i64, i64> gaussian_prime_above(u64 p) {
    u64 g = 2;
    while (kronecker(static_cast<i64>(g), static_cast<i64>(p)) != -1) ++g;
    u64 z = powmod_u64(g, (p - 1) / 4, p);
    if (mulmod_u64(z, z, p) != p - 1)
        throw accuracy_error("gaussian_prime_above: sqrt(-1) search failed");
    Gaussian d = gaussian_gcd({static_cast<i128>(p), 0}, {static_cast<i128>(z), 1});
    i64 c = static_cast<i64>(d.re), s = static_cast<i64>(d.im);
    if (static_cast<u64>(c) * c + static_cast<u64>(s) * s != p)
        throw accuracy_error("gaussian_prime_above: gcd has wrong norm");
    return {c, s};
}

inline u64 small_binomial(u64 n, u64 r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    u128 acc = 1;
    for (u64 j = 1; j <= r; ++j) {
        acc = acc * (n - r + j) / j;
    }
    return static_cast<u64>(acc);
}

} // namespace detail

// Batch evaluator: factors norms through a smallest-prime-factor table and
// resolves split primes by exact division of the generator by a cached
// Gaussian prime above p.
class IdealDivisor {
public:
    explicit IdealDivisor(u64 x) : spf_(x) {}

    u64 operator()(const GaussianIdeal& g, unsigned l) {
        if (l < 1) throw validation_error("ideal_divisor: l >= 1 required");
        u64 result = 1;
        i64 a = g.gen_a, b = g.gen_b;
        spf_.for_each_prime_power(g.norm, [&](u64 p, unsigned e) {
            if (p == 2) {
                result *= detail::small_binomial(e + l - 1, l - 1);
            } else if (p % 4 == 3) {
                result *= detail::small_binomial(e / 2 + l - 1, l - 1);
            } else {
                auto [c, d] = prime_above(p);
                unsigned v1 = 0;
                i64 aa = a, bb = b;
                for (;;) {
                    // (aa + bb i) / (c + d i) = ((aa c + bb d) + (bb c - aa d) i) / p
                    i128 xr = static_cast<i128>(aa) * c + static_cast<i128>(bb) * d;
                    i128 xi = static_cast<i128>(bb) * c - static_cast<i128>(aa) * d;
                    if (xr % static_cast<i128>(p) != 0 || xi % static_cast<i128>(p) != 0) break;
                    aa = static_cast<i64>(xr / static_cast<i128>(p));
                    bb = static_cast<i64>(xi / static_cast<i128>(p));
                    ++v1;
                }
                result *= detail::small_binomial(v1 + l - 1, l - 1) *
                          detail::small_binomial(e - v1 + l - 1, l - 1);
            }
        });
        return result;
    }

    std::vector<u64> all(const std::vector<GaussianIdeal>& ideals, unsigned l) {
        std::vector<u64> ds(ideals.size());
        for (std::size_t i = 0; i < ideals.size(); ++i) ds[i] = (*this)(ideals[i], l);
        return ds;
    }

private:
    std::pair<i64, i64> prime_above(u64 p) {
        auto it = split_cache_.find(p);
        if (it != split_cache_.end()) return it->second;
        auto pr = detail::gaussian_prime_above(p);
        split_cache_.emplace(p, pr);
        return pr;
    }

    SpfTable spf_;
    std::unordered_map<u64, std::pair<i64, i64>> split_cache_;
};

inline u64 ideal_divisor(const GaussianIdeal& g, unsigned l) {
    IdealDivisor ev(g.norm);
    return ev(g, l);
}

// circular distance on R/(pi/2)
inline double circular_angle_distance(double t1, double t2) {
    double d = std::abs(t1 - t2);
    double half = M_PI / 2;
    d = std::fmod(d, half);
    return std::min(d, half - d);
}

// the closed arc [center - pi/(4K), center + pi/(4K)] on R/(pi/2)
struct AngleWindow {
    double center = 0.0;
    double K = 1.0;

    double half_width() const { return M_PI / (4 * K); }
    bool contains(double theta) const {
        return circular_angle_distance(theta, center) <= half_width();
    }
};

// N^S(theta): total d_l over ideals whose angle lies in the window around
// theta, with wraparound on R/(pi/2)
inline u64 nsum(double theta, double K, u64 x, unsigned l,
                const std::vector<GaussianIdeal>& ideals) {
    if (!(K > 0)) throw validation_error("nsum: K > 0 required");
    IdealDivisor ev(x);
    const AngleWindow window{theta, K};
    u64 total = 0;
    for (const auto& g : ideals)
        if (window.contains(g.theta())) total += ev(g, l);
    return total;
}

namespace detail {

struct IdealData {
    std::vector<double> theta;
    std::vector<u64> d;
    u128 dsum = 0;
};

inline IdealData ideal_data(unsigned l, u64 x) {
    auto ideals = enumerate_ideals(x);
    IdealDivisor ev(x);
    IdealData data;
    data.theta.reserve(ideals.size());
    data.d.reserve(ideals.size());
    for (const auto& g : ideals) {
        data.theta.push_back(g.theta());
        u64 dv = ev(g, l);
        data.d.push_back(dv);
        data.dsum += dv;
    }
    return data;
}

} // namespace detail

// Intersection measure of two window arcs of length w centered delta apart on
// the circle of circumference span: for w <= span the arcs can meet at both
// ends, for w > span each covers everything.
inline double window_overlap(double w, double delta, double span) {
    if (w >= span) return span;
    return std::max(0.0, w - delta) + std::max(0.0, w - (span - delta));
}

// Var = (2/pi) sum_{a,b} d(a) d(b) overlap(theta_a, theta_b) - <N>^2, the
// closed form of the defining theta-integral. Angle-sorted sweep when the
// window is below a quarter turn (no second-end overlaps there), direct pair
// scan otherwise.
inline double variance_exact(unsigned l, double K, u64 x) {
    if (!(K > 0)) throw validation_error("variance_exact: K > 0 required");
    auto data = detail::ideal_data(l, x);
    const std::size_t n = data.d.size();
    const double span = M_PI / 2;
    const double w = std::min(M_PI / (2 * K), span);
    // <N> = (2/pi) * w * sum d; equals (1/K) sum d whenever the window fits
    const double mean = (2.0 / M_PI) * w * static_cast<double>(data.dsum);

    double overlap_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        overlap_sum += w * static_cast<double>(data.d[i]) * static_cast<double>(data.d[i]);

    if (w < span / 2) {
        // duplicate one turn for wraparound; pairs counted once, doubled
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < i + n; ++j) {
                double tj = j < n ? data.theta[j] : data.theta[j - n] + span;
                double delta = tj - data.theta[i];
                if (delta >= w) break;
                overlap_sum += 2.0 * static_cast<double>(data.d[i]) *
                               static_cast<double>(data.d[j < n ? j : j - n]) * (w - delta);
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double delta = circular_angle_distance(data.theta[i], data.theta[j]);
                overlap_sum += 2.0 * static_cast<double>(data.d[i]) *
                               static_cast<double>(data.d[j]) *
                               window_overlap(w, delta, span);
            }
    }
    return (2.0 / M_PI) * overlap_sum - mean * mean;
}

// (1/K) sum over pairs with a/b rational of d(a) d(b) - (1/K^2) (sum d)^2.
// The rational-ratio predicate is exact: equal primitive parts of the
// canonical generators, grouped in integers.
inline double variance_diagonal(unsigned l, double K, u64 x) {
    if (!(K > 0)) throw validation_error("variance_diagonal: K > 0 required");
    auto ideals = enumerate_ideals(x);
    IdealDivisor ev(x);
    std::unordered_map<u64, u64> group_sum;
    u128 dsum = 0;
    for (const auto& g : ideals) {
        u64 dv = ev(g, l);
        dsum += dv;
        u64 gc = std::gcd(static_cast<u64>(g.gen_a), static_cast<u64>(g.gen_b));
        u64 key = (static_cast<u64>(g.gen_a) / gc) << 32 | (static_cast<u64>(g.gen_b) / gc);
        group_sum[key] += dv;
    }
    u128 diag = 0;
    for (const auto& [key, s] : group_sum) diag += u128(s) * s;
    double total = static_cast<double>(dsum);
    return static_cast<double>(diag) / K - (total / K) * (total / K);
}

// smallest positive circular gap between distinct ideal directions
inline double min_positive_angle_gap(const std::vector<GaussianIdeal>& ideals) {
    std::vector<double> dirs;
    dirs.reserve(ideals.size());
    for (const auto& g : ideals) {
        // one representative per direction: the primitive generator
        if (std::gcd(static_cast<u64>(g.gen_a), static_cast<u64>(g.gen_b)) == 1)
            dirs.push_back(g.theta());
    }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    if (dirs.size() < 2) return M_PI / 2;
    double best = dirs.front() + M_PI / 2 - dirs.back();
    for (std::size_t i = 1; i < dirs.size(); ++i)
        best = std::min(best, dirs[i] - dirs[i - 1]);
    return best;
}

// Var ~ a_N(l) (x/K) gamma(log x / (2 log K)) (2 log K)^{2l^2+l-2}
inline double predicted_variance_N(unsigned l, double K, double x, double a_value) {
    if (!(K > 1) || !(x > 1)) throw validation_error("predicted_variance_N: K > 1, x > 1 required");
    double c = std::log(x) / (2 * std::log(K));
    if (c > 0.5 + 1e-12)
        throw validation_error("predicted_variance_N: c = log x / (2 log K) exceeds 1/2");
    c = std::min(c, 0.5);
    return a_value * (x / K) * gamma_value(l, c) *
           std::pow(2 * std::log(K), static_cast<double>(moment_degree(l)));
}

} // namespace symvar
