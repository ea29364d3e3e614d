#pragma once

// Independent oracles for the closed forms elsewhere in the library. Each one
// follows the defining integral/count directly and shares no code with the
// implementation it is checked against.

#include <cmath>
#include <vector>

#include "symvar/gaussian_ideals.hpp"
#include "symvar/numeric.hpp"

namespace symvar {

namespace oracle {

// Iterated quadrature of the defining integral of I_{m,n}(Y): substituting
// u_i = log x_i turns it into the simplex integral of (L - sum u)^m, which is
// n nested 1-D integrals, evaluated level by level on a fixed grid
// (cumulative trapezoid; integrands are smooth polynomials).
inline double lemma_I_integral(unsigned m, unsigned n, double Y, unsigned grid = 8192) {
    const double L = std::log(Y);
    const double h = L / grid;
    // T_0(t) = t^m; T_j(t) = int_0^t T_{j-1}(v) dv; result is T_n(L)
    std::vector<double> cur(grid + 1), next(grid + 1);
    for (unsigned i = 0; i <= grid; ++i) cur[i] = std::pow(i * h, static_cast<double>(m));
    for (unsigned level = 0; level < n; ++level) {
        next[0] = 0.0;
        for (unsigned i = 1; i <= grid; ++i)
            next[i] = next[i - 1] + 0.5 * h * (cur[i - 1] + cur[i]);
        cur.swap(next);
    }
    return cur[grid];
}

// Iterated quadrature of J_n(Y) = vol{x_i >= 1, prod x_i <= Y}. In log
// coordinates W_j(L) = e^L int_0^L W_{j-1}(v) e^{-v} dv, W_0 = 1.
inline double lemma_J_integral(unsigned n, double Y, unsigned grid = 8192) {
    const double L = std::log(Y);
    const double h = L / grid;
    std::vector<double> w(grid + 1, 1.0), c(grid + 1);
    for (unsigned level = 0; level < n; ++level) {
        c[0] = 0.0;
        for (unsigned i = 1; i <= grid; ++i) {
            double f0 = w[i - 1] * std::exp(-static_cast<double>(i - 1) * h);
            double f1 = w[i] * std::exp(-static_cast<double>(i) * h);
            c[i] = c[i - 1] + 0.5 * h * (f0 + f1);
        }
        for (unsigned i = 0; i <= grid; ++i) w[i] = std::exp(i * h) * c[i];
    }
    return w[grid];
}

// theta-domain integration of the Rudnick-Waxman variance: the integrand
// (N(theta) - mean)^2 is a step function, so the uniform cell partition is
// refined by every window endpoint and each piece integrated exactly from a
// midpoint membership count.
inline double rw_variance_quadrature(unsigned l, double K, u64 x, unsigned cells) {
    auto ideals = enumerate_ideals(x);
    IdealDivisor ev(x);
    std::vector<double> theta;
    std::vector<u64> ds;
    u128 dsum = 0;
    for (const auto& g : ideals) {
        theta.push_back(g.theta());
        u64 d = ev(g, l);
        ds.push_back(d);
        dsum += d;
    }
    const double half = M_PI / (4 * K);
    const double span = M_PI / 2;
    // (2/pi) * window length * sum d; the usual (1/K) sum d once the window fits
    const double mean =
        (2.0 / M_PI) * std::min(2 * half, span) * static_cast<double>(dsum);

    std::vector<double> cuts;
    cuts.reserve(2 * theta.size() + cells + 1);
    for (double t : theta) {
        double a = std::fmod(t - half + span, span);
        double b = std::fmod(t + half, span);
        cuts.push_back(a < 0 ? a + span : a);
        cuts.push_back(b < 0 ? b + span : b);
    }
    for (unsigned i = 0; i <= cells; ++i) cuts.push_back(span * i / cells);
    std::sort(cuts.begin(), cuts.end());

    double acc = 0.0;
    double prev = 0.0;
    auto piece = [&](double a, double b) {
        if (b <= a) return;
        double mid = 0.5 * (a + b);
        double nmid = 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i)
            if (circular_angle_distance(theta[i], mid) <= half)
                nmid += static_cast<double>(ds[i]);
        acc += (b - a) * (nmid - mean) * (nmid - mean);
    };
    for (double cspot : cuts) {
        piece(prev, std::min(cspot, span));
        prev = cspot;
    }
    piece(prev, span);
    return (2.0 / M_PI) * acc;
}

// quarter count of nonzero lattice points in the disk of radius sqrt(x):
// the brute-force ideal count sum_{n <= x} r(n)/4
inline u64 gauss_circle_quarter_count(u64 x) {
    i64 r = static_cast<i64>(isqrt(x));
    u64 count = 0;
    for (i64 a = -r; a <= r; ++a)
        for (i64 b = -r; b <= r; ++b) {
            if (a == 0 && b == 0) continue;
            if (static_cast<u64>(a * a + b * b) <= x) ++count;
        }
    return count / 4;
}

} // namespace oracle

} // namespace symvar
