#pragma once

// Special functions: complex log-gamma (Lanczos), Riemann/Hurwitz zeta via
// Euler-Maclaurin, the Dirichlet beta function, and the Dedekind zeta of
// Q(i) in both its product form zeta(s) L(s, chi_{-4}) and a direct
// ideal-count series used as an independent cross-check.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gaussian.hpp"

namespace hecke {

using cplx = std::complex<double>;

// Lanczos g=7, n=9; valid for Re(z) > 0
inline cplx lgamma_complex(cplx z) {
    static const double c[9] = {
        0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,  12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() <= 0.0) throw std::domain_error("lgamma_complex: Re(z) must be positive");
    z -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.91893853320467274178 + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Euler-Maclaurin Hurwitz zeta, real s != 1, a > 0; covers the continuation
// left of s = 1 for moderate |s|
inline double hurwitz_zeta(double s, double a) {
    if (s == 1.0) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    // B_{2k}/(2k)! for k = 1..8
    static const double coef[8] = {
        8.3333333333333333e-02, -1.3888888888888889e-03, 3.3068783068783069e-05,
        -8.2671957671957672e-07, 2.0876756987868099e-08, -5.2841901386874932e-10,
        1.3382536530684679e-11, -3.3896802963225829e-13};
    const int N = 28;
    double sum = 0.0;
    for (int n = 0; n < N; ++n) sum += std::pow(n + a, -s);
    const double Na = N + a;
    sum += std::pow(Na, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(Na, -s);
    double rising = s;  // s(s+1)...(s+2k-2), updated per k
    double npow = std::pow(Na, -s - 1.0);
    for (int k = 1; k <= 8; ++k) {
        sum += coef[k - 1] * rising * npow;
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        npow /= (Na * Na);
    }
    return sum;
}

inline double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

// zeta(s,a1) - zeta(s,a2) with the simple poles cancelled, so the difference
// stays finite through s = 1
inline double hurwitz_zeta_diff(double s, double a1, double a2) {
    static const double coef[8] = {
        8.3333333333333333e-02, -1.3888888888888889e-03, 3.3068783068783069e-05,
        -8.2671957671957672e-07, 2.0876756987868099e-08, -5.2841901386874932e-10,
        1.3382536530684679e-11, -3.3896802963225829e-13};
    const int N = 28;
    double sum = 0.0;
    for (int n = 0; n < N; ++n) sum += std::pow(n + a1, -s) - std::pow(n + a2, -s);
    const double N1 = N + a1, N2 = N + a2;
    const double L1 = std::log(N1), L2 = std::log(N2);
    // (N1^{1-s} - N2^{1-s})/(s-1), stable through the removable point s = 1
    double pole_pair;
    if (s == 1.0) {
        pole_pair = L2 - L1;
    } else {
        pole_pair = std::exp((1.0 - s) * L2) * std::expm1((1.0 - s) * (L1 - L2)) / (s - 1.0);
    }
    sum += pole_pair;
    sum += 0.5 * (std::pow(N1, -s) - std::pow(N2, -s));
    double rising = s;
    double p1 = std::pow(N1, -s - 1.0), p2 = std::pow(N2, -s - 1.0);
    for (int k = 1; k <= 8; ++k) {
        sum += coef[k - 1] * rising * (p1 - p2);
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        p1 /= (N1 * N1);
        p2 /= (N2 * N2);
    }
    return sum;
}

// Dirichlet beta = L(s, chi_{-4}); entire in s
inline double dirichlet_beta(double s) {
    return std::pow(4.0, -s) * hurwitz_zeta_diff(s, 0.25, 0.75);
}

// Dedekind zeta of Q(i): product form zeta(s) L(s, chi_{-4}).  The guarded
// overload is the s > 1 evaluation path; zeta_K_continued carries the same
// product into the continuation (both factors continue) for the checks
// around s = 1 and s = 0.
inline double zeta_K_continued(double s) {
    return riemann_zeta(s) * dirichlet_beta(s);
}

inline double zeta_K(double s) {
    if (s <= 1.0) throw std::domain_error("zeta_K: series/product path needs s > 1");
    return zeta_K_continued(s);
}

inline constexpr double kZetaKResidue = 0.78539816339744830962;  // pi/4
inline constexpr double kZetaKAtZero = -0.25;

// Direct ideal-count Dirichlet series: a(n) = #ideals of norm n =
// sum_{d | n} chi_{-4}(d), summed to `limit` with the mean-density tail
// (pi/4) limit^{1-s}/(s-1).  Fluctuation error is O(limit^{1/2-s}).
inline double zeta_K_ideal_series(double s, u64 limit = 4000000) {
    if (s <= 1.0) throw std::domain_error("zeta_K_ideal_series: s > 1 required");
    std::vector<float> a(limit + 1, 0.0f);
    for (u64 d = 1; d <= limit; d += 2) {
        float v = (d % 4 == 1) ? 1.0f : -1.0f;
        for (u64 n = d; n <= limit; n += d) a[n] += v;
    }
    double sum = 0.0;
    for (u64 n = limit; n >= 1; --n) {
        if (a[n] != 0.0f) sum += double(a[n]) * std::pow(double(n), -s);
    }
    sum += kZetaKResidue * std::pow(double(limit), 1.0 - s) / (s - 1.0);
    return sum;
}

}  // namespace hecke
