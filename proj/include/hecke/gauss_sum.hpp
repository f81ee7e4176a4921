#pragma once

// Quadratic Gauss sums g(r,n) = sum_{x mod n} (x/n) e~(rx/n) with
// e~(z) = exp(2 pi i Im z).
//
// Two routes: a literal sum over a complete residue system (capped modulus),
// and the closed-form evaluation from the prime-power table
//
//   g(k, pi^l) = 0                                    l <= h odd
//              = phi(pi^l)                            l <= h even
//              = -N(pi)^{l-1}                         l = h+1 even
//              = (i k pi^{-h} / pi) N(pi)^{l-1/2}     l = h+1 odd
//              = 0                                    l >= h+2
//
// where pi^h || k (h = infinity for k = 0), extended multiplicatively over
// coprime primary moduli.

#include <complex>
#include <vector>

#include "factor.hpp"
#include "quad.hpp"
#include "symbols.hpp"

namespace hecke {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// e~(z) = exp(2 pi i Im z); the definition exp(2 pi i (z/(2i) - conj(z)/(2i)))
// collapses to this since (z - conj z)/(2i) = Im z
inline cplx e_tilde(cplx z) {
    double y = z.imag();
    return {std::cos(kTwoPi * y), std::sin(kTwoPi * y)};
}

// complete residue system mod n: lattice points of the fundamental
// parallelogram {alpha n + beta i n : 0 <= alpha, beta < 1}
inline std::vector<GaussInt> residue_system(const GaussInt& n, u64 cap = 10000) {
    if (n.is_zero()) throw std::domain_error("residue_system: zero modulus");
    i128 nn = norm(n);
    if (nn > i128(cap)) throw std::domain_error("residue_system: norm exceeds brute-force cap");
    i64 v1r = i64(n.re), v1i = i64(n.im);
    i64 v2r = -i64(n.im), v2i = i64(n.re);
    i64 rlo = std::min(std::min(i64(0), v1r), std::min(v2r, v1r + v2r));
    i64 rhi = std::max(std::max(i64(0), v1r), std::max(v2r, v1r + v2r));
    i64 ilo = std::min(std::min(i64(0), v1i), std::min(v2i, v1i + v2i));
    i64 ihi = std::max(std::max(i64(0), v1i), std::max(v2i, v1i + v2i));
    std::vector<GaussInt> out;
    out.reserve(std::size_t(nn));
    for (i64 a = rlo; a <= rhi; ++a) {
        for (i64 b = ilo; b <= ihi; ++b) {
            GaussInt z{a, b};
            GaussInt t = z * conj(n);
            if (t.re >= 0 && t.re < nn && t.im >= 0 && t.im < nn) out.push_back(z);
        }
    }
    if (i128(out.size()) != nn) throw std::logic_error("residue_system: count mismatch");
    return out;
}

// literal evaluation of g(r,n); exact rational Im(rx/n) reduced mod 1 before
// the exponential, so the argument never grows
inline cplx gauss_sum_bruteforce(const GaussInt& r, const GaussInt& n, u64 cap = 10000) {
    if (!is_odd(n)) throw std::domain_error("gauss_sum_bruteforce: even modulus");
    if (n.is_unit()) return {1.0, 0.0};
    std::vector<GaussInt> xs = residue_system(n, cap);
    i128 nn = norm(n);
    u64 N = u64(nn);

    // roots[t] = exp(2 pi i t / N)
    std::vector<cplx> roots(N);
    for (u64 t = 0; t < N; ++t) {
        double ang = kTwoPi * (double(t) / double(N));
        roots[t] = {std::cos(ang), std::sin(ang)};
    }
    const CharTable& tab = char_tables();
    KahanC acc;
    for (const GaussInt& x : xs) {
        int s = residue_symbol_fast(x, n, tab);
        if (s == 0) continue;
        GaussInt t = r * x * conj(n);  // Im(r x / n) = t.im / N
        i128 m = ((t.im % nn) + nn) % nn;
        cplx w = roots[u64(m)];
        acc.add(s == 1 ? w : -w);
    }
    return acc.sum;
}

// Brute-force evaluator with the modulus-dependent tables precomputed once:
// symbol values over a residue system and the N(n)-th roots of unity.  Used
// by the oracle sweeps, where many k share one n.
class GaussSumBrute {
  public:
    explicit GaussSumBrute(const GaussInt& n, u64 cap = 10000) : n_(n), conj_n_(conj(n)) {
        if (!is_odd(n)) throw std::domain_error("GaussSumBrute: even modulus");
        xs_ = residue_system(n, cap);
        nn_ = u64(norm(n));
        const CharTable& tab = char_tables();
        sym_.resize(xs_.size());
        xc_.resize(xs_.size());
        for (std::size_t i = 0; i < xs_.size(); ++i) {
            sym_[i] = int8_t(n.is_unit() ? 1 : residue_symbol_fast(xs_[i], n, tab));
            xc_[i] = xs_[i] * conj_n_;
        }
        roots_.resize(nn_);
        for (u64 t = 0; t < nn_; ++t) {
            double ang = kTwoPi * (double(t) / double(nn_));
            roots_[t] = {std::cos(ang), std::sin(ang)};
        }
    }

    cplx eval(const GaussInt& r) const {
        KahanC acc;
        for (std::size_t i = 0; i < xs_.size(); ++i) {
            if (sym_[i] == 0) continue;
            // Im(r x / n) = Im(r * (x conj n)) / N(n), exact
            i128 im = checked_mul(r.re, xc_[i].im) + checked_mul(r.im, xc_[i].re);
            i128 m = ((im % i128(nn_)) + i128(nn_)) % i128(nn_);
            cplx w = roots_[u64(m)];
            acc.add(sym_[i] == 1 ? w : -w);
        }
        return acc.sum;
    }

  private:
    GaussInt n_, conj_n_;
    u64 nn_ = 1;
    std::vector<GaussInt> xs_;
    std::vector<GaussInt> xc_;
    std::vector<int8_t> sym_;
    std::vector<cplx> roots_;
};

// exponent of pi in k; -1 plays the role of "infinity" when k = 0
inline int ord_at(const GaussInt& k, const GaussInt& pi) {
    if (k.is_zero()) return -1;
    int h = 0;
    GaussInt r = k;
    while (divides(pi, r)) { r = exact_div(r, pi); ++h; }
    return h;
}

// closed-form g(k,n) from a pre-factored modulus; always real-valued
inline cplx gauss_sum_factored(const GaussInt& k, const FactoredElement& fe) {
    const CharTable& tab = char_tables();
    double acc = 1.0;
    for (const auto& [pi, l] : fe.factors) {
        int h = ord_at(k, pi);
        bool h_infinite = (h < 0);
        double np = to_double(norm(pi));
        double val;
        if (h_infinite || l <= h) {
            if (l % 2 == 1) {
                val = 0.0;
            } else {
                val = std::pow(np, l - 1) * (np - 1.0);  // phi(pi^l)
            }
        } else if (l == h + 1) {
            if (l % 2 == 0) {
                val = -std::pow(np, l - 1);
            } else {
                GaussInt kred = k;
                for (int t = 0; t < h; ++t) kred = exact_div(kred, pi);
                int s = residue_symbol_fast(mul_i(kred), pi, tab);
                val = double(s) * std::pow(np, l - 1) * std::sqrt(np);
            }
        } else {
            val = 0.0;
        }
        if (val == 0.0) return {0.0, 0.0};
        acc *= val;
    }
    return {acc, 0.0};
}

inline cplx gauss_sum(const GaussInt& k, const GaussInt& n) {
    if (!is_odd(n)) throw std::domain_error("gauss_sum: even modulus");
    if (n.is_unit()) return {1.0, 0.0};
    if (!is_primary_fast(n)) throw std::domain_error("gauss_sum: modulus must be primary");
    return gauss_sum_factored(k, factor(n));
}

}  // namespace hecke
