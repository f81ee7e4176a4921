#pragma once

// Factorization in Z[i] via splitting of rational primes, and the standard
// multiplicative functions (mu, d_j, phi, omega, Lambda) evaluated on the
// factored form.  Rational factorization is trial division up to 10^6 plus
// a deterministic Miller-Rabin for the cofactor, which covers norms through
// the desk-scale range (~10^12).

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaussian.hpp"

namespace hecke {

// ---------------------------------------------------------------------------
// rational helpers
// ---------------------------------------------------------------------------

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return u64((u128(a) * b) % m); }

inline u64 powmod_u64(u64 base, u64 e, u64 m) {
    u64 acc = 1 % m;
    base %= m;
    while (e > 0) {
        if (e & 1) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        e >>= 1;
    }
    return acc;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = u64(std::sqrt(double(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// trial division + Miller-Rabin cofactor; throws when the cofactor is a
// composite with no factor below the trial bound
inline std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    if (n == 0) throw std::domain_error("factor_u64: zero");
    std::vector<std::pair<u64, int>> out;
    auto strip = [&](u64 p) {
        if (n % p) return;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    strip(5);
    static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    u64 p = 7;
    int w = 0;
    const u64 bound = 1000000;
    while (p <= bound && p * p <= n) {
        strip(p);
        p += wheel[w];
        w = (w + 1) & 7;
    }
    if (n > 1) {
        if (is_prime_u64(n)) {
            out.emplace_back(n, 1);
        } else {
            u64 s = isqrt_u64(n);
            if (s * s == n && is_prime_u64(s)) {
                out.emplace_back(s, 2);
            } else {
                throw std::domain_error("factor_u64: norm too large for the rational factorizer");
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// smallest quadratic non-residue search, then x = n^((p-1)/4) has x^2 = -1 (p == 1 mod 4)
inline u64 sqrt_minus_one_mod(u64 p) {
    for (u64 n = 2;; ++n) {
        if (powmod_u64(n, (p - 1) / 2, p) == p - 1) {
            return powmod_u64(n, (p - 1) / 4, p);
        }
    }
}

// primary prime of norm p for a split rational prime p == 1 mod 4
inline GaussInt split_prime(u64 p) {
    u64 x = sqrt_minus_one_mod(p);
    GaussInt g = gcd(GaussInt{i128(p), 0}, GaussInt{i128(x), 1});
    return g;  // gcd already returns the canonical (primary) generator
}

inline GaussInt inert_prime(u64 p) {
    // p == 3 mod 4; the primary associate of p is -p
    return GaussInt{-i128(p), 0};
}

// ---------------------------------------------------------------------------
// FactoredElement
// ---------------------------------------------------------------------------

struct FactoredElement {
    GaussInt unit = kOne;                              // one of 1, i, -1, -i
    std::vector<std::pair<GaussInt, int>> factors;     // canonical primes, sorted

    GaussInt recompose() const {
        GaussInt acc = unit;
        for (const auto& [p, e] : factors) acc = acc * pow(p, unsigned(e));
        return acc;
    }
};

inline FactoredElement factor(const GaussInt& n) {
    if (n.is_zero()) throw std::domain_error("factor: zero");
    FactoredElement fe;
    auto [e2, odd] = split_ramified(n);
    i128 no = norm(odd);
    if (no > i128(u64(-1))) throw std::domain_error("factor: norm exceeds factorable range");
    auto rational = factor_u64(u64(no));

    GaussInt rest = odd;
    for (auto [p, a] : rational) {
        if (p % 4 == 3) {
            GaussInt q = inert_prime(p);
            if (a % 2 != 0) throw std::logic_error("factor: inert prime with odd norm exponent");
            int e = a / 2;
            fe.factors.emplace_back(q, e);
            for (int k = 0; k < e; ++k) rest = exact_div(rest, q);
        } else {
            GaussInt w = split_prime(p);
            int e1 = 0;
            while (divides(w, rest)) { rest = exact_div(rest, w); ++e1; }
            if (e1 > 0) fe.factors.emplace_back(w, e1);
            int e2c = a - e1;
            if (e2c > 0) {
                GaussInt wc = primary_associate(conj(w)).second;
                fe.factors.emplace_back(wc, e2c);
                for (int k = 0; k < e2c; ++k) rest = exact_div(rest, wc);
            }
        }
    }
    if (!rest.is_unit()) throw std::logic_error("factor: residual non-unit");
    fe.unit = rest;
    if (e2 > 0) fe.factors.emplace_back(kOnePlusI, e2);
    std::sort(fe.factors.begin(), fe.factors.end(),
              [](const auto& a, const auto& b) { return norm_less(a.first, b.first); });
    return fe;
}

// ---------------------------------------------------------------------------
// multiplicative functions on the factored form
// ---------------------------------------------------------------------------

inline bool is_squarefree(const FactoredElement& fe) {
    for (const auto& [p, e] : fe.factors)
        if (e > 1) return false;
    return true;
}

inline int mobius(const FactoredElement& fe) {
    if (!is_squarefree(fe)) return 0;
    return (fe.factors.size() % 2 == 0) ? 1 : -1;
}

inline int omega(const FactoredElement& fe) { return int(fe.factors.size()); }

// d_{[i],j}(pi^a) = C(a+j-1, j-1), multiplicative
inline i128 divisor_j(const FactoredElement& fe, int j) {
    if (j < 1) throw std::domain_error("divisor_j: j >= 1 required");
    i128 acc = 1;
    for (const auto& [p, e] : fe.factors) {
        i128 num = 1, den = 1;
        for (int k = 1; k <= j - 1; ++k) {
            num = checked_mul(num, e + k, "divisor_j");
            den = checked_mul(den, k, "divisor_j");
        }
        acc = checked_mul(acc, num / den, "divisor_j");
    }
    return acc;
}

inline i128 euler_phi(const FactoredElement& fe) {
    i128 acc = 1;
    for (const auto& [p, e] : fe.factors) {
        i128 np = norm(p);
        for (int k = 0; k < e - 1; ++k) acc = checked_mul(acc, np, "phi");
        acc = checked_mul(acc, np - 1, "phi");
    }
    return acc;
}

inline double von_mangoldt(const FactoredElement& fe) {
    if (fe.factors.size() != 1) return 0.0;
    return std::log(to_double(norm(fe.factors[0].first)));
}

inline bool is_prime_element(const FactoredElement& fe) {
    return fe.factors.size() == 1 && fe.factors[0].second == 1;
}

inline bool is_prime_element(const GaussInt& n) {
    i128 nn = norm(n);
    if (nn <= 1 || nn > i128(u64(-1))) return false;
    u64 m = u64(nn);
    if (is_prime_u64(m)) return true;
    u64 s = isqrt_u64(m);
    return s * s == m && s % 4 == 3 && is_prime_u64(s);
}

}  // namespace hecke
