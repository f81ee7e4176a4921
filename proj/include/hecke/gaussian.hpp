#pragma once

// Exact arithmetic in Z[i]: 128-bit signed components with overflow checking,
// Euclidean division, gcd/lcm normalized to canonical generators, and the
// primary normalization (n == 1 mod (1+i)^3) that fixes one generator per
// odd ideal.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace hecke {

using i128 = __int128;
using u128 = unsigned __int128;
using u64  = std::uint64_t;
using i64  = std::int64_t;

// ---------------------------------------------------------------------------
// checked 128-bit scalar ops
// ---------------------------------------------------------------------------

[[noreturn]] inline void overflow_fail(const char* ctx) {
    throw std::overflow_error(std::string("Z[i] arithmetic overflow in ") + ctx);
}

inline i128 checked_add(i128 a, i128 b, const char* ctx = "add") {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) overflow_fail(ctx);
    return r;
}

inline i128 checked_sub(i128 a, i128 b, const char* ctx = "sub") {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) overflow_fail(ctx);
    return r;
}

inline i128 checked_mul(i128 a, i128 b, const char* ctx = "mul") {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) overflow_fail(ctx);
    return r;
}

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? (u128(0) - u128(v)) : u128(v);
    char buf[48];
    int pos = 48;
    while (u > 0) { buf[--pos] = char('0' + int(u % 10)); u /= 10; }
    std::string s = neg ? "-" : "";
    s.append(buf + pos, 48 - pos);
    return s;
}

inline i128 parse_i128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t k = 0;
    bool neg = false;
    if (s[k] == '+' || s[k] == '-') { neg = (s[k] == '-'); ++k; }
    if (k == s.size()) throw std::invalid_argument("bad integer literal: " + s);
    i128 v = 0;
    for (; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad integer literal: " + s);
        v = checked_add(checked_mul(v, 10, "parse"), s[k] - '0', "parse");
    }
    return neg ? -v : v;
}

inline double to_double(i128 v) { return static_cast<double>(v); }

// ---------------------------------------------------------------------------
// GaussInt
// ---------------------------------------------------------------------------

struct GaussInt {
    i128 re = 0;
    i128 im = 0;

    constexpr GaussInt() = default;
    constexpr GaussInt(i128 r, i128 i) : re(r), im(i) {}
    constexpr explicit GaussInt(i128 r) : re(r), im(0) {}

    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussInt& o) const { return !(*this == o); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const {
        return (re == 1 && im == 0) || (re == -1 && im == 0) ||
               (re == 0 && im == 1) || (re == 0 && im == -1);
    }
    bool is_one() const { return re == 1 && im == 0; }
};

inline const GaussInt kZero{0, 0};
inline const GaussInt kOne{1, 0};
inline const GaussInt kImagUnit{0, 1};
inline const GaussInt kOnePlusI{1, 1};

inline GaussInt operator+(const GaussInt& a, const GaussInt& b) {
    return {checked_add(a.re, b.re), checked_add(a.im, b.im)};
}

inline GaussInt operator-(const GaussInt& a, const GaussInt& b) {
    return {checked_sub(a.re, b.re), checked_sub(a.im, b.im)};
}

inline GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }

inline GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    i128 r = checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im), "mul re");
    i128 i = checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re), "mul im");
    return {r, i};
}

inline GaussInt conj(const GaussInt& a) { return {a.re, -a.im}; }

inline GaussInt mul_i(const GaussInt& a) { return {-a.im, a.re}; }

inline i128 norm(const GaussInt& a) {
    return checked_add(checked_mul(a.re, a.re, "norm"), checked_mul(a.im, a.im, "norm"), "norm");
}

// i^k for k mod 4
inline GaussInt unit_power_of_i(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

inline int unit_exponent(const GaussInt& u) {
    if (u.re == 1 && u.im == 0) return 0;
    if (u.re == 0 && u.im == 1) return 1;
    if (u.re == -1 && u.im == 0) return 2;
    if (u.re == 0 && u.im == -1) return 3;
    throw std::invalid_argument("not a unit");
}

// odd <=> coprime to 1+i <=> norm odd
inline bool is_odd(const GaussInt& a) {
    return ((a.re ^ a.im) & 1) != 0;
}

// rounds p/q (q > 0) to the nearest integer, ties toward zero
inline i128 round_div_half_to_zero(i128 p, i128 q) {
    i128 t = p / q;
    i128 rem = p % q;
    i128 twice = rem < 0 ? -2 * rem : 2 * rem;
    if (twice > q) t += (rem > 0 ? 1 : -1);
    return t;
}

// Euclidean division: a = q*b + r with N(r) <= N(b)/2.
inline std::pair<GaussInt, GaussInt> divmod(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Z[i]");
    GaussInt t = a * conj(b);
    i128 nb = norm(b);
    GaussInt q{round_div_half_to_zero(t.re, nb), round_div_half_to_zero(t.im, nb)};
    GaussInt r = a - b * q;
    return {q, r};
}

inline bool divides(const GaussInt& d, const GaussInt& a) {
    if (d.is_zero()) return a.is_zero();
    GaussInt t = a * conj(d);
    i128 nd = norm(d);
    return t.re % nd == 0 && t.im % nd == 0;
}

// exact quotient a/d; throws if d does not divide a
inline GaussInt exact_div(const GaussInt& a, const GaussInt& d) {
    GaussInt t = a * conj(d);
    i128 nd = norm(d);
    if (nd == 0 || t.re % nd != 0 || t.im % nd != 0)
        throw std::domain_error("exact_div: not divisible");
    return {t.re / nd, t.im / nd};
}

inline GaussInt pow(GaussInt base, unsigned e) {
    GaussInt acc = kOne;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

// largest e with (1+i)^e | a, together with the odd cofactor
inline std::pair<int, GaussInt> split_ramified(GaussInt a) {
    if (a.is_zero()) throw std::domain_error("split_ramified: zero");
    int e = 0;
    while (!is_odd(a)) {
        // a/(1+i) = a*(1-i)/2
        i128 r = (a.re + a.im) / 2;
        i128 i = (a.im - a.re) / 2;
        a = {r, i};
        ++e;
    }
    return {e, a};
}

// ---------------------------------------------------------------------------
// primary normalization: n == 1 mod (1+i)^3
// ---------------------------------------------------------------------------

// exact test by divisibility of n-1 by (1+i)^3 = -2+2i
inline bool is_primary(const GaussInt& n) {
    if (!is_odd(n)) throw std::domain_error("is_primary: even element");
    GaussInt w = n - kOne;
    // w/(-2+2i) = w*(-2-2i)/8
    i128 tr = -2 * w.re + 2 * w.im;
    i128 ti = -2 * w.im - 2 * w.re;
    return tr % 8 == 0 && ti % 8 == 0;
}

// congruence shortcut, kept as an optimization; equivalence with is_primary
// is covered by tests
inline bool is_primary_fast(const GaussInt& n) {
    int r4 = int(((n.re % 4) + 4) % 4);
    int i4 = int(((n.im % 4) + 4) % 4);
    return (r4 == 1 && i4 == 0) || (r4 == 3 && i4 == 2);
}

// n = u*m with m primary; exactly one associate of an odd element is primary
inline std::pair<GaussInt, GaussInt> primary_associate(const GaussInt& n) {
    if (n.is_zero() || !is_odd(n)) throw std::domain_error("primary_associate: need odd nonzero");
    GaussInt m = n;
    for (int k = 0; k < 4; ++k) {
        // here m = i^k * n, so n = i^{-k} * m
        if (is_primary_fast(m)) return {unit_power_of_i(4 - k), m};
        m = mul_i(m);
    }
    throw std::logic_error("primary_associate: no primary associate found");
}

// Canonical generator of the ideal (n): literal power of (1+i) times the
// primary associate of the odd part, units discarded.
inline GaussInt canonical_generator(const GaussInt& n) {
    if (n.is_zero()) throw std::domain_error("canonical_generator: zero");
    auto [e, odd] = split_ramified(n);
    GaussInt m = primary_associate(odd).second;
    return pow(kOnePlusI, unsigned(e)) * m;
}

inline GaussInt gcd(GaussInt a, GaussInt b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0,0)");
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = b;
        b = r;
    }
    return canonical_generator(a);
}

inline GaussInt lcm(const GaussInt& a, const GaussInt& b) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("lcm of zero");
    GaussInt g = gcd(a, b);
    return canonical_generator(exact_div(a, g) * b);
}

// ---------------------------------------------------------------------------
// ordering / hashing / formatting
// ---------------------------------------------------------------------------

// deterministic total order: by norm, then re, then im
inline bool norm_less(const GaussInt& a, const GaussInt& b) {
    i128 na = norm(a), nb = norm(b);
    if (na != nb) return na < nb;
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

struct NormLess {
    bool operator()(const GaussInt& a, const GaussInt& b) const { return norm_less(a, b); }
};

struct GaussHash {
    std::size_t operator()(const GaussInt& z) const {
        auto mix = [](u64 x) {
            x ^= x >> 33; x *= 0xff51afd7ed558ccdULL;
            x ^= x >> 33; x *= 0xc4ceb9fe1a85ec53ULL;
            x ^= x >> 33; return x;
        };
        u64 h = mix(u64(u128(z.re))) ^ (mix(u64(u128(z.re) >> 64)) << 1);
        h ^= mix(u64(u128(z.im)) + 0x9e3779b97f4a7c15ULL) + (h << 6) + (h >> 2);
        return std::size_t(h);
    }
};

inline std::string to_string(const GaussInt& z) {
    std::string s = to_string(z.re);
    if (z.im >= 0) s += "+";
    s += to_string(z.im) + "i";
    return s;
}

// accepts "re,im" or a plain integer "re"
inline GaussInt parse_gauss(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return GaussInt{parse_i128(s), 0};
    return GaussInt{parse_i128(s.substr(0, comma)), parse_i128(s.substr(comma + 1))};
}

}  // namespace hecke
