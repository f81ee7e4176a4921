#pragma once

// Quadratic residue symbols (a/n) in Z[i].
//
// Two evaluation paths are kept side by side:
//   * residue_symbol      -- the semantic definition: Euler's criterion at
//                            primes, extended multiplicatively over factor(n);
//   * residue_symbol_fast -- gcd-style evaluation using the reciprocity law
//                            (m/n) = (n/m) for coprime primary m, n, plus
//                            lookup tables for (i/n) and ((1+i)/n).
//
// The supplementary values (i/n), ((1+i)/n) are not hard-coded from the
// literature: they are derived numerically into CharTable by locating a
// primary prime in every residue class mod 16(1+i) and applying Euler's
// criterion there.  The table is validated for multiplicativity when built.

#include <array>
#include <memory>
#include <fstream>
#include <random>
#include <vector>

#include "enumerate.hpp"
#include "factor.hpp"
#include "gaussian.hpp"

namespace hecke {

// ---------------------------------------------------------------------------
// modular arithmetic in Z[i]
// ---------------------------------------------------------------------------

// representative of a mod n with N(r) <= N(n)/2 (rounding reduction)
inline GaussInt mod_small(const GaussInt& a, const GaussInt& n) {
    return divmod(a, n).second;
}

// canonical representative in the fundamental parallelogram {alpha*n + beta*i*n,
// 0 <= alpha,beta < 1}; translation invariant, used for residue systems and
// residue-class keys
inline GaussInt mod_canonical(const GaussInt& a, const GaussInt& n) {
    GaussInt t = a * conj(n);
    i128 nn = norm(n);
    auto fdiv = [&](i128 p) {
        i128 q = p / nn;
        if (p % nn != 0 && ((p < 0) != (nn < 0))) --q;
        return q;
    };
    GaussInt q{fdiv(t.re), fdiv(t.im)};
    return a - n * q;
}

inline GaussInt mulmod_gauss(const GaussInt& a, const GaussInt& b, const GaussInt& n) {
    return mod_small(a * b, n);
}

inline GaussInt powmod_gauss(GaussInt base, u64 e, const GaussInt& n) {
    GaussInt acc = mod_small(kOne, n);
    base = mod_small(base, n);
    while (e > 0) {
        if (e & 1) acc = mulmod_gauss(acc, base, n);
        base = mulmod_gauss(base, base, n);
        e >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Euler criterion at a prime modulus
// ---------------------------------------------------------------------------

// (a/pi) = a^{(N(pi)-1)/2} mod pi, in {-1,0,+1}
inline int euler_symbol(const GaussInt& a, const GaussInt& pi) {
    i128 np = norm(pi);
    if (np > i128(u64(-1))) throw std::domain_error("euler_symbol: modulus too large");
    GaussInt r = mod_small(a, pi);
    if (r.is_zero()) return 0;
    GaussInt t = powmod_gauss(r, (u64(np) - 1) / 2, pi);
    if (divides(pi, t - kOne)) return 1;
    if (divides(pi, t + kOne)) return -1;
    throw std::logic_error("euler_symbol: modulus not prime");
}

// semantic symbol: factor the modulus, apply Euler's criterion per prime
inline int residue_symbol(const GaussInt& a, const GaussInt& n) {
    if (!is_odd(n)) throw std::domain_error("residue_symbol: even modulus");
    if (n.is_unit()) return 1;
    FactoredElement fe = factor(n);
    int acc = 1;
    for (const auto& [p, e] : fe.factors) {
        int s = euler_symbol(a, p);
        if (s == 0) {
            if (e > 0) return 0;
        } else if (s == -1 && (e % 2 == 1)) {
            acc = -acc;
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// CharTable: (i/n) and ((1+i)/n) as class functions mod 16(1+i)
// ---------------------------------------------------------------------------

class CharTable {
  public:
    static constexpr i64 kSpan = 512;  // N(16(1+i))

    CharTable() : i_sym_(kSpan * kSpan, 0), onepi_sym_(kSpan * kSpan, 0) {}

    // class key of an odd element mod 16(1+i); pairs (t1,t2) with
    // t = z*conj(mu) reduced into [0, 512)^2 are class invariants
    static std::size_t class_key(const GaussInt& z) {
        const GaussInt mu{16, 16};
        GaussInt t = z * conj(mu);
        i64 t1 = i64(((t.re % kSpan) + kSpan) % kSpan);
        i64 t2 = i64(((t.im % kSpan) + kSpan) % kSpan);
        return std::size_t(t1) * kSpan + std::size_t(t2);
    }

    int i_symbol(const GaussInt& primary_mod) const {
        int v = i_sym_[class_key(primary_mod)];
        if (v == 0) throw std::logic_error("CharTable: class not populated ((i/n))");
        return v;
    }

    int onepi_symbol(const GaussInt& primary_mod) const {
        int v = onepi_sym_[class_key(primary_mod)];
        if (v == 0) throw std::logic_error("CharTable: class not populated (((1+i)/n))");
        return v;
    }

    // builds the tables by searching the prime sieve for a primary prime in
    // every primary residue class mod 16(1+i), then checks multiplicativity
    // on random class products
    static CharTable build(u64 initial_sieve_limit = 20000) {
        CharTable tab;
        int filled = 0;
        const int want = 64;  // primary coprime classes mod 16(1+i)
        std::vector<GaussInt> witnesses;
        for (u64 lim = initial_sieve_limit; filled < want; lim *= 4) {
            if (lim > 4000000) throw std::runtime_error("CharTable: class search bound exceeded");
            NormSieve sv = sieve_primes(lim);
            for (const GaussInt& p : sv.primes) {
                std::size_t k = class_key(p);
                if (tab.i_sym_[k] != 0) continue;
                tab.i_sym_[k] = int8_t(euler_symbol(kImagUnit, p));
                tab.onepi_sym_[k] = int8_t(euler_symbol(kOnePlusI, p));
                witnesses.push_back(p);
                if (++filled == want) break;
            }
        }
        tab.verify_multiplicative(witnesses);
        return tab;
    }

    void dump(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("CharTable: cannot open " + path);
        const GaussInt mu{16, 16};
        for (i64 a = -40; a <= 40; ++a) {
            for (i64 b = -40; b <= 40; ++b) {
                GaussInt z{a, b};
                if (!is_odd(z) || !is_primary_fast(z)) continue;
                GaussInt r = mod_canonical(z, mu);
                if (r != z) continue;  // emit each class once, by its canonical rep
                std::size_t k = class_key(z);
                if (i_sym_[k] == 0) continue;
                out << to_string(z.re) << "," << to_string(z.im) << ","
                    << int(i_sym_[k]) << "," << int(onepi_sym_[k]) << "\n";
            }
        }
    }

    static CharTable load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("CharTable: cannot open " + path);
        CharTable tab;
        std::string line;
        int count = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::size_t p1 = line.find(','), p2 = line.find(',', p1 + 1), p3 = line.find(',', p2 + 1);
            if (p3 == std::string::npos) throw std::runtime_error("CharTable: bad line: " + line);
            GaussInt z{parse_i128(line.substr(0, p1)), parse_i128(line.substr(p1 + 1, p2 - p1 - 1))};
            int vi = std::stoi(line.substr(p2 + 1, p3 - p2 - 1));
            int vo = std::stoi(line.substr(p3 + 1));
            if (!is_odd(z) || !is_primary_fast(z) || std::abs(vi) != 1 || std::abs(vo) != 1)
                throw std::runtime_error("CharTable: invalid entry: " + line);
            std::size_t k = class_key(z);
            if (tab.i_sym_[k] != 0) throw std::runtime_error("CharTable: duplicate class: " + line);
            tab.i_sym_[k] = int8_t(vi);
            tab.onepi_sym_[k] = int8_t(vo);
            ++count;
        }
        if (count != 64) throw std::runtime_error("CharTable: expected 64 classes");
        return tab;
    }

  private:
    void verify_multiplicative(const std::vector<GaussInt>& witnesses) const {
        std::mt19937_64 rng(0x5eedc0de);
        std::uniform_int_distribution<std::size_t> pick(0, witnesses.size() - 1);
        for (int t = 0; t < 1000; ++t) {
            const GaussInt& p = witnesses[pick(rng)];
            const GaussInt& q = witnesses[pick(rng)];
            GaussInt prod = p * q;
            if (i_sym_[class_key(prod)] != i_sym_[class_key(p)] * i_sym_[class_key(q)] ||
                onepi_sym_[class_key(prod)] != onepi_sym_[class_key(p)] * onepi_sym_[class_key(q)])
                throw std::logic_error("CharTable: multiplicativity check failed");
        }
    }

    std::vector<int8_t> i_sym_;
    std::vector<int8_t> onepi_sym_;
};

// process-wide table, built once on first use
inline const CharTable& char_tables() {
    static const CharTable tab = CharTable::build();
    return tab;
}

// ---------------------------------------------------------------------------
// fast symbol via reciprocity
// ---------------------------------------------------------------------------

// (a/n) for odd n, no factorization: strip units and (1+i)-powers from the
// numerator with table lookups, flip with (m/n) = (n/m), reduce, repeat
inline int residue_symbol_fast(const GaussInt& a_in, const GaussInt& n_in,
                               const CharTable& tab = char_tables()) {
    if (!is_odd(n_in)) throw std::domain_error("residue_symbol_fast: even modulus");
    if (n_in.is_unit()) return 1;
    GaussInt n = primary_associate(n_in).second;  // symbol depends only on the ideal (n)
    GaussInt a = a_in;
    int sign = 1;
    while (true) {
        if (n.is_one()) return sign;
        a = mod_small(a, n);
        if (a.is_zero()) return 0;
        auto [t, odd] = split_ramified(a);
        auto [u, m] = primary_associate(odd);
        int k = unit_exponent(u);
        if (t % 2 == 1) sign *= tab.onepi_symbol(n);
        if (k % 2 == 1) sign *= tab.i_symbol(n);
        // (-1/n) = (i/n)^2 = 1, so only the parity of k matters
        // reciprocity for coprime primary pairs; common factors surface as a == 0 later
        a = n;
        n = m;
    }
}

// ---------------------------------------------------------------------------
// Hecke character chi_c = (c/.)
// ---------------------------------------------------------------------------

// chi_{+-1} is the principal character mod 1; for any other c the value is 0
// on even arguments
inline int chi_eval(const GaussInt& c, const GaussInt& a,
                    const CharTable& tab = char_tables()) {
    if ((c.re == 1 || c.re == -1) && c.im == 0) return 1;
    if (!is_odd(a)) return 0;
    if (a.is_unit()) return 1;
    return residue_symbol_fast(c, a, tab);
}

// ---------------------------------------------------------------------------
// residue-field symbol evaluators
// ---------------------------------------------------------------------------

// Legendre-symbol table mod an odd prime p: squares marked once, O(1) lookups
class LegendreTable {
  public:
    explicit LegendreTable(u64 p) : p_(p), sq_(p, 0) {
        for (u64 k = 1; k <= (p_ - 1) / 2; ++k) sq_[mulmod_u64(k, k, p_)] = 1;
    }

    int operator()(u64 x) const {
        x %= p_;
        if (x == 0) return 0;
        return sq_[x] ? 1 : -1;
    }

    u64 modulus() const { return p_; }

  private:
    u64 p_;
    std::vector<unsigned char> sq_;
};

// (x/q) for a fixed prime modulus q, evaluated through the residue field:
// for split q of norm p, x maps into F_p and the symbol is the Legendre
// symbol there; for inert q = -r the symbol is legendre(N(x) mod r)
class PrimeFieldSymbol {
  public:
    explicit PrimeFieldSymbol(const GaussInt& q) {
        i128 nq = norm(q);
        if (q.im == 0) {
            inert_r_ = u64(q.re < 0 ? -q.re : q.re);
            leg_ = std::make_unique<LegendreTable>(inert_r_);
        } else {
            split_p_ = u64(nq);
            // image of i in F_p from q = a+bi: i = -a b^{-1}
            u64 a = u64(i128(((q.re % i128(split_p_)) + i128(split_p_)) % i128(split_p_)));
            u64 b = u64(i128(((q.im % i128(split_p_)) + i128(split_p_)) % i128(split_p_)));
            u64 binv = powmod_u64(b, split_p_ - 2, split_p_);
            x0_ = mulmod_u64(split_p_ - a % split_p_, binv, split_p_);
            leg_ = std::make_unique<LegendreTable>(split_p_);
        }
    }

    int operator()(const GaussInt& x) const {
        if (split_p_) {
            u64 p = split_p_;
            u64 a = u64(i128(((x.re % i128(p)) + i128(p)) % i128(p)));
            u64 b = u64(i128(((x.im % i128(p)) + i128(p)) % i128(p)));
            return (*leg_)((a + mulmod_u64(b, x0_, p)) % p);
        }
        u64 r = inert_r_;
        u64 a = u64(i128(((x.re % i128(r)) + i128(r)) % i128(r)));
        u64 b = u64(i128(((x.im % i128(r)) + i128(r)) % i128(r)));
        return (*leg_)((mulmod_u64(a, a, r) + mulmod_u64(b, b, r)) % r);
    }

  private:
    std::unique_ptr<LegendreTable> leg_;
    u64 split_p_ = 0;  // nonzero for split primes
    u64 x0_ = 0;       // image of i in F_p
    u64 inert_r_ = 0;  // nonzero for inert primes
};

}  // namespace hecke
