#pragma once

// Enumeration of primary elements by norm and the prime sieve: one primary
// generator per odd prime ideal, derived from the splitting of rational
// primes (p == 1 mod 4 splits into two conjugate primary primes, p == 3
// mod 4 stays inert with primary associate -p, 2 ramifies).

#include <vector>

#include "factor.hpp"
#include "gaussian.hpp"

namespace hecke {

// streams every primary element of norm <= limit, one per odd ideal
template <class F>
inline void for_each_primary(u64 limit, F&& visit) {
    if (limit < 1) return;
    i64 amax = i64(isqrt_u64(limit));
    for (i64 a = -amax; a <= amax; ++a) {
        u64 rem = limit - u64(a * a);
        i64 bmax = i64(isqrt_u64(rem));
        for (i64 b = -bmax; b <= bmax; ++b) {
            GaussInt z{a, b};
            if (is_odd(z) && is_primary_fast(z)) visit(z);
        }
    }
}

inline std::vector<GaussInt> enumerate_primary(u64 limit) {
    std::vector<GaussInt> out;
    for_each_primary(limit, [&](const GaussInt& z) { out.push_back(z); });
    std::sort(out.begin(), out.end(), NormLess{});
    return out;
}

struct NormSieve {
    u64 limit = 0;
    bool includes_ramified = false;
    std::vector<GaussInt> primes;  // primary odd primes, sorted by norm
};

// All primary odd primes of norm <= limit, one per ideal.  Components fit in
// 64 bits for any feasible limit.
inline NormSieve sieve_primes(u64 limit, bool include_ramified = false) {
    NormSieve sv;
    sv.limit = limit;
    sv.includes_ramified = include_ramified;
    if (limit < 2) return sv;

    std::vector<bool> composite(limit + 1, false);
    for (u64 p = 2; p * p <= limit; ++p) {
        if (composite[p]) continue;
        for (u64 q = p * p; q <= limit; q += p) composite[q] = true;
    }
    for (u64 p = 3; p <= limit; p += 2) {
        if (composite[p]) continue;
        if (p % 4 == 1) {
            GaussInt w = split_prime(p);
            sv.primes.push_back(w);
            sv.primes.push_back(primary_associate(conj(w)).second);
        } else if (p * p <= limit) {
            sv.primes.push_back(inert_prime(p));
        }
    }
    std::sort(sv.primes.begin(), sv.primes.end(), NormLess{});
    return sv;
}

}  // namespace hecke
