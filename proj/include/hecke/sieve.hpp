#pragma once

// Brun-Selberg sieve weights
//
//   lambda_d = sum_{b | P(z0), omega(b) <= 2 r0}
//              sum sum_{b [m,n] = d, N(m),N(n) <= R, (mn, P(z0)) = 1}
//              mu(b) mu(m) mu(n) G(log N(m)/log R) G(log N(n)/log R)
//
// with z0 = exp((log X)^{1/3}), r0 = floor((log X)^{1/3}), R = X^vartheta,
// and the support bound D = R^2 exp(2 (log X)^{2/3}).  P(y) is the product
// of all canonical primes of norm <= y, the ramified prime included.
//
// The weights majorize the prime indicator, 1_{prime}(n) <= sum_{d|n}
// lambda_d, on the sieve's working range N(n) > max(z0, R); the construction
// offers no such bound for primes inside P(z0), and sieve_upper_check
// reports the literal truth of the inequality for each n.

#include <cmath>
#include <fstream>
#include <map>
#include <vector>

#include "enumerate.hpp"
#include "factor.hpp"
#include "weights.hpp"

namespace hecke {

// Selberg weight shape: 1 - t on [0, 1 - 1/log log X], smooth, supported in
// [-1, 1], nonnegative
inline double selberg_G(double t, double X) {
    if (X < 16.0) throw std::domain_error("selberg_G: X >= 16 required");
    if (t <= -1.0 || t >= 1.0) return 0.0;
    double collar = 1.0 / std::log(std::log(X));
    return (1.0 - t) * smooth_step((1.0 - t) / collar) * smooth_step(t + 1.0);
}

struct SieveParams {
    double x_scale = 10000.0;
    double z0 = 0.0;
    int r0 = 0;
    double radius = 0.0;   // R
    double support = 0.0;  // D

    static SieveParams from_x(double X, double vartheta) {
        SieveParams p;
        p.x_scale = X;
        double lx = std::log(X);
        p.z0 = std::exp(std::cbrt(lx));
        p.r0 = int(std::cbrt(lx));
        p.radius = std::pow(X, vartheta);
        p.support = p.radius * p.radius * std::exp(2.0 * std::cbrt(lx) * std::cbrt(lx));
        return p;
    }
};

struct SieveWeights {
    SieveParams params;
    std::map<GaussInt, double, NormLess> lambda;

    double at(const GaussInt& d) const {
        auto it = lambda.find(d);
        return it == lambda.end() ? 0.0 : it->second;
    }
};

// overrides for experiments; zero fields keep the formula values
struct SieveOverrides {
    double z0 = 0.0;
    int r0 = 0;
    double radius = 0.0;
    u64 max_triples = 50000000;
};

inline SieveWeights build_lambda(double X, double vartheta, SieveOverrides ov = {}) {
    SieveParams p = SieveParams::from_x(X, vartheta);
    if (ov.z0 > 0.0) p.z0 = ov.z0;
    if (ov.r0 > 0) p.r0 = ov.r0;
    if (ov.radius > 0.0) {
        p.radius = ov.radius;
        p.support = p.radius * p.radius * std::exp(2.0 * std::pow(std::cbrt(std::log(X)), 2.0));
    }

    // primes of P(z0): every canonical prime of norm <= z0, 1+i included
    std::vector<GaussInt> pz = sieve_primes(u64(p.z0)).primes;
    if (p.z0 >= 2.0) pz.insert(pz.begin(), kOnePlusI);

    // squarefree b | P(z0) with omega(b) <= 2 r0
    struct BrunTerm {
        GaussInt b;
        int mu;
        int omega;
    };
    std::vector<BrunTerm> bruns;
    {
        std::vector<BrunTerm> stack{{kOne, 1, 0}};
        for (std::size_t i = 0; i < pz.size(); ++i) {
            std::size_t sz = stack.size();
            for (std::size_t s = 0; s < sz; ++s) {
                BrunTerm t = stack[s];
                if (t.omega >= 2 * p.r0) continue;
                t.b = t.b * pz[i];
                t.mu = -t.mu;
                t.omega += 1;
                stack.push_back(t);
            }
        }
        bruns = std::move(stack);
    }

    // squarefree primary m with N(m) <= R and (m, P(z0)) = 1
    std::vector<GaussInt> lr{kOne};
    {
        std::vector<GaussInt> midprimes;
        for (const GaussInt& q : sieve_primes(u64(p.radius)).primes)
            if (to_double(norm(q)) > p.z0) midprimes.push_back(q);
        std::vector<std::pair<GaussInt, std::size_t>> stack{{kOne, 0}};
        while (!stack.empty()) {
            auto [m, idx] = stack.back();
            stack.pop_back();
            for (std::size_t i = idx; i < midprimes.size(); ++i) {
                i128 nn = checked_mul(norm(m), norm(midprimes[i]));
                if (to_double(nn) > p.radius) continue;
                GaussInt next = primary_associate(m * midprimes[i]).second;
                lr.push_back(next);
                stack.push_back({next, i + 1});
            }
        }
    }

    if (u64(bruns.size()) * lr.size() * lr.size() > ov.max_triples)
        throw std::runtime_error("build_lambda: triple count exceeds the configured limit");

    // assemble: inner Selberg pairs keyed by [m, n], then tensored with b
    double logR = std::log(p.radius);
    auto gshape = [&](const GaussInt& m) {
        if (m.is_one()) return selberg_G(0.0, X);
        return selberg_G(std::log(to_double(norm(m))) / logR, X);
    };
    std::map<GaussInt, double, NormLess> pair_sums;
    for (const GaussInt& m : lr) {
        int mum = mobius(factor(m));
        double gm = gshape(m);
        for (const GaussInt& n : lr) {
            int mun = mobius(factor(n));
            GaussInt l = m.is_one() ? canonical_generator(n)
                                    : (n.is_one() ? canonical_generator(m) : lcm(m, n));
            pair_sums[l] += double(mum * mun) * gm * gshape(n);
        }
    }

    SieveWeights w;
    w.params = p;
    for (const BrunTerm& bt : bruns) {
        for (const auto& [l, v] : pair_sums) {
            GaussInt d = canonical_generator(bt.b * l);
            w.lambda[d] += double(bt.mu) * v;
        }
    }
    // drop numerically-zero entries so the support statement is exact
    for (auto it = w.lambda.begin(); it != w.lambda.end();) {
        if (std::abs(it->second) < 1e-14) it = w.lambda.erase(it);
        else ++it;
    }
    return w;
}

// sum of lambda_d over canonical divisors d | n
inline double lambda_divisor_sum(const GaussInt& n, const SieveWeights& w) {
    FactoredElement fe = factor(n);
    double acc = 0.0;
    std::size_t np = fe.factors.size();
    if (np > 20) throw std::domain_error("lambda_divisor_sum: too many prime factors");
    for (u64 mask = 0; mask < (u64(1) << np); ++mask) {
        GaussInt d = kOne;
        for (std::size_t i = 0; i < np; ++i)
            if (mask & (u64(1) << i)) d = d * fe.factors[i].first;
        acc += w.at(canonical_generator(d));
    }
    return acc;
}

// literal check of the sieve inequality 1_prime(n) <= sum_{d|n} lambda_d
inline bool sieve_upper_check(const GaussInt& n, const SieveWeights& w) {
    if (!is_odd(n)) throw std::domain_error("sieve_upper_check: n must be odd");
    double s = lambda_divisor_sum(n, w);
    double indicator = is_prime_element(n) ? 1.0 : 0.0;
    return s >= indicator - 1e-9;
}

inline void dump_lambda(const SieveWeights& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dump_lambda: cannot open " + path);
    out.precision(17);
    for (const auto& [d, v] : w.lambda) {
        out << to_string(d.re) << "," << to_string(d.im) << "," << to_string(norm(d)) << ","
            << v << "\n";
    }
}

}  // namespace hecke
