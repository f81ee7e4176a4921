#pragma once

// Mollifier machinery: the weight shape H (the optimal polynomial
// H_*(x) = (1-x)^2 (2 + 3/(2 theta) + x) on [0,1], plus an epsilon-smoothed
// variant), the coefficients b_m = mu(m) H(log N(m)/log M), and the short
// Dirichlet polynomial M(pi) = sum b_m chi_{(1+i)^5 pi}(m) / sqrt(N(m)).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "enumerate.hpp"
#include "symbols.hpp"
#include "weights.hpp"

namespace hecke {

struct HShape {
    enum class Kind { polynomial_hstar, smoothed_hstar };

    Kind kind = Kind::polynomial_hstar;
    double theta = 0.17409;
    double eps = 0.01;  // collar width of the smoothed variant

    double c() const { return 2.0 + 1.5 / theta; }

    // value on [0,1]; zero outside the support
    double operator()(double x) const {
        if (x >= 1.0) return 0.0;
        if (kind == Kind::polynomial_hstar) {
            if (x < 0.0) return 0.0;
            return hstar(x);
        }
        // smoothed: identical on [0,1], C-infinity rolloff on [-eps, 0)
        if (x < -eps) return 0.0;
        if (x < 0.0) return hstar(0.0) == 0.0 ? 0.0 : hstar(x) * smooth_step((x + eps) / eps);
        return hstar(x);
    }

    double deriv1(double x) const {
        if (x < 0.0 || x > 1.0) return 0.0;
        double u = 1.0 - x;
        return -2.0 * u * (c() + x) + u * u;
    }

    double deriv2(double x) const {
        if (x < 0.0 || x > 1.0) return 0.0;
        return 2.0 * (c() - 2.0) + 6.0 * x;
    }

    double h0() const { return (*this)(0.0); }
    double hp0() const { return deriv1(0.0); }

  private:
    double hstar(double x) const {
        double u = 1.0 - x;
        return u * u * (c() + x);
    }
};

struct MollifierSpec {
    double x_scale = 10000.0;
    double theta = 0.17409;
    double vartheta = 0.14;
    HShape shape;

    MollifierSpec(double X, double th, double vth, HShape::Kind kind = HShape::Kind::polynomial_hstar)
        : x_scale(X), theta(th), vartheta(vth) {
        if (!(th > 0.0 && th < 0.5)) throw std::domain_error("MollifierSpec: theta in (0, 1/2)");
        if (!(th + 2.0 * vth < 0.5))
            throw std::domain_error("MollifierSpec: need theta + 2*vartheta < 1/2");
        shape.theta = th;
        shape.kind = kind;
    }

    double mollifier_length() const { return std::pow(x_scale, theta); }  // M = X^theta
    double sieve_radius() const { return std::pow(x_scale, vartheta); }   // R = X^vartheta
};

// b_m = mu(m) H(log N(m) / log M) for primary m with N(m) <= M
inline double mollifier_b(const GaussInt& m, const MollifierSpec& spec) {
    if (!is_primary_fast(m)) throw std::domain_error("mollifier_b: m must be primary");
    double M = spec.mollifier_length();
    double nm = to_double(norm(m));
    if (nm > M) throw std::domain_error("mollifier_b: N(m) exceeds the mollifier length");
    int mu = mobius(factor(m));
    if (mu == 0) return 0.0;
    double x = m.is_one() ? 0.0 : std::log(nm) / std::log(M);
    return double(mu) * spec.shape(x);
}

// the terms of M(.) depend only on the MollifierSpec; precompute them once
struct MollifierTerms {
    std::vector<GaussInt> m;       // primary, squarefree, N(m) <= M
    std::vector<double> weight;    // b_m / sqrt(N(m))

    explicit MollifierTerms(const MollifierSpec& spec) {
        double M = spec.mollifier_length();
        for (const GaussInt& z : enumerate_primary(u64(M))) {
            double b = mollifier_b(z, spec);
            if (b == 0.0) continue;
            m.push_back(z);
            weight.push_back(b / std::sqrt(to_double(norm(z))));
        }
    }
};

// M(pi) = sum_m b_m chi_{(1+i)^5 pi}(m) / sqrt(N(m))
inline double mollifier_value(const GaussInt& pi, const MollifierTerms& terms,
                              const CharTable& tab = char_tables()) {
    GaussInt c = pow(kOnePlusI, 5) * pi;
    Kahan acc;
    for (std::size_t i = 0; i < terms.m.size(); ++i) {
        int s = chi_eval(c, terms.m[i], tab);
        if (s != 0) acc.add(double(s) * terms.weight[i]);
    }
    return acc.sum;
}

// oracle variant: naive double loop with the factorization-based symbol
inline double mollifier_value_naive(const GaussInt& pi, const MollifierSpec& spec) {
    GaussInt c = pow(kOnePlusI, 5) * pi;
    double M = spec.mollifier_length();
    Kahan acc;
    for (const GaussInt& z : enumerate_primary(u64(M))) {
        double b = mollifier_b(z, spec);
        if (b == 0.0) continue;
        int s = residue_symbol(c, z);
        acc.add(double(s) * b / std::sqrt(to_double(norm(z))));
    }
    return acc.sum;
}

}  // namespace hecke
