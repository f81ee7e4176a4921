#pragma once

// The AFE smoothing weights V_j and the census cutoff Phi.
//
//   V_j(xi) = (1/2 pi i) int_(c) w_j(s) xi^{-s} ds/s,
//   w_j(s)  = (2^{5/2}/pi)^{js} (Gamma(1/2+s)/Gamma(1/2))^j.
//
// The j = 1 weight collapses under Mellin inversion to the closed form
// erfc(sqrt(pi xi / 2^{5/2})); the identity is exercised against the contour
// quadrature by tests, which keeps the two routes independent.  For j = 2 the
// contour quadrature is the definition; a piecewise-Chebyshev table in
// u = sqrt(xi) (log V_2 is asymptotically linear in u) accelerates the AFE
// inner loops and is itself validated against the direct quadrature.

#include <cmath>
#include <memory>

#include "quad.hpp"
#include "special.hpp"

namespace hecke {

inline constexpr double kWArgScale = 1.8006326323142123336;  // 2^{5/2}/pi

inline cplx w_weight(int j, cplx s) {
    static const double lg_half = 0.57236494292470041500;  // lgamma(1/2)
    cplx lg = lgamma_complex(0.5 + s);
    return std::exp(double(j) * (s * std::log(kWArgScale) + lg - lg_half));
}

// contour integral on Re(s) = c with trapezoid refinement; assumes c != 0
inline double v_weight_contour(int j, double xi, double c, double tol = 1e-13) {
    const double lxi = std::log(xi);
    auto f = [&](double t) -> double {
        cplx s{c, t};
        cplx val = w_weight(j, s) * std::exp(-s * lxi) / s;
        return val.real();
    };
    double h = std::min(0.25, 6.283185307179586 / (8.0 * (1.0 + std::abs(lxi))));
    double prev = 0.0;
    for (int pass = 0; pass < 14; ++pass) {
        double sum = 0.5 * f(0.0);
        int quiet = 0;
        for (int k = 1;; ++k) {
            double term = f(k * h);
            sum += term;
            if (std::abs(term) < 1e-22 * (1.0 + std::abs(sum))) {
                if (++quiet >= 4 && k * h > 10.0) break;
            } else {
                quiet = 0;
            }
            if (k > 4000000) throw std::runtime_error("v_weight_contour: no tail decay");
        }
        double value = sum * h / M_PI;
        if (pass > 0 && std::abs(value - prev) < tol * (1.0 + std::abs(value))) return value;
        prev = value;
        h *= 0.5;
    }
    return prev;
}

// reference evaluation: shifted contour with residue 1 for small xi, direct
// line Re(s) = 2 otherwise
inline double v_weight_quadrature(int j, double xi, double tol = 1e-13) {
    if (xi <= 0.0) throw std::domain_error("V_j: xi must be positive");
    if (xi < 1.0) return 1.0 + v_weight_contour(j, xi, -0.25, tol);
    return v_weight_contour(j, xi, 2.0, tol);
}

// Mellin-inversion closed form for j = 1
inline double v1_closed(double xi) {
    if (xi <= 0.0) throw std::domain_error("V_1: xi must be positive");
    return std::erfc(std::sqrt(M_PI * xi * 0.17677669529663688110));  // pi xi / 2^{5/2}
}

// ---------------------------------------------------------------------------
// V_2 accelerator
// ---------------------------------------------------------------------------

class V2Table {
  public:
    V2Table() {
        // dyadic panels in u = sqrt(xi) near zero (V_2 - 1 has a u log u
        // component there), unit panels out to the decay range
        double lo = std::ldexp(1.0, -11);
        for (double a = lo; a < 1.0; a *= 2.0) add(a, 2.0 * a);
        for (double a = 1.0; a < kUHi; a += 1.0) add(a, a + 1.0);
    }

    double eval(double xi) const {
        if (xi <= 0.0) throw std::domain_error("V_2: xi must be positive");
        double u = std::sqrt(xi);
        if (u >= kUHi) return 0.0;  // V_2 < 1e-18 beyond the table
        if (u < series_.lo()) return v_weight_quadrature(2, xi);
        return series_.eval(u);
    }

    static const V2Table& instance() {
        static const V2Table tab;
        return tab;
    }

  private:
    static constexpr double kUHi = 48.0;

    void add(double a, double b) {
        series_.add_panel(ChebPanel::fit(
            [](double u) { return v_weight_quadrature(2, u * u); }, a, b, 24));
    }

    ChebSeries series_;
};

inline double v_weight(int j, double xi) {
    if (j == 1) return v1_closed(xi);
    if (j == 2) return V2Table::instance().eval(xi);
    throw std::domain_error("v_weight: j must be 1 or 2");
}

// ---------------------------------------------------------------------------
// smooth cutoff Phi
// ---------------------------------------------------------------------------

// C-infinity step: 0 at t <= 0, 1 at t >= 1
inline double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

// supported on [1/2, 1], equal to 1 on [1/2 + 1/log X, 1 - 1/log X]
struct SmoothCutoff {
    double x_scale = 100.0;
    double delta = 0.0;

    explicit SmoothCutoff(double X) : x_scale(X) {
        if (X < 10.0) throw std::domain_error("SmoothCutoff: X >= 10 required");
        delta = 1.0 / std::log(X);
    }

    double operator()(double x) const {
        if (x <= 0.5 || x >= 1.0) return 0.0;
        return smooth_step((x - 0.5) / delta) * smooth_step((1.0 - x) / delta);
    }

    double derivative(double x, int order = 1) const {
        // central differences; only used by shape tests
        double h = 1e-5;
        if (order == 1) return ((*this)(x + h) - (*this)(x - h)) / (2.0 * h);
        if (order == 2) return ((*this)(x + h) - 2.0 * (*this)(x) + (*this)(x - h)) / (h * h);
        throw std::domain_error("SmoothCutoff::derivative: order 1 or 2");
    }
};

// Mellin transform of Phi restricted to its support
inline double phi_hat(const SmoothCutoff& phi, double s) {
    return adaptive_simpson([&](double t) { return phi(t) * std::pow(t, s - 1.0); },
                            0.5, 1.0, 1e-14);
}

}  // namespace hecke
