#pragma once

// The second-moment functional
//
//   J = -2 int H H' + (1/theta) int H H'' + (1/theta) int (H')^2
//       - 1/(2 theta^2) int H' H'' + 1/(24 theta^3) int (H'')^2    (all on [0,1])
//
// the non-vanishing proportion rho(theta) = (1/2)(1/2 - theta)(1 - (1+2theta)^{-3}),
// its maximizer theta_0 (the positive root of 16 t^4 + 32 t^3 + 24 t^2 + 12 t - 3),
// and the predicted moment main terms.

#include <cmath>

#include "mollifier.hpp"
#include "quad.hpp"

namespace hecke {

// quadrature route, usable with any twice-differentiable shape
inline double jfrak_quadrature(double theta, const HShape& H) {
    if (theta <= 0.0) throw std::domain_error("jfrak: theta must be positive");
    auto hh = [&](double x) { return H(x) * H.deriv1(x); };
    auto hpp = [&](double x) { return H(x) * H.deriv2(x); };
    auto p2 = [&](double x) { return H.deriv1(x) * H.deriv1(x); };
    auto pp = [&](double x) { return H.deriv1(x) * H.deriv2(x); };
    auto pp2 = [&](double x) { return H.deriv2(x) * H.deriv2(x); };
    double i1 = adaptive_simpson(hh, 0.0, 1.0, 1e-13);
    double i2 = adaptive_simpson(hpp, 0.0, 1.0, 1e-13);
    double i3 = adaptive_simpson(p2, 0.0, 1.0, 1e-13);
    double i4 = adaptive_simpson(pp, 0.0, 1.0, 1e-13);
    double i5 = adaptive_simpson(pp2, 0.0, 1.0, 1e-13);
    return -2.0 * i1 + i2 / theta + i3 / theta - i4 / (2.0 * theta * theta) +
           i5 / (24.0 * theta * theta * theta);
}

// exact route for the polynomial H_*; the five integrals are elementary
inline double jfrak_exact_hstar(double theta) {
    if (theta <= 0.0) throw std::domain_error("jfrak: theta must be positive");
    double c = 2.0 + 1.5 / theta;
    // H = c + (1-2c) x + (c-2) x^2 + x^3
    double a0 = 1.0 - 2.0 * c;  // H'(0)
    double i1 = -0.5 * c * c;   // [H^2/2] with H(1) = 0
    double a1 = 2.0 * (c - 2.0), a2 = 3.0;
    double i3 = a0 * a0 + a1 * a1 / 3.0 + a2 * a2 / 5.0 + a0 * a1 + (2.0 / 3.0) * a0 * a2 +
                0.5 * a1 * a2;
    double i2 = -c * a0 - i3;        // by parts, H'(1) contributes H(1) H'(1) = 0
    double i4 = -0.5 * a0 * a0;      // (H'(1)^2 - H'(0)^2)/2 with H'(1) = 0
    double i5 = 4.0 * (c - 2.0) * (c - 2.0) + 12.0 * (c - 2.0) + 12.0;
    return -2.0 * i1 + i2 / theta + i3 / theta - i4 / (2.0 * theta * theta) +
           i5 / (24.0 * theta * theta * theta);
}

inline double rho_closed(double theta) {
    double u = 1.0 + 2.0 * theta;
    return 0.5 * (0.5 - theta) * (1.0 - 1.0 / (u * u * u));
}

// second route to the same proportion: Cauchy-Schwarz through the moment
// main terms, rho = (1/2)(1/2 - theta) (H(0) - H'(0)/(2 theta))^2 / J
inline double rho_via_moments(double theta) {
    HShape H;
    H.theta = theta;
    double a = H.h0() - H.hp0() / (2.0 * theta);
    return 0.5 * (0.5 - theta) * a * a / jfrak_exact_hstar(theta);
}

inline double theta_quartic(double t) {
    return ((16.0 * t + 32.0) * t + 24.0) * t * t + 12.0 * t - 3.0;
}

struct ThetaOpt {
    double theta0 = 0.0;
    double rho0 = 0.0;
};

// bisection on the quartic over [0.1, 0.3]
inline ThetaOpt theta_opt() {
    double lo = 0.1, hi = 0.3;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (theta_quartic(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    ThetaOpt r;
    r.theta0 = 0.5 * (lo + hi);
    r.rho0 = rho_closed(r.theta0);
    return r;
}

// paper-normalization moment main terms: the prime sums count all four unit
// associates per ideal
struct PredictedMoments {
    double s1_main = 0.0;   // 2 (H(0) - H'(0)/(2 theta)) X
    double s2_upper = 0.0;  // (1 + delta) (J / vartheta) 2X
};

inline PredictedMoments predicted_moments(const MollifierSpec& spec, double delta) {
    PredictedMoments p;
    double a = spec.shape.h0() - spec.shape.hp0() / (2.0 * spec.theta);
    p.s1_main = 2.0 * a * spec.x_scale;
    double jf = spec.shape.kind == HShape::Kind::polynomial_hstar ||
                        spec.shape.kind == HShape::Kind::smoothed_hstar
                    ? jfrak_exact_hstar(spec.theta)
                    : jfrak_quadrature(spec.theta, spec.shape);
    p.s2_upper = (1.0 + delta) * (jf / spec.vartheta) * 2.0 * spec.x_scale;
    return p;
}

}  // namespace hecke
