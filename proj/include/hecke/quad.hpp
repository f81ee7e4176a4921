#pragma once

// Small quadrature toolbox: 16-point Gauss-Legendre panels, adaptive Simpson,
// and Chebyshev interpolation panels used to accelerate repeated evaluation
// of smooth one-dimensional functions.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hecke {

// compensated accumulation
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct KahanC {
    std::complex<double> sum{0.0, 0.0};
    std::complex<double> c{0.0, 0.0};
    void add(std::complex<double> v) {
        std::complex<double> y = v - c;
        std::complex<double> t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// nodes/weights for 16-point Gauss-Legendre on [-1,1]
inline constexpr std::array<double, 8> kGL16Nodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr std::array<double, 8> kGL16Weights = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <class F>
double gl16(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) {
        double dx = half * kGL16Nodes[i];
        acc += kGL16Weights[i] * (f(mid + dx) + f(mid - dx));
    }
    return acc * half;
}

template <class F>
double composite_gl16(F&& f, double a, double b, int panels) {
    if (panels < 1) panels = 1;
    double h = (b - a) / panels;
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) acc += gl16(f, a + k * h, a + (k + 1) * h);
    return acc;
}

namespace detail {
template <class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12, int depth = 40) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// ---------------------------------------------------------------------------
// Chebyshev panel interpolation
// ---------------------------------------------------------------------------

struct ChebPanel {
    double a = 0.0, b = 1.0;
    std::vector<double> coef;

    template <class F>
    static ChebPanel fit(F&& f, double a, double b, int degree) {
        ChebPanel p;
        p.a = a;
        p.b = b;
        int n = degree + 1;
        std::vector<double> fx(n);
        for (int k = 0; k < n; ++k) {
            double x = std::cos(M_PI * (k + 0.5) / n);
            fx[k] = f(0.5 * (a + b) + 0.5 * (b - a) * x);
        }
        p.coef.resize(n);
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += fx[k] * std::cos(M_PI * j * (k + 0.5) / n);
            p.coef[j] = 2.0 * s / n;
        }
        p.coef[0] *= 0.5;
        return p;
    }

    double eval(double x) const {
        double t = (2.0 * x - a - b) / (b - a);
        double d = 0.0, dd = 0.0;
        for (int j = int(coef.size()) - 1; j >= 1; --j) {
            double sv = d;
            d = 2.0 * t * d - dd + coef[j];
            dd = sv;
        }
        return t * d - dd + coef[0];
    }
};

// piecewise Chebyshev model over contiguous panels
class ChebSeries {
  public:
    void add_panel(ChebPanel p) { panels_.push_back(std::move(p)); }

    double eval(double x) const {
        // panels are contiguous and sorted; binary search by left endpoint
        std::size_t lo = 0, hi = panels_.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (panels_[mid].a <= x) lo = mid; else hi = mid;
        }
        return panels_[lo].eval(x);
    }

    double lo() const { return panels_.empty() ? 0.0 : panels_.front().a; }
    double hi() const { return panels_.empty() ? 0.0 : panels_.back().b; }
    bool empty() const { return panels_.empty(); }

  private:
    std::vector<ChebPanel> panels_;
};

}  // namespace hecke
