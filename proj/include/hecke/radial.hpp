#pragma once

// The radial Fourier transform
//
//   W~(t) = int int W(N(x+iy)) e~(-t(x+iy)) dx dy
//         = 4 int_0^{pi/2} int_0^infty cos(2 pi t r sin th) W(r^2) r dr dth
//
// and the two-dimensional Poisson summation identity
//
//   sum_{(m,1+i)=1} (m/n) W(N(m)/X)
//     = X/(2 N(n)) ((1+i)/n) sum_k (-1)^{N(k)} g(k,n) W~(sqrt(N(k) X / 2 N(n)))
//
// checked numerically with both sides computed independently.  The polar
// double integral is the reference evaluation; the equivalent Hankel form
// 2 pi int J_0(2 pi t r) W(r^2) r dr drives the tabulated fast path.

#include <cmath>
#include <functional>

#include "gauss_sum.hpp"
#include "quad.hpp"
#include "weights.hpp"

namespace hecke {

// radial window W acting on u = r^2, supported on [lo, hi]; u_breaks lists
// interior points where W is only C-infinity (panel fits align with them)
struct RadialWindow {
    std::function<double(double)> f;
    double lo = 0.5;
    double hi = 1.0;
    std::vector<double> u_breaks;

    double operator()(double u) const { return (u <= lo || u >= hi) ? 0.0 : f(u); }
};

inline RadialWindow window_from_cutoff(const SmoothCutoff& phi) {
    RadialWindow w{[phi](double u) { return phi(u); }, 0.5, 1.0, {}};
    w.u_breaks = {0.5 + phi.delta, 1.0 - phi.delta};
    return w;
}

namespace detail {

// r-integration segments between W's junction circles
inline std::vector<double> radial_segments(const RadialWindow& W) {
    std::vector<double> rs{std::sqrt(W.lo)};
    for (double u : W.u_breaks)
        if (u > W.lo && u < W.hi) rs.push_back(std::sqrt(u));
    rs.push_back(std::sqrt(W.hi));
    std::sort(rs.begin(), rs.end());
    return rs;
}

template <class F>
double radial_integral(const RadialWindow& W, double t, F&& f) {
    auto rs = radial_segments(W);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
        double a = rs[i], b = rs[i + 1];
        if (b - a < 1e-14) continue;
        int panels = std::max(6, int((b - a) * t * 1.5) + 1);
        acc += composite_gl16(f, a, b, panels);
    }
    return acc;
}

}  // namespace detail

// reference evaluation: the polar double integral
inline double w_tilde_polar(const RadialWindow& W, double t) {
    auto inner = [&](double theta) {
        double st = std::sin(theta);
        return detail::radial_integral(
            W, t, [&](double r) { return std::cos(kTwoPi * t * r * st) * W(r * r) * r; });
    };
    int tpanels = std::max(8, int(t * 0.75) + 1);
    return 4.0 * composite_gl16(inner, 0.0, 0.5 * M_PI, tpanels);
}

// Hankel form of the same transform
inline double w_tilde_hankel(const RadialWindow& W, double t) {
    return kTwoPi * detail::radial_integral(W, t, [&](double r) {
               return std::cyl_bessel_j(0.0, kTwoPi * t * r) * W(r * r) * r;
           });
}

namespace detail {

// in-place iterative radix-2 FFT
inline void fft_radix2(std::vector<cplx>& a) {
    std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = -2.0 * M_PI / double(len);
        cplx wl{std::cos(ang), std::sin(ang)};
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace detail

// Dense-grid table of W~(t) built in one shot from the slice function
//
//   S(y) = int W(x^2 + y^2) dx,   W~(t) = 2 int_0^ymax S(y) cos(2 pi t y) dy.
//
// S is fitted once as piecewise Chebyshev; the cosine transform is evaluated
// on a uniform t-grid by a single FFT (midpoint sampling of the compactly
// supported C-infinity integrand is spectrally accurate), and intermediate t
// come from 10-point Lagrange interpolation, which for this entire
// band-limited function is accurate to ~1e-13.
class WtildeTable {
  public:
    explicit WtildeTable(const RadialWindow& W, double /*tail_eps*/ = 1e-13,
                         double t_cap = 1500.0) {
        build_slice(W);
        const double Y = 32.0;          // zero-padded period; grid step 1/Y in t
        const std::size_t M = 1 << 18;  // y-step Y/M = 1.2e-4
        double h = Y / double(M);
        std::vector<cplx> buf(M, cplx{0.0, 0.0});
        for (std::size_t m = 0; m < M; ++m) {
            double y = (double(m) + 0.5) * h;
            if (y >= y_hi_) break;
            buf[m] = cplx{slice_eval(y), 0.0};
        }
        detail::fft_radix2(buf);
        dt_ = 1.0 / Y;
        std::size_t kmax = std::min(M / 2, std::size_t(t_cap / dt_));
        grid_.resize(kmax);
        for (std::size_t k = 0; k < kmax; ++k) {
            // half-sample shift: sum S((m+1/2)h) e^{-2 pi i k (m+1/2)/M}
            double ph = -M_PI * double(k) / double(M);
            cplx shift{std::cos(ph), std::sin(ph)};
            grid_[k] = 2.0 * h * (buf[k] * shift).real();
        }
        suffix_max_.resize(kmax);
        double running = 0.0;
        for (std::size_t k = kmax; k-- > 0;) {
            running = std::max(running, std::abs(grid_[k]));
            suffix_max_[k] = running;
        }
    }

    double eval(double t) const {
        if (t < 0.0) t = -t;  // W~ is even
        double pos = t / dt_;
        long center = long(pos + 0.5);
        if (center + 6 >= long(grid_.size())) return 0.0;
        // 10-point Lagrange centered at the nearest node; W~ is even, so
        // indices reflect across zero and the stencil never goes one-sided
        long base = center - 4;
        double acc = 0.0;
        for (long i = base; i < base + 10; ++i) {
            double li = 1.0;
            for (long j = base; j < base + 10; ++j) {
                if (i == j) continue;
                li *= (pos - double(j)) / (double(i) - double(j));
            }
            acc += li * grid_[std::size_t(i < 0 ? -i : i)];
        }
        return acc;
    }

    // upper bound for |W~| over [t, t_max); zero past the grid (values there
    // sit at the FFT noise floor ~1e-16)
    double envelope(double t) const {
        if (t < 0.0) t = 0.0;
        std::size_t k = std::size_t(t / dt_);
        if (k >= suffix_max_.size()) return 0.0;
        return suffix_max_[k];
    }

    double t_max() const { return double(grid_.size()) * dt_; }

  private:
    void build_slice(const RadialWindow& W) {
        y_hi_ = std::sqrt(W.hi);
        std::vector<double> ubreaks{W.lo};
        for (double u : W.u_breaks)
            if (u > W.lo && u < W.hi) ubreaks.push_back(u);
        auto S = [&](double y) {
            double hi2 = W.hi - y * y;
            if (hi2 <= 0.0) return 0.0;
            // integrate piecewise between the circles u = const where W has
            // its C-infinity junctions; each piece is analytic
            std::vector<double> xs{0.0};
            for (double u : ubreaks)
                if (u > y * y) xs.push_back(std::sqrt(u - y * y));
            xs.push_back(std::sqrt(hi2));
            std::sort(xs.begin(), xs.end());
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                if (xs[i + 1] - xs[i] < 1e-15) continue;
                acc += composite_gl16([&](double x) { return W(x * x + y * y); }, xs[i],
                                      xs[i + 1], 10);
            }
            return 2.0 * acc;
        };
        // S is analytic between the tangency radii sqrt(u) of W's junction
        // points; align panel boundaries with them
        std::vector<double> edges{0.0, std::sqrt(W.lo)};
        for (double u : W.u_breaks)
            if (u > W.lo && u < W.hi) edges.push_back(std::sqrt(u));
        edges.push_back(y_hi_);
        std::sort(edges.begin(), edges.end());
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            double a = edges[e], b = edges[e + 1];
            if (b - a < 1e-12) continue;
            int sub = std::max(3, int((b - a) / 0.05) + 1);
            for (int p = 0; p < sub; ++p) {
                slice_.add_panel(ChebPanel::fit(S, a + (b - a) * p / sub,
                                                a + (b - a) * (p + 1) / sub, 24));
            }
        }
    }

    double slice_eval(double y) const { return y >= y_hi_ ? 0.0 : slice_.eval(y); }

    ChebSeries slice_;
    double y_hi_ = 1.0;
    std::vector<double> grid_;
    std::vector<double> suffix_max_;
    double dt_ = 0.0625;
};

// ---------------------------------------------------------------------------
// Poisson identity check
// ---------------------------------------------------------------------------

struct PoissonCheckResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    u64 k_norm_cut = 0;
    bool tail_certified = false;
};

namespace detail {

// visit every lattice point with lo <= N(k) < hi
template <class F>
void for_norm_shell(u64 lo, u64 hi, F&& visit) {
    if (hi == 0) return;
    i64 amax = i64(isqrt_u64(hi - 1));
    for (i64 a = -amax; a <= amax; ++a) {
        u64 a2 = u64(a * a);
        u64 rem_hi = hi - 1 - a2;
        i64 bhi = i64(isqrt_u64(rem_hi));
        i64 blo = 0;
        if (lo > a2) {
            u64 rem_lo = lo - a2;
            blo = i64(isqrt_u64(rem_lo - 1)) + 1;  // smallest b with b^2 >= rem_lo
        }
        for (i64 b = blo; b <= bhi; ++b) {
            visit(a, b);
            if (b > 0) visit(a, -b);
        }
    }
}

}  // namespace detail

// Both sides of the Poisson identity, computed independently.  The dual sum
// runs over k in geometric norm shells and stops once three consecutive
// shells are each negligible (the empirical tail certificate).
inline PoissonCheckResult poisson_identity_check(const GaussInt& n, const RadialWindow& W,
                                                 const WtildeTable& wt, double X,
                                                 u64 n_cap = 1000, double x_cap = 10000.0,
                                                 u64 k_budget = 20000000) {
    if (!is_primary_fast(n)) throw std::domain_error("poisson_identity_check: n must be primary");
    if (u64(norm(n)) > n_cap || X > x_cap)
        throw std::domain_error("poisson_identity_check: desk-scale caps exceeded");

    const CharTable& tab = char_tables();

    // left side: lattice sum over odd m in the window support
    Kahan lhs;
    i64 amax = i64(std::sqrt(W.hi * X)) + 1;
    for (i64 a = -amax; a <= amax; ++a) {
        for (i64 b = -amax; b <= amax; ++b) {
            if (((a ^ b) & 1) == 0) continue;  // even m
            double nm = double(a) * a + double(b) * b;
            if (nm <= W.lo * X || nm >= W.hi * X) continue;
            GaussInt m{a, b};
            int s = residue_symbol_fast(m, n, tab);
            if (s == 0) continue;
            lhs.add(double(s) * W(nm / X));
        }
    }

    // right side
    double nn = to_double(norm(n));
    double pref = X / (2.0 * nn) * double(residue_symbol_fast(kOnePlusI, n, tab));
    auto targ = [&](double knorm) { return std::sqrt(knorm * X / (2.0 * nn)); };

    FactoredElement fe = n.is_unit() ? FactoredElement{} : factor(n);
    bool sqfree = n.is_unit() || is_squarefree(fe);
    std::vector<PrimeFieldSymbol> parts;
    if (sqfree && !n.is_unit())
        for (const auto& [q, e] : fe.factors) parts.emplace_back(q);
    double sqrt_nn = std::sqrt(nn);

    // g(k, n) for squarefree n is (ik/n) sqrt(N(n)) when (k,n) = 1, else 0;
    // general moduli fall back to the factored closed form
    auto gval = [&](const GaussInt& k) -> double {
        if (n.is_unit()) return 1.0;
        if (sqfree) {
            int s = 1;
            GaussInt ik = mul_i(k);
            for (const PrimeFieldSymbol& part : parts) {
                int v = part(ik);
                if (v == 0) return 0.0;
                s *= v;
            }
            return double(s) * sqrt_nn;
        }
        return gauss_sum_factored(k, fe).real();
    };

    Kahan rhs;
    // k = 0 term
    rhs.add(n.is_unit() ? wt.eval(0.0) : gauss_sum_factored(kZero, fe).real() * wt.eval(0.0));

    // Shells are bucketed by N(k): the symbol sums per norm value are exact
    // integers (times sqrt N(n)), and W~ is evaluated once per norm.  A shell
    // is quiet when its net contribution is below the residual budget plus
    // the table's noise floor aggregate; three consecutive quiet shells end
    // the sum.
    const double kTableFloor = 5e-13;
    double gmax = sqfree ? sqrt_nn : nn;
    std::vector<double> bucket;
    u64 shell_lo = 1;
    u64 visited = 0;
    int quiet_shells = 0;
    bool certified = false;
    while (shell_lo < u64(1) << 62) {
        u64 shell_hi = std::max(shell_lo + 8, u64(double(shell_lo) * 1.35));
        bucket.assign(std::size_t(shell_hi - shell_lo), 0.0);
        detail::for_norm_shell(shell_lo, shell_hi, [&](i64 a, i64 b) {
            ++visited;
            GaussInt k{a, b};
            double g = gval(k);
            if (g == 0.0) return;
            bucket[std::size_t(u64(a * a + b * b) - shell_lo)] += g;
        });
        double shell_net = 0.0;
        u64 shell_terms = 0;
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            if (bucket[i] == 0.0) continue;
            ++shell_terms;
            u64 kn = shell_lo + i;
            double term = bucket[i] * wt.eval(targ(double(kn)));
            if (kn & 1) term = -term;  // (-1)^{N(k)}
            rhs.add(term);
            shell_net += term;
        }
        double eps = 2e-8 * std::max(1.0, std::abs(pref * rhs.sum)) +
                     std::abs(pref) * double(shell_terms) * gmax * kTableFloor;
        if (std::abs(pref) * std::abs(shell_net) < eps && targ(double(shell_lo)) > 2.0) {
            if (++quiet_shells >= 3) { certified = true; shell_lo = shell_hi; break; }
        } else {
            quiet_shells = 0;
        }
        shell_lo = shell_hi;
        if (visited > k_budget) break;
        if (targ(double(shell_lo)) >= wt.t_max()) break;  // beyond the table, values read 0
    }

    PoissonCheckResult res;
    res.lhs = lhs.sum;
    res.rhs = pref * rhs.sum;
    res.abs_diff = std::abs(res.lhs - res.rhs);
    res.k_norm_cut = shell_lo;
    res.tail_certified = certified;
    return res;
}

}  // namespace hecke
