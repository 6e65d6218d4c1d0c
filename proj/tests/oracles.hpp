#pragma once
// Independent numerical oracles for the test suite. These deliberately avoid
// the library's evaluation path: the Fresnel oracle is plain adaptive
// Simpson quadrature of the defining integrals.

#include <algorithm>
#include <cmath>

namespace oracle {

template <typename Fn>
double simpson(const Fn&, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename Fn>
double adaptive_step(const Fn& f, double a, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0) return left + right;
    if (std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson integral of f over [a, b] to absolute tolerance tol.
/// Panels shrink with |q| so each spans about one oscillation of the
/// Fresnel integrands.
template <typename Fn>
double integrate(const Fn& f, double a, double b, double tol = 5e-11) {
    if (a == b) return 0.0;
    const double sign = b >= a ? 1.0 : -1.0;
    const double lo_abs = std::min(a * sign, b * sign);
    const double hi_abs = std::max(a * sign, b * sign);
    // breakpoints with width ~ 1/|q|
    double acc = 0.0;
    double q = lo_abs;
    const double total = std::max(1e-300, hi_abs - lo_abs);
    while (q < hi_abs) {
        const double step = std::min(1.0, 2.0 / std::max(1.0, std::fabs(q)));
        const double q2 = std::min(hi_abs, q + step);
        const double lo = q * sign, hi = q2 * sign;
        const double m = 0.5 * (lo + hi);
        const double flo = f(lo), fm = f(m), fhi = f(hi);
        const double whole = simpson(f, lo, hi, flo, fm, fhi);
        acc += adaptive_step(f, lo, hi, flo, fm, fhi, whole,
                             tol * ((q2 - q) / total), 36);
        q = q2;
    }
    return acc; // panel bounds carry the orientation
}

/// C(w) by quadrature of cos(pi q^2 / 2).
inline double fresnel_c(double w, double tol = 5e-11) {
    return integrate([](double q) { return std::cos(M_PI * q * q / 2.0); }, 0.0, w,
                     tol);
}

/// S(w) by quadrature of sin(pi q^2 / 2).
inline double fresnel_s(double w, double tol = 5e-11) {
    return integrate([](double q) { return std::sin(M_PI * q * q / 2.0); }, 0.0, w,
                     tol);
}

} // namespace oracle
