#pragma once
// Fresnel integrals C(w), S(w) and the complex aperture term
// Fr(w1, w2) = [C(w2) - C(w1)] - j[S(w2) - S(w1)].
//
// Evaluation: Taylor series for |w| <= 1.6, auxiliary functions f, g via a
// Chebyshev expansion in (1.6/w)^4 beyond. Absolute error is below 1e-13
// everywhere (contract: 1e-9 against the defining integrals).
//
// Infinities are legal inputs: C(+/-inf) = S(+/-inf) = +/-0.5 exactly.
// A batch entry point dispatches at runtime to an AVX2 kernel when the CPU
// supports it; the scalar kernel is the reference and both produce bitwise
// identical results.

#include <complex>
#include <cstddef>
#include <span>

namespace fresnel2d {

struct FresnelPair {
    double c; // C(w)
    double s; // S(w)
};

/// C(w), S(w). Throws std::invalid_argument on NaN.
FresnelPair fresnel_cs(double w);

/// Fr(w1, w2) = [C(w2)-C(w1)] - j[S(w2)-S(w1)]. Throws on NaN.
std::complex<double> fr_term(double w1, double w2);

/// Fresnel argument w = sqrt(2 f / (c rho)) * (u - u0).
/// Throws std::invalid_argument unless f > 0 and rho > 0.
double fresnel_arg(double u, double u0, double f_hz, double rho_m);

/// Vectorized C/S over a batch; NaN inputs propagate.
void fresnel_cs_batch(std::span<const double> w, std::span<double> c,
                      std::span<double> s);

// Kernel selection (mostly for tests; auto picks AVX2 when available).
enum class FresnelKernel { automatic, scalar, avx2 };
void set_fresnel_kernel(FresnelKernel k); // throws if the kernel is unavailable
const char* fresnel_kernel_name();

namespace detail {
void fresnel_cs_scalar(const double* w, double* c, double* s, std::size_t n);
void fresnel_cs_avx2(const double* w, double* c, double* s, std::size_t n);
bool avx2_available();
} // namespace detail

} // namespace fresnel2d
