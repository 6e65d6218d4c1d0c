#include "fresnel2d/fresnel.hpp"

#include "fresnel2d/constants.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace fresnel2d {

namespace {

using KernelFn = void (*)(const double*, double*, double*, std::size_t);

KernelFn pick_kernel(FresnelKernel k) {
    switch (k) {
        case FresnelKernel::scalar:
            return &detail::fresnel_cs_scalar;
        case FresnelKernel::avx2:
            if (!detail::avx2_available())
                throw std::runtime_error("AVX2 kernel not available on this CPU");
            return &detail::fresnel_cs_avx2;
        case FresnelKernel::automatic:
        default:
            return detail::avx2_available() ? &detail::fresnel_cs_avx2
                                            : &detail::fresnel_cs_scalar;
    }
}

std::atomic<KernelFn> g_kernel{nullptr};

KernelFn active_kernel() {
    KernelFn fn = g_kernel.load(std::memory_order_relaxed);
    if (!fn) {
        fn = pick_kernel(FresnelKernel::automatic);
        g_kernel.store(fn, std::memory_order_relaxed);
    }
    return fn;
}

} // namespace

namespace detail {
bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}
} // namespace detail

void set_fresnel_kernel(FresnelKernel k) { g_kernel.store(pick_kernel(k)); }

const char* fresnel_kernel_name() {
    return active_kernel() == &detail::fresnel_cs_avx2 ? "avx2" : "scalar";
}

FresnelPair fresnel_cs(double w) {
    if (std::isnan(w)) throw std::invalid_argument("fresnel_cs: invalid argument (NaN)");
    double c, s;
    detail::fresnel_cs_scalar(&w, &c, &s, 1);
    return {c, s};
}

std::complex<double> fr_term(double w1, double w2) {
    if (std::isnan(w1) || std::isnan(w2))
        throw std::invalid_argument("fr_term: invalid argument (NaN)");
    const FresnelPair a = fresnel_cs(w1);
    const FresnelPair b = fresnel_cs(w2);
    return {b.c - a.c, -(b.s - a.s)};
}

double fresnel_arg(double u, double u0, double f_hz, double rho_m) {
    if (!(f_hz > 0.0)) throw std::invalid_argument("fresnel_arg: invalid frequency");
    if (!(rho_m > 0.0)) throw std::invalid_argument("fresnel_arg: invalid geometry (rho <= 0)");
    return std::sqrt(2.0 * f_hz / (kSpeedOfLight * rho_m)) * (u - u0);
}

void fresnel_cs_batch(std::span<const double> w, std::span<double> c,
                      std::span<double> s) {
    if (w.size() != c.size() || w.size() != s.size())
        throw std::invalid_argument("fresnel_cs_batch: size mismatch");
    active_kernel()(w.data(), c.data(), s.data(), w.size());
}

} // namespace fresnel2d
