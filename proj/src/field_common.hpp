#pragma once
// Shared pieces of the field computation; the per-point operations and the
// batched trace evaluator must combine terms identically so that both routes
// produce the same bits.

#include "fresnel2d/constants.hpp"

#include <cmath>
#include <complex>

namespace fresnel2d::detail {

inline constexpr std::complex<double> kOneMinusJ{1.0, -1.0};

// e^{j (2 pi r / lambda + extra)} with the cycle count folded first.
inline std::complex<double> phase_factor(double r, double lambda,
                                         double extra_rad = 0.0) {
    const double cycles = r / lambda;
    const double frac = cycles - std::floor(cycles);
    const double ph = 2.0 * kPi * frac + extra_rad;
    return {std::cos(ph), std::sin(ph)};
}

} // namespace fresnel2d::detail
