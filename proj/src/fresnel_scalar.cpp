// Scalar reference kernel for the Fresnel integrals. The AVX2 kernel mirrors
// this operation-for-operation (fma included), so the two are bitwise equal.

#include "fresnel_coeffs.hpp"
#include "fresnel2d/constants.hpp"
#include "fresnel2d/fresnel.hpp"

#include <cmath>

namespace fresnel2d::detail {

namespace {

// sin/cos of (pi/2)*t for t in [0, 4): quadrant split plus short Taylor forms.
inline void sincos_half_pi(double t, double& sn, double& cs) {
    const double q = std::nearbyint(t); // 0..4, nearest-even like the SIMD path
    const double u = t - q;             // |u| <= 0.5
    const double u2 = u * u;
    double ps = kSinP[kTrigTerms - 1];
    double pc = kCosP[kTrigTerms - 1];
    for (int k = static_cast<int>(kTrigTerms) - 2; k >= 0; --k) {
        ps = std::fma(ps, u2, kSinP[k]);
        pc = std::fma(pc, u2, kCosP[k]);
    }
    const double su = u * ps;
    const double cu = pc;
    switch (static_cast<int>(q) & 3) {
        case 0: sn = su;  cs = cu;  break;
        case 1: sn = cu;  cs = -su; break;
        case 2: sn = -su; cs = -cu; break;
        default: sn = -cu; cs = su; break;
    }
}

inline double clenshaw(const double* c, std::size_t n, double s) {
    const double two_s = 2.0 * s;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t i = n; i-- > 1;) {
        const double b0 = std::fma(two_s, b1, c[i] - b2);
        b2 = b1;
        b1 = b0;
    }
    return std::fma(s, b1, c[0] - b2);
}

inline void eval_one(double w, double& cout, double& sout) {
    const double ax = std::fabs(w);
    double c, s;
    if (ax <= kSeriesCut) {
        const double z = (ax * ax) * (ax * ax);
        double pc = kSeriesC[kSeriesTerms - 1];
        double ps = kSeriesS[kSeriesTerms - 1];
        for (int k = static_cast<int>(kSeriesTerms) - 2; k >= 0; --k) {
            pc = std::fma(pc, z, kSeriesC[k]);
            ps = std::fma(ps, z, kSeriesS[k]);
        }
        c = ax * pc;
        s = (ax * ax * ax) * ps;
    } else if (ax > kHugeCut) {
        // covers +/-inf; f, g < 1e-100 here
        c = 0.5;
        s = 0.5;
    } else {
        const double r = kSeriesCut / ax;
        const double u = (r * r) * (r * r);
        const double sv = std::fma(2.0, u, -1.0);
        const double f = clenshaw(kChebF, kChebTerms, sv) / (kPi * ax);
        const double g =
            clenshaw(kChebG, kChebTerms, sv) / ((kPi * kPi) * (ax * ax * ax));
        // exact w^2 mod 4 via two-product
        const double hi = ax * ax;
        const double lo = std::fma(ax, ax, -hi);
        double t = (hi - 4.0 * std::floor(hi * 0.25)) + lo;
        t -= 4.0 * std::floor(t * 0.25);
        double sp, cp;
        sincos_half_pi(t, sp, cp);
        c = 0.5 + (f * sp - g * cp);
        s = 0.5 - (g * sp + f * cp);
    }
    if (w < 0.0) {
        c = -c;
        s = -s;
    }
    if (std::isnan(w)) {
        c = w;
        s = w;
    }
    cout = c;
    sout = s;
}

} // namespace

void fresnel_cs_scalar(const double* w, double* c, double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) eval_one(w[i], c[i], s[i]);
}

} // namespace fresnel2d::detail
