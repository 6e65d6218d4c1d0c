// AVX2+FMA kernel for the Fresnel integrals, 4 doubles per pass. Mirrors the
// scalar reference kernel operation-for-operation; equivalence tests assert
// bitwise identical output. This translation unit is the only one compiled
// with -mavx2 -mfma.

#include "fresnel_coeffs.hpp"
#include "fresnel2d/constants.hpp"
#include "fresnel2d/fresnel.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace fresnel2d::detail {

namespace {

inline __m256d clenshaw4(const double* c, std::size_t n, __m256d s) {
    const __m256d two_s = _mm256_add_pd(s, s);
    __m256d b1 = _mm256_setzero_pd();
    __m256d b2 = _mm256_setzero_pd();
    for (std::size_t i = n; i-- > 1;) {
        const __m256d ci = _mm256_set1_pd(c[i]);
        const __m256d b0 = _mm256_fmadd_pd(two_s, b1, _mm256_sub_pd(ci, b2));
        b2 = b1;
        b1 = b0;
    }
    return _mm256_fmadd_pd(s, b1, _mm256_sub_pd(_mm256_set1_pd(c[0]), b2));
}

// sin/cos of (pi/2)*t, t in [0, 4): same quadrant logic as the scalar kernel.
inline void sincos_half_pi4(__m256d t, __m256d& sn, __m256d& cs) {
    const __m256d q =
        _mm256_round_pd(t, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d u = _mm256_sub_pd(t, q);
    const __m256d u2 = _mm256_mul_pd(u, u);
    __m256d ps = _mm256_set1_pd(kSinP[kTrigTerms - 1]);
    __m256d pc = _mm256_set1_pd(kCosP[kTrigTerms - 1]);
    for (int k = static_cast<int>(kTrigTerms) - 2; k >= 0; --k) {
        ps = _mm256_fmadd_pd(ps, u2, _mm256_set1_pd(kSinP[k]));
        pc = _mm256_fmadd_pd(pc, u2, _mm256_set1_pd(kCosP[k]));
    }
    const __m256d su = _mm256_mul_pd(u, ps);
    const __m256d cu = pc;

    // quadrant from q mod 4: 0:(su,cu) 1:(cu,-su) 2:(-su,-cu) 3:(-cu,su)
    const __m128i qi = _mm256_cvttpd_epi32(q);
    const __m128i qm = _mm_and_si128(qi, _mm_set1_epi32(3));
    const __m256d swap_mask = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(
        _mm_cmpeq_epi32(_mm_and_si128(qm, _mm_set1_epi32(1)),
                        _mm_set1_epi32(1))));
    const __m256d hi_mask = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(
        _mm_cmpgt_epi32(qm, _mm_set1_epi32(1)))); // quadrants 2,3
    const __m256d neg = _mm256_set1_pd(-0.0);

    __m256d s0 = _mm256_blendv_pd(su, cu, swap_mask);
    __m256d c0 = _mm256_blendv_pd(cu, _mm256_xor_pd(su, neg), swap_mask);
    sn = _mm256_blendv_pd(s0, _mm256_xor_pd(s0, neg), hi_mask);
    cs = _mm256_blendv_pd(c0, _mm256_xor_pd(c0, neg), hi_mask);
}

inline __m256d floor4(__m256d x) {
    return _mm256_round_pd(x, _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
}

inline void eval4(__m256d w, __m256d& cout, __m256d& sout) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d ax = _mm256_and_pd(w, abs_mask);
    const __m256d cut = _mm256_set1_pd(kSeriesCut);
    const __m256d series_mask = _mm256_cmp_pd(ax, cut, _CMP_LE_OQ);
    const __m256d huge_mask =
        _mm256_cmp_pd(ax, _mm256_set1_pd(kHugeCut), _CMP_GT_OQ);

    // --- series branch
    const __m256d x2s = _mm256_mul_pd(ax, ax);
    const __m256d z = _mm256_mul_pd(x2s, x2s);
    __m256d pc = _mm256_set1_pd(kSeriesC[kSeriesTerms - 1]);
    __m256d ps = _mm256_set1_pd(kSeriesS[kSeriesTerms - 1]);
    for (int k = static_cast<int>(kSeriesTerms) - 2; k >= 0; --k) {
        pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kSeriesC[k]));
        ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kSeriesS[k]));
    }
    const __m256d c_series = _mm256_mul_pd(ax, pc);
    const __m256d s_series =
        _mm256_mul_pd(_mm256_mul_pd(x2s, ax), ps);

    // --- tail branch (clamp lanes <= cut to a harmless value to avoid
    // spurious overflow; their results are discarded by the blend)
    const __m256d ax_t = _mm256_blendv_pd(ax, _mm256_set1_pd(2.0), series_mask);
    const __m256d r = _mm256_div_pd(cut, ax_t);
    const __m256d r2 = _mm256_mul_pd(r, r);
    const __m256d u = _mm256_mul_pd(r2, r2);
    const __m256d sv = _mm256_fmadd_pd(_mm256_set1_pd(2.0), u, _mm256_set1_pd(-1.0));
    const __m256d pi = _mm256_set1_pd(kPi);
    const __m256d f =
        _mm256_div_pd(clenshaw4(kChebF, kChebTerms, sv), _mm256_mul_pd(pi, ax_t));
    const __m256d x3 = _mm256_mul_pd(_mm256_mul_pd(ax_t, ax_t), ax_t);
    const __m256d g = _mm256_div_pd(clenshaw4(kChebG, kChebTerms, sv),
                                    _mm256_mul_pd(_mm256_mul_pd(pi, pi), x3));
    const __m256d hi = _mm256_mul_pd(ax_t, ax_t);
    const __m256d lo = _mm256_fmsub_pd(ax_t, ax_t, hi);
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d quarter = _mm256_set1_pd(0.25);
    __m256d t = _mm256_add_pd(
        _mm256_sub_pd(hi, _mm256_mul_pd(four, floor4(_mm256_mul_pd(hi, quarter)))),
        lo);
    t = _mm256_sub_pd(t, _mm256_mul_pd(four, floor4(_mm256_mul_pd(t, quarter))));
    __m256d sp, cp;
    sincos_half_pi4(t, sp, cp);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d c_tail =
        _mm256_add_pd(half, _mm256_sub_pd(_mm256_mul_pd(f, sp), _mm256_mul_pd(g, cp)));
    const __m256d s_tail =
        _mm256_sub_pd(half, _mm256_add_pd(_mm256_mul_pd(g, sp), _mm256_mul_pd(f, cp)));

    __m256d c = _mm256_blendv_pd(c_tail, c_series, series_mask);
    __m256d s = _mm256_blendv_pd(s_tail, s_series, series_mask);
    c = _mm256_blendv_pd(c, half, huge_mask);
    s = _mm256_blendv_pd(s, half, huge_mask);

    // sign and NaN passthrough
    const __m256d neg_mask = _mm256_cmp_pd(w, _mm256_setzero_pd(), _CMP_LT_OQ);
    const __m256d neg = _mm256_set1_pd(-0.0);
    c = _mm256_blendv_pd(c, _mm256_xor_pd(c, neg), neg_mask);
    s = _mm256_blendv_pd(s, _mm256_xor_pd(s, neg), neg_mask);
    const __m256d nan_mask = _mm256_cmp_pd(w, w, _CMP_UNORD_Q);
    c = _mm256_blendv_pd(c, w, nan_mask);
    s = _mm256_blendv_pd(s, w, nan_mask);
    cout = c;
    sout = s;
}

} // namespace

void fresnel_cs_avx2(const double* w, double* c, double* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d wv = _mm256_loadu_pd(w + i);
        __m256d cv, sv;
        eval4(wv, cv, sv);
        _mm256_storeu_pd(c + i, cv);
        _mm256_storeu_pd(s + i, sv);
    }
    if (i < n) {
        alignas(32) double wb[4] = {0, 0, 0, 0};
        alignas(32) double cb[4], sb[4];
        for (std::size_t k = i; k < n; ++k) wb[k - i] = w[k];
        __m256d cv, sv;
        __m256d wv = _mm256_load_pd(wb);
        eval4(wv, cv, sv);
        _mm256_store_pd(cb, cv);
        _mm256_store_pd(sb, sv);
        for (std::size_t k = i; k < n; ++k) {
            c[k] = cb[k - i];
            s[k] = sb[k - i];
        }
    }
}

} // namespace fresnel2d::detail

#else

namespace fresnel2d::detail {
void fresnel_cs_avx2(const double* w, double* c, double* s, std::size_t n) {
    fresnel_cs_scalar(w, c, s, n);
}
} // namespace fresnel2d::detail

#endif
