#include "nefcone/kernels/gaussian_row.hpp"

#include <immintrin.h>

#include <cmath>
#include <numbers>

// Polynomial exp, sin and cos from the Cephes library (double precision).

namespace nefcone::kernels {

namespace {

inline __m256d poly(__m256d x, const double* c, int n) {
    __m256d r = _mm256_set1_pd(c[0]);
    for (int i = 1; i < n; ++i) {
        r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c[i]));
    }
    return r;
}

inline __m256d exp_pd(__m256d x) {
    static const double p[] = {1.26177193074810590878E-4, 3.02994407707441961300E-2, 9.99999999999999999910E-1};
    static const double q[] = {3.00198505138664455042E-6, 2.52448340349684104192E-3, 2.27265548208155028766E-1,
                               2.00000000000000000009E0};
    const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(-708.0), _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, _mm256_set1_pd(-708.0)), _mm256_set1_pd(709.0));

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(std::numbers::log2e)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    x = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
    x = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), x);

    const __m256d xx = _mm256_mul_pd(x, x);
    const __m256d px = _mm256_mul_pd(x, poly(xx, p, 3));
    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(poly(xx, q, 4), px));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

    const __m256i ni = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(underflow, e);
}

// e^{2 pi i t} for t in turns.
inline void turn_pd(__m256d t, __m256d& c, __m256d& s) {
    static const double sincof[] = {1.58962301576546568060E-10, -2.50507477628578072866E-8,
                                    2.75573136213857245213E-6,  -1.98412698295895385996E-4,
                                    8.33333333332211858878E-3,  -1.66666666666666307295E-1};
    static const double coscof[] = {-1.13585365213876817300E-11, 2.08757008419747316778E-9,
                                    -2.75573141792967388112E-7,  2.48015872888517045348E-5,
                                    -1.38888888888730564116E-3,  4.16666666666665929218E-2};
    const int round = _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC;
    const __m256d f = _mm256_sub_pd(t, _mm256_round_pd(t, round));
    const __m256d f4 = _mm256_mul_pd(f, _mm256_set1_pd(4.0));
    const __m256d quadrant = _mm256_round_pd(f4, round);
    const __m256d r = _mm256_mul_pd(_mm256_sub_pd(f4, quadrant), _mm256_set1_pd(std::numbers::pi / 2));

    const __m256d rr = _mm256_mul_pd(r, r);
    const __m256d sr = _mm256_fmadd_pd(_mm256_mul_pd(r, rr), poly(rr, sincof, 6), r);
    __m256d cr = _mm256_mul_pd(_mm256_mul_pd(rr, rr), poly(rr, coscof, 6));
    cr = _mm256_add_pd(_mm256_fnmadd_pd(_mm256_set1_pd(0.5), rr, _mm256_set1_pd(1.0)), cr);

    // quadrant k: (cos, sin) = (c, s), (-s, c), (-c, -s), (s, -c)
    const __m256i k = _mm256_and_si256(_mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(quadrant)), _mm256_set1_epi64x(3));
    const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(k, _mm256_set1_epi64x(1)),
                                                                _mm256_set1_epi64x(1)));
    const __m256d c0 = _mm256_blendv_pd(cr, sr, swap);
    const __m256d s0 = _mm256_blendv_pd(sr, cr, swap);
    const __m256d sign_bit = _mm256_set1_pd(-0.0);
    const __m256d neg_c = _mm256_castsi256_pd(_mm256_or_si256(_mm256_cmpeq_epi64(k, _mm256_set1_epi64x(1)),
                                                              _mm256_cmpeq_epi64(k, _mm256_set1_epi64x(2))));
    const __m256d neg_s = _mm256_castsi256_pd(_mm256_or_si256(_mm256_cmpeq_epi64(k, _mm256_set1_epi64x(2)),
                                                              _mm256_cmpeq_epi64(k, _mm256_set1_epi64x(3))));
    c = _mm256_xor_pd(c0, _mm256_and_pd(neg_c, sign_bit));
    s = _mm256_xor_pd(s0, _mm256_and_pd(neg_s, sign_bit));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

RowSum gaussian_row_avx2(const RowCoefficients& k, std::int64_t j_start, std::size_t count) {
    const __m256d c0 = _mm256_set1_pd(k.c0), c1 = _mm256_set1_pd(k.c1), c2 = _mm256_set1_pd(k.c2);
    const __m256d d0 = _mm256_set1_pd(k.d0);
    const __m256d d1 = _mm256_set1_pd(k.d1 - std::nearbyint(k.d1));
    const __m256d d2 = _mm256_set1_pd(k.d2 - std::nearbyint(k.d2));
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd(), abs = _mm256_setzero_pd();
    __m256d j = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(j_start)), _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
    const __m256d step = _mm256_set1_pd(4.0);

    const std::size_t blocks = count / 4;
    for (std::size_t b = 0; b < blocks; ++b) {
        const __m256d mag = exp_pd(_mm256_fmadd_pd(j, _mm256_fmadd_pd(j, c2, c1), c0));
        const __m256d t = _mm256_fmadd_pd(j, _mm256_fmadd_pd(j, d2, d1), d0);
        __m256d c, s;
        turn_pd(t, c, s);
        re = _mm256_fmadd_pd(mag, c, re);
        im = _mm256_fmadd_pd(mag, s, im);
        abs = _mm256_add_pd(abs, mag);
        j = _mm256_add_pd(j, step);
    }
    RowSum out{hsum(re), hsum(im), hsum(abs)};
    const std::size_t done = blocks * 4;
    if (done < count) {
        const RowSum tail = gaussian_row_scalar(k, j_start + static_cast<std::int64_t>(done), count - done);
        out.re += tail.re;
        out.im += tail.im;
        out.abs_sum += tail.abs_sum;
    }
    return out;
}

} // namespace nefcone::kernels
