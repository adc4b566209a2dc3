#include "ekg/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace ekg::kernels {

#if defined(__AVX2__)

bool avx2_compiled() { return true; }

void wave_accel_avx2(const WaveInputs& in, double* gtt, double* ptt) {
    const double* g = in.g + 2;
    const double* p = in.p + 2;
    const __m256d half = _mm256_set1_pd(0.5);
    int i = 0;
    for (; i + 4 <= in.n; i += 4) {
        const __m256d fr = _mm256_loadu_pd(in.flux + i + 1);
        const __m256d fl = _mm256_loadu_pd(in.flux + i);
        const __m256d g0 = _mm256_loadu_pd(g + i);
        const __m256d gp = _mm256_loadu_pd(g + i + 1);
        const __m256d gm = _mm256_loadu_pd(g + i - 1);
        const __m256d p0 = _mm256_loadu_pd(p + i);
        const __m256d pp = _mm256_loadu_pd(p + i + 1);
        const __m256d pm = _mm256_loadu_pd(p + i - 1);
        const __m256d lg = _mm256_sub_pd(_mm256_mul_pd(fr, _mm256_sub_pd(gp, g0)),
                                         _mm256_mul_pd(fl, _mm256_sub_pd(g0, gm)));
        const __m256d lp = _mm256_sub_pd(_mm256_mul_pd(fr, _mm256_sub_pd(pp, p0)),
                                         _mm256_mul_pd(fl, _mm256_sub_pd(p0, pm)));
        const __m256d a = _mm256_loadu_pd(in.acoef + i);
        const __m256d d = _mm256_loadu_pd(in.damp + i);
        const __m256d src = _mm256_mul_pd(_mm256_loadu_pd(in.pot + i), p0);
        const __m256d gtv = _mm256_loadu_pd(in.gt + i);
        const __m256d ptv = _mm256_loadu_pd(in.pt + i);
        __m256d rg = _mm256_sub_pd(_mm256_mul_pd(a, lg), _mm256_mul_pd(d, gtv));
        rg = _mm256_add_pd(rg, _mm256_mul_pd(_mm256_mul_pd(half, src), p0));
        __m256d rp = _mm256_sub_pd(_mm256_mul_pd(a, lp), _mm256_mul_pd(d, ptv));
        rp = _mm256_sub_pd(rp, src);
        _mm256_storeu_pd(gtt + i, rg);
        _mm256_storeu_pd(ptt + i, rp);
    }
    if (i < in.n) {
        WaveInputs tail = in;
        tail.g = in.g + i;
        tail.p = in.p + i;
        tail.gt = in.gt + i;
        tail.pt = in.pt + i;
        tail.flux = in.flux + i;
        tail.acoef = in.acoef + i;
        tail.damp = in.damp + i;
        tail.pot = in.pot + i;
        tail.n = in.n - i;
        wave_accel_scalar(tail, gtt + i, ptt + i);
    }
}

void densities_avx2(const DensityInputs& in, const DensityOutputs& out) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d two = _mm256_set1_pd(2.0);
    int i = 0;
    for (; i + 4 <= in.n; i += 4) {
        const __m256d gt = _mm256_loadu_pd(in.gt + i), pt = _mm256_loadu_pd(in.pt + i);
        const __m256d gr = _mm256_loadu_pd(in.gr + i), pr = _mm256_loadu_pd(in.pr + i);
        const __m256d ph = _mm256_loadu_pd(in.phi + i);
        const __m256d f = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(in.ef + i), ph), ph);
        const __m256d kin = _mm256_mul_pd(_mm256_loadu_pd(in.ea + i),
                                          _mm256_add_pd(_mm256_mul_pd(gt, gt), _mm256_mul_pd(half, _mm256_mul_pd(pt, pt))));
        const __m256d grad = _mm256_mul_pd(_mm256_loadu_pd(in.eb + i),
                                           _mm256_add_pd(_mm256_mul_pd(gr, gr), _mm256_mul_pd(half, _mm256_mul_pd(pr, pr))));
        _mm256_storeu_pd(out.e + i, _mm256_add_pd(_mm256_add_pd(kin, grad), _mm256_mul_pd(half, f)));
        const __m256d mom = _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(two, gt), gr), _mm256_mul_pd(pt, pr));
        _mm256_storeu_pd(out.m + i, _mm256_mul_pd(_mm256_loadu_pd(in.eab + i), mom));
        _mm256_storeu_pd(out.f + i, f);
        _mm256_storeu_pd(out.e_kin + i, kin);
    }
    if (i < in.n) {
        DensityInputs t = in;
        t.gt += i; t.pt += i; t.gr += i; t.pr += i; t.phi += i;
        t.ea += i; t.eb += i; t.eab += i; t.ef += i;
        t.n = in.n - i;
        densities_scalar(t, {out.e + i, out.m + i, out.f + i, out.e_kin + i});
    }
}

#else

bool avx2_compiled() { return false; }
void wave_accel_avx2(const WaveInputs& in, double* gtt, double* ptt) { wave_accel_scalar(in, gtt, ptt); }
void densities_avx2(const DensityInputs& in, const DensityOutputs& out) { densities_scalar(in, out); }

#endif

} // namespace ekg::kernels
