// AVX2 variants of the grid kernels. vexp/vlog mirror the step sequence of
// kernels::detail::exp_core/log_core exactly (fma for fma, mul for mul), so
// all lanes agree bitwise with the scalar backend.

#include "backends.hpp"
#include "csymrd/kernels/math_core.hpp"

#include <immintrin.h>

namespace csymrd::kernels {

namespace {

using detail::kExpMagic;
using detail::kExpPoly;
using detail::kLn2Hi;
using detail::kLn2Lo;
using detail::kLog2E;
using detail::kLogPoly;

void diffusion_avx2(double* out, const double* w, const double* d, int n,
                    double inv_dx2) {
    const double c = 0.5 * inv_dx2;
    const __m256d vc = _mm256_set1_pd(c);
    int i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d wm = _mm256_loadu_pd(w + i - 1);
        const __m256d w0 = _mm256_loadu_pd(w + i);
        const __m256d wp = _mm256_loadu_pd(w + i + 1);
        const __m256d dm = _mm256_loadu_pd(d + i - 1);
        const __m256d d0 = _mm256_loadu_pd(d + i);
        const __m256d dp = _mm256_loadu_pd(d + i + 1);
        const __m256d fr =
            _mm256_mul_pd(_mm256_add_pd(d0, dp), _mm256_sub_pd(wp, w0));
        const __m256d fl =
            _mm256_mul_pd(_mm256_add_pd(dm, d0), _mm256_sub_pd(w0, wm));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(fr, fl), vc));
    }
    for (; i < n - 1; ++i) {
        const double fr = (d[i] + d[i + 1]) * (w[i + 1] - w[i]);
        const double fl = (d[i - 1] + d[i]) * (w[i] - w[i - 1]);
        out[i] = (fr - fl) * c;
    }
}

void axpy_avx2(double* y, double a, const double* x, int n) {
    const __m256d va = _mm256_set1_pd(a);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_loadu_pd(y + i);
        const __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

double max_avx2(const double* x, int n) {
    double m = x[0];
    int i = 1;
    if (n >= 5) {
        __m256d vm = _mm256_loadu_pd(x + 1);
        i = 5;
        for (; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(x + i));
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, vm);
        for (double v : lanes) m = v > m ? v : m;
    }
    for (; i < n; ++i) m = x[i] > m ? x[i] : m;
    return m;
}

void vexp_avx2(double* out, const double* x, int n) {
    const __m256d vmagic = _mm256_set1_pd(kExpMagic);
    const __m256d vlog2e = _mm256_set1_pd(kLog2E);
    const __m256d vln2hi = _mm256_set1_pd(-kLn2Hi);
    const __m256d vln2lo = _mm256_set1_pd(-kLn2Lo);
    const __m256d vlimit = _mm256_set1_pd(700.0);
    const __m256i vbias = _mm256_set1_epi64x(1023);
    const __m256i vmagic_bits = _mm256_castpd_si256(vmagic);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vabs =
            _mm256_andnot_pd(_mm256_set1_pd(-0.0), vx);
        const int bad =
            _mm256_movemask_pd(_mm256_cmp_pd(vabs, vlimit, _CMP_NLE_UQ));
        const __m256d y = _mm256_fmadd_pd(vx, vlog2e, vmagic);
        const __m256i k =
            _mm256_sub_epi64(_mm256_castpd_si256(y), vmagic_bits);
        const __m256d kd = _mm256_sub_pd(y, vmagic);
        const __m256d r0 = _mm256_fmadd_pd(kd, vln2hi, vx);
        const __m256d r = _mm256_fmadd_pd(kd, vln2lo, r0);
        __m256d p = _mm256_set1_pd(kExpPoly[0]);
        for (int j = 1; j < 14; ++j)
            p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kExpPoly[j]));
        const __m256i ebits =
            _mm256_slli_epi64(_mm256_add_epi64(k, vbias), 52);
        const __m256d pow2k = _mm256_castsi256_pd(ebits);
        __m256d res = _mm256_mul_pd(p, pow2k);
        _mm256_storeu_pd(out + i, res);
        if (bad) {
            for (int l = 0; l < 4; ++l)
                if (bad & (1 << l)) out[i + l] = detail::exp_core(x[i + l]);
        }
    }
    for (; i < n; ++i) out[i] = detail::exp_core(x[i]);
}

void vlog_avx2(double* out, const double* x, int n) {
    const __m256d vone = _mm256_set1_pd(1.0);
    const __m256d vhalf = _mm256_set1_pd(0.5);
    const __m256d vsqrt2 = _mm256_set1_pd(1.4142135623730951);
    const __m256i vmant = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i vexp1 = _mm256_set1_epi64x(0x3FF0000000000000LL);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d too_small = _mm256_cmp_pd(
            vx, _mm256_set1_pd(2.2250738585072014e-308), _CMP_NGE_UQ);
        const __m256d too_big =
            _mm256_cmp_pd(vx, _mm256_set1_pd(1.0 / 0.0), _CMP_NLT_UQ);
        const int bad =
            _mm256_movemask_pd(_mm256_or_pd(too_small, too_big));
        const __m256i b = _mm256_castpd_si256(vx);
        // exponent as double via int64 arithmetic
        const __m256i eraw = _mm256_srli_epi64(b, 52);
        __m256d m = _mm256_castsi256_pd(
            _mm256_or_si256(_mm256_and_si256(b, vmant), vexp1));
        const __m256d fold = _mm256_cmp_pd(m, vsqrt2, _CMP_GT_OQ);
        m = _mm256_blendv_pd(m, _mm256_mul_pd(m, vhalf), fold);
        // ed = (eraw - 1023) + (fold ? 1 : 0)
        alignas(32) long long elanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(elanes), eraw);
        const int foldmask = _mm256_movemask_pd(fold);
        alignas(32) double edl[4];
        for (int l = 0; l < 4; ++l)
            edl[l] = static_cast<double>(elanes[l] - 1023 +
                                         ((foldmask >> l) & 1));
        const __m256d ed = _mm256_load_pd(edl);
        const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, vone),
                                        _mm256_add_pd(m, vone));
        const __m256d w = _mm256_mul_pd(s, s);
        __m256d q = _mm256_set1_pd(kLogPoly[0]);
        for (int j = 1; j < 10; ++j)
            q = _mm256_fmadd_pd(q, w, _mm256_set1_pd(kLogPoly[j]));
        const __m256d lm = _mm256_fmadd_pd(_mm256_mul_pd(s, w), q,
                                           _mm256_mul_pd(_mm256_set1_pd(2.0), s));
        const __m256d t = _mm256_fmadd_pd(ed, _mm256_set1_pd(kLn2Lo), lm);
        __m256d res = _mm256_fmadd_pd(ed, _mm256_set1_pd(kLn2Hi), t);
        _mm256_storeu_pd(out + i, res);
        if (bad) {
            for (int l = 0; l < 4; ++l)
                if (bad & (1 << l)) out[i + l] = detail::log_core(x[i + l]);
        }
    }
    for (; i < n; ++i) out[i] = detail::log_core(x[i]);
}

} // namespace

const ArrayOps array_ops_avx2 = {diffusion_avx2, axpy_avx2, max_avx2,
                                 vexp_avx2, vlog_avx2};

} // namespace csymrd::kernels
