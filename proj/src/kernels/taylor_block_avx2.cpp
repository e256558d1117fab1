// AVX2 variants of the Taylor coefficient-block kernels. No fused ops here:
// every lane performs the same plain mul/add sequence as the scalar backend,
// so results are bitwise identical (enforced by tests/test_kernels.cpp).

#include "backends.hpp"

#include <immintrin.h>

namespace csymrd::kernels {

namespace {

constexpr int kPairI[10] = {0, 0, 0, 0, 1, 1, 1, 2, 2, 3};
constexpr int kPairJ[10] = {0, 1, 2, 3, 1, 2, 3, 2, 3, 3};

void lincomb_avx2(TaylorBlock& out, double a, const TaylorBlock& x, double b,
                  const TaylorBlock& y) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    for (int i = 0; i < kBlockLen; i += 4) {
        const __m256d vx = _mm256_load_pd(x.s + i);
        const __m256d vy = _mm256_load_pd(y.s + i);
        const __m256d r =
            _mm256_add_pd(_mm256_mul_pd(va, vx), _mm256_mul_pd(vb, vy));
        _mm256_store_pd(out.s + i, r);
    }
}

void mul_avx2(TaylorBlock& out, const TaylorBlock& x, const TaylorBlock& y) {
    const double x0 = x.s[0];
    const double y0 = y.s[0];
    const __m256d vx0 = _mm256_set1_pd(x0);
    const __m256d vy0 = _mm256_set1_pd(y0);
    TaylorBlock r;
    for (int i = 0; i < kBlockLen; i += 4) {
        const __m256d vx = _mm256_load_pd(x.s + i);
        const __m256d vy = _mm256_load_pd(y.s + i);
        const __m256d v =
            _mm256_add_pd(_mm256_mul_pd(vx0, vy), _mm256_mul_pd(vy0, vx));
        _mm256_store_pd(r.s + i, v);
    }
    r.s[0] = x0 * y0;
    for (int h = 0; h < 10; ++h) {
        const double gi = x.s[kGradOff + kPairI[h]] * y.s[kGradOff + kPairJ[h]];
        const double gj = x.s[kGradOff + kPairJ[h]] * y.s[kGradOff + kPairI[h]];
        r.s[kHessOff + h] = r.s[kHessOff + h] + (gi + gj);
    }
    out = r;
}

void chain_avx2(TaylorBlock& out, const TaylorBlock& x, double f0, double f1,
                double f2) {
    const __m256d vf1 = _mm256_set1_pd(f1);
    TaylorBlock r;
    for (int i = 0; i < kBlockLen; i += 4) {
        const __m256d vx = _mm256_load_pd(x.s + i);
        _mm256_store_pd(r.s + i, _mm256_mul_pd(vf1, vx));
    }
    r.s[0] = f0;
    for (int h = 0; h < 10; ++h) {
        const double g2 = x.s[kGradOff + kPairI[h]] * x.s[kGradOff + kPairJ[h]];
        r.s[kHessOff + h] = r.s[kHessOff + h] + f2 * g2;
    }
    out = r;
}

} // namespace

const TaylorOps taylor_ops_avx2 = {lincomb_avx2, mul_avx2, chain_avx2};

} // namespace csymrd::kernels
