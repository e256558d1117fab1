#include "backends.hpp"

namespace csymrd::kernels {

namespace {

// (i,j) var pairs for hess lanes 5..14
constexpr int kPairI[10] = {0, 0, 0, 0, 1, 1, 1, 2, 2, 3};
constexpr int kPairJ[10] = {0, 1, 2, 3, 1, 2, 3, 2, 3, 3};

void lincomb_scalar(TaylorBlock& out, double a, const TaylorBlock& x, double b,
                    const TaylorBlock& y) {
    for (int i = 0; i < kBlockLen; ++i) out.s[i] = a * x.s[i] + b * y.s[i];
}

void mul_scalar(TaylorBlock& out, const TaylorBlock& x, const TaylorBlock& y) {
    const double x0 = x.s[0];
    const double y0 = y.s[0];
    TaylorBlock r;
    for (int i = 0; i < kBlockLen; ++i) r.s[i] = x0 * y.s[i] + y0 * x.s[i];
    r.s[0] = x0 * y0;
    for (int h = 0; h < 10; ++h) {
        const double gi = x.s[kGradOff + kPairI[h]] * y.s[kGradOff + kPairJ[h]];
        const double gj = x.s[kGradOff + kPairJ[h]] * y.s[kGradOff + kPairI[h]];
        r.s[kHessOff + h] = r.s[kHessOff + h] + (gi + gj);
    }
    out = r;
}

void chain_scalar(TaylorBlock& out, const TaylorBlock& x, double f0, double f1,
                  double f2) {
    TaylorBlock r;
    for (int i = 0; i < kBlockLen; ++i) r.s[i] = f1 * x.s[i];
    r.s[0] = f0;
    for (int h = 0; h < 10; ++h) {
        const double g2 =
            x.s[kGradOff + kPairI[h]] * x.s[kGradOff + kPairJ[h]];
        r.s[kHessOff + h] = r.s[kHessOff + h] + f2 * g2;
    }
    out = r;
}

} // namespace

const TaylorOps taylor_ops_scalar = {lincomb_scalar, mul_scalar, chain_scalar};

} // namespace csymrd::kernels
