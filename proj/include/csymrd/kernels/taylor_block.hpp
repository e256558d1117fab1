#pragma once

#include <cstddef>

namespace csymrd::kernels {

// Coefficient block of a truncated second-order Taylor expansion in the four
// base variables (t, x, u, v):
//   s[0]      value
//   s[1..4]   gradient (d/dt, d/dx, d/du, d/dv)
//   s[5..14]  upper-triangle Hessian in row order
//             (tt, tx, tu, tv, xx, xu, xv, uu, uv, vv)
//   s[15]     padding, always 0
inline constexpr int kBlockLen = 16;
inline constexpr int kGradOff = 1;
inline constexpr int kHessOff = 5;

struct TaylorBlock {
    alignas(32) double s[kBlockLen];
};

// hess index of the (i,j) pair, i<=j, i,j in 0..3
constexpr int hess_index(int i, int j) {
    constexpr int row_off[4] = {0, 4, 7, 9};
    return kHessOff + row_off[i] + (j - i);
}

struct TaylorOps {
    // out = a*x + b*y over all 16 lanes
    void (*lincomb)(TaylorBlock& out, double a, const TaylorBlock& x, double b,
                    const TaylorBlock& y);
    // out = x * y with the second-order product rule
    void (*mul)(TaylorBlock& out, const TaylorBlock& x, const TaylorBlock& y);
    // out = phi(x) given phi, phi', phi'' at x's value
    void (*chain)(TaylorBlock& out, const TaylorBlock& x, double f0, double f1,
                  double f2);
};

enum class Backend { Scalar, Avx2 };

bool backend_available(Backend b);
Backend active_backend();
// Throws csymrd::Error if the backend was not built or the CPU lacks it.
void set_active_backend(Backend b);

const TaylorOps& taylor_ops(Backend b);
const TaylorOps& taylor_ops(); // active backend
const char* backend_name(Backend b);

} // namespace csymrd::kernels
