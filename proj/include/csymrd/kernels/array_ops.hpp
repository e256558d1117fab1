#pragma once

#include "csymrd/kernels/taylor_block.hpp"

#include <cstddef>

namespace csymrd::kernels {

struct ArrayOps {
    // out[i] = 0.5*inv_dx2*((d[i]+d[i+1])*(w[i+1]-w[i]) - (d[i-1]+d[i])*(w[i]-w[i-1]))
    // for i in [1, n-2]; out[0] and out[n-1] are left untouched.
    void (*diffusion)(double* out, const double* w, const double* d, int n,
                      double inv_dx2);
    // y[i] += a*x[i]
    void (*axpy)(double* y, double a, const double* x, int n);
    // max of x[0..n-1] (inputs assumed finite)
    double (*max_val)(const double* x, int n);
    // out[i] = exp(x[i]), |x| <= 708; own polynomial evaluation so that the
    // scalar and SIMD backends agree bitwise
    void (*vexp)(double* out, const double* x, int n);
    // out[i] = log(x[i]), x > 0
    void (*vlog)(double* out, const double* x, int n);
};

const ArrayOps& array_ops(Backend b);
const ArrayOps& array_ops(); // active backend

} // namespace csymrd::kernels
