#include "backends.hpp"
#include "csymrd/kernels/math_core.hpp"

namespace csymrd::kernels {

namespace {

void diffusion_scalar(double* out, const double* w, const double* d, int n,
                      double inv_dx2) {
    const double c = 0.5 * inv_dx2;
    for (int i = 1; i < n - 1; ++i) {
        const double fr = (d[i] + d[i + 1]) * (w[i + 1] - w[i]);
        const double fl = (d[i - 1] + d[i]) * (w[i] - w[i - 1]);
        out[i] = (fr - fl) * c;
    }
}

void axpy_scalar(double* y, double a, const double* x, int n) {
    for (int i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

double max_scalar(const double* x, int n) {
    double m = x[0];
    for (int i = 1; i < n; ++i) m = x[i] > m ? x[i] : m;
    return m;
}

void vexp_scalar(double* out, const double* x, int n) {
    for (int i = 0; i < n; ++i) out[i] = detail::exp_core(x[i]);
}

void vlog_scalar(double* out, const double* x, int n) {
    for (int i = 0; i < n; ++i) out[i] = detail::log_core(x[i]);
}

} // namespace

const ArrayOps array_ops_scalar = {diffusion_scalar, axpy_scalar, max_scalar,
                                   vexp_scalar, vlog_scalar};

} // namespace csymrd::kernels
