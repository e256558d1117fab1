#pragma once

#include "csymrd/kernels/array_ops.hpp"
#include "csymrd/kernels/taylor_block.hpp"

namespace csymrd::kernels {

extern const TaylorOps taylor_ops_scalar;
extern const ArrayOps array_ops_scalar;
#if defined(CSYMRD_BUILD_AVX2)
extern const TaylorOps taylor_ops_avx2;
extern const ArrayOps array_ops_avx2;
#endif

} // namespace csymrd::kernels
