#include "backends.hpp"
#include "csymrd/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace csymrd::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect_default() {
#if defined(CSYMRD_BUILD_AVX2)
    const char* env = std::getenv("CSYMRD_KERNEL");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2())
            return Backend::Avx2;
        return Backend::Scalar;
    }
    if (cpu_has_avx2()) return Backend::Avx2;
#endif
    return Backend::Scalar;
}

std::atomic<Backend>& active_slot() {
    static std::atomic<Backend> slot{detect_default()};
    return slot;
}

} // namespace

bool backend_available(Backend b) {
    if (b == Backend::Scalar) return true;
#if defined(CSYMRD_BUILD_AVX2)
    return cpu_has_avx2();
#else
    (void)b;
    return false;
#endif
}

Backend active_backend() { return active_slot().load(); }

void set_active_backend(Backend b) {
    if (!backend_available(b))
        throw Error("kernel backend not available on this machine");
    active_slot().store(b);
}

const char* backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

const TaylorOps& taylor_ops(Backend b) {
#if defined(CSYMRD_BUILD_AVX2)
    if (b == Backend::Avx2) {
        if (!backend_available(b))
            throw Error("avx2 backend not available");
        return taylor_ops_avx2;
    }
#else
    if (b == Backend::Avx2) throw Error("avx2 backend not built");
#endif
    return taylor_ops_scalar;
}

const TaylorOps& taylor_ops() { return taylor_ops(active_backend()); }

const ArrayOps& array_ops(Backend b) {
#if defined(CSYMRD_BUILD_AVX2)
    if (b == Backend::Avx2) {
        if (!backend_available(b))
            throw Error("avx2 backend not available");
        return array_ops_avx2;
    }
#else
    if (b == Backend::Avx2) throw Error("avx2 backend not built");
#endif
    return array_ops_scalar;
}

const ArrayOps& array_ops() { return array_ops(active_backend()); }

} // namespace csymrd::kernels
