#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>

// Element-level exp/log used by the scalar backend and mirrored
// operation-for-operation by the AVX2 backend. Any change here must be
// reflected in array_ops_avx2.cpp; the kernel equivalence tests enforce
// bitwise agreement.

namespace csymrd::kernels::detail {

inline constexpr double kExpMagic = 6755399441055744.0; // 2^52 + 2^51
inline constexpr double kLog2E = 1.4426950408889634074;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

// 1/i!, i = 13 .. 0
inline constexpr double kExpPoly[14] = {
    1.6059043836821614599e-10, 2.0876756987868098979e-09,
    2.5052108385441718775e-08, 2.7557319223985890653e-07,
    2.7557319223985892511e-06, 2.4801587301587301566e-05,
    1.9841269841269841253e-04, 1.3888888888888889419e-03,
    8.3333333333333332177e-03, 4.1666666666666664354e-02,
    1.6666666666666665741e-01, 5.0000000000000000000e-01,
    1.0000000000000000000e+00, 1.0000000000000000000e+00};

// 2/(2j+1), j = 10 .. 1
inline constexpr double kLogPoly[10] = {
    2.0 / 21.0, 2.0 / 19.0, 2.0 / 17.0, 2.0 / 15.0, 2.0 / 13.0,
    2.0 / 11.0, 2.0 / 9.0,  2.0 / 7.0,  2.0 / 5.0,  2.0 / 3.0};

inline std::uint64_t bits_of(double x) {
    std::uint64_t b;
    std::memcpy(&b, &x, sizeof(b));
    return b;
}

inline double double_of(std::uint64_t b) {
    double x;
    std::memcpy(&x, &b, sizeof(x));
    return x;
}

inline bool exp_needs_fallback(double x) { return !(std::fabs(x) <= 700.0); }

inline bool log_needs_fallback(double x) {
    return !(x >= 2.2250738585072014e-308) || !(x < 1.0 / 0.0);
}

inline double exp_core(double x) {
    if (exp_needs_fallback(x)) return std::exp(x);
    const double y = std::fma(x, kLog2E, kExpMagic);
    const std::int64_t k =
        static_cast<std::int64_t>(bits_of(y)) -
        static_cast<std::int64_t>(bits_of(kExpMagic));
    const double kd = y - kExpMagic;
    const double r0 = std::fma(kd, -kLn2Hi, x);
    const double r = std::fma(kd, -kLn2Lo, r0);
    double p = kExpPoly[0];
    for (int i = 1; i < 14; ++i) p = std::fma(p, r, kExpPoly[i]);
    const double pow2k =
        double_of(static_cast<std::uint64_t>((k + 1023)) << 52);
    return p * pow2k;
}

inline double log_core(double x) {
    if (log_needs_fallback(x)) return std::log(x);
    std::uint64_t b = bits_of(x);
    std::int64_t e = static_cast<std::int64_t>(b >> 52) - 1023;
    double m = double_of((b & 0x000FFFFFFFFFFFFFULL) | 0x3FF0000000000000ULL);
    if (m > 1.4142135623730951) { // sqrt(2)
        m = m * 0.5;
        e += 1;
    }
    const double ed = static_cast<double>(e);
    const double s = (m - 1.0) / (m + 1.0);
    const double w = s * s;
    double q = kLogPoly[0];
    for (int i = 1; i < 10; ++i) q = std::fma(q, w, kLogPoly[i]);
    const double lm = std::fma(s * w, q, 2.0 * s);
    const double t = std::fma(ed, kLn2Lo, lm);
    return std::fma(ed, kLn2Hi, t);
}

} // namespace csymrd::kernels::detail
