#pragma once

#include "csymrd/errors.hpp"
#include "csymrd/kernels/taylor_block.hpp"

#include <cmath>
#include <cstring>

namespace csymrd {

enum class Var : int { T = 0, X = 1, U = 2, V = 3 };

// Value, exact gradient and exact Hessian of a scalar quantity with respect
// to the four base variables (t, x, u, v), propagated with truncated
// second-order Taylor arithmetic.
struct TaylorValue {
    kernels::TaylorBlock b{};

    static TaylorValue constant(double c) {
        TaylorValue r{};
        r.b.s[0] = c;
        return r;
    }

    static TaylorValue variable(Var which, double value) {
        TaylorValue r{};
        r.b.s[0] = value;
        r.b.s[kernels::kGradOff + static_cast<int>(which)] = 1.0;
        return r;
    }

    double value() const { return b.s[0]; }
    double grad(Var i) const {
        return b.s[kernels::kGradOff + static_cast<int>(i)];
    }
    double hess(Var i, Var j) const {
        int a = static_cast<int>(i), c = static_cast<int>(j);
        if (a > c) std::swap(a, c);
        return b.s[kernels::hess_index(a, c)];
    }
};

namespace tv {

inline TaylorValue add(const TaylorValue& a, const TaylorValue& b) {
    TaylorValue r;
    kernels::taylor_ops().lincomb(r.b, 1.0, a.b, 1.0, b.b);
    return r;
}

inline TaylorValue sub(const TaylorValue& a, const TaylorValue& b) {
    TaylorValue r;
    kernels::taylor_ops().lincomb(r.b, 1.0, a.b, -1.0, b.b);
    return r;
}

inline TaylorValue scale(double c, const TaylorValue& a) {
    TaylorValue r;
    kernels::taylor_ops().lincomb(r.b, c, a.b, 0.0, a.b);
    return r;
}

inline TaylorValue mul(const TaylorValue& a, const TaylorValue& b) {
    TaylorValue r;
    kernels::taylor_ops().mul(r.b, a.b, b.b);
    return r;
}

// out = phi(a) for a univariate phi with derivatives (f0, f1, f2) at a.value
inline TaylorValue chain(const TaylorValue& a, double f0, double f1,
                         double f2) {
    TaylorValue r;
    kernels::taylor_ops().chain(r.b, a.b, f0, f1, f2);
    return r;
}

inline TaylorValue neg(const TaylorValue& a) { return scale(-1.0, a); }

inline TaylorValue recip(const TaylorValue& a) {
    const double v = a.value();
    if (std::fabs(v) < 1e-300)
        throw DomainError("division by value with magnitude below 1e-300");
    const double inv = 1.0 / v;
    return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline TaylorValue div(const TaylorValue& a, const TaylorValue& b) {
    return mul(a, recip(b));
}

inline TaylorValue exp(const TaylorValue& a) {
    const double e = std::exp(a.value());
    return chain(a, e, e, e);
}

inline TaylorValue log(const TaylorValue& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw DomainError("log of non-positive value");
    const double inv = 1.0 / v;
    return chain(a, std::log(v), inv, -inv * inv);
}

inline TaylorValue sin(const TaylorValue& a) {
    const double s = std::sin(a.value());
    const double c = std::cos(a.value());
    return chain(a, s, c, -s);
}

inline TaylorValue cos(const TaylorValue& a) {
    const double s = std::sin(a.value());
    const double c = std::cos(a.value());
    return chain(a, c, -s, -c);
}

inline TaylorValue sqrt(const TaylorValue& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw DomainError("sqrt of non-positive value");
    const double r = std::sqrt(v);
    return chain(a, r, 0.5 / r, -0.25 / (r * v));
}

// a^p for real constant p. Non-integer p requires a > 0; negative integer p
// requires |a| >= 1e-300.
inline TaylorValue pow(const TaylorValue& a, double p) {
    const double v = a.value();
    const bool integral = p == std::nearbyint(p) && std::fabs(p) < 1e15;
    if (!integral) {
        if (!(v > 0.0))
            throw DomainError("fractional power of non-positive value");
    } else if (p < 0.0 && std::fabs(v) < 1e-300) {
        throw DomainError("negative power of value with magnitude below 1e-300");
    }
    if (p == 0.0) return TaylorValue::constant(1.0);
    if (p == 1.0) return a;
    const double f0 = std::pow(v, p);
    const double f1 = p * std::pow(v, p - 1.0);
    const double f2 = p * (p - 1.0) * std::pow(v, p - 2.0);
    return chain(a, f0, f1, f2);
}

} // namespace tv

} // namespace csymrd
