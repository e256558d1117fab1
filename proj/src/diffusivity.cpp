#include "csymrd/diffusivity.hpp"

#include "csymrd/errors.hpp"

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace csymrd {

namespace {

Point4 point_with(Var arg, double w) {
    Point4 p;
    switch (arg) {
    case Var::T: p.t = w; break;
    case Var::X: p.x = w; break;
    case Var::U: p.u = w; break;
    default: p.v = w; break;
    }
    return p;
}

// State of the defining ODE, integrated in the variable w:
//   h'  = hp
//   hp' = (4*hp + 1)/(8*h)
//   ld' = 1/h              (ld = log d)
//   I'  = (1 - hp)/(d*h)
struct CaseIIIState {
    double h, hp, ld, iint;
};

class CaseIIIBackend {
public:
    CaseIIIBackend(double u0, double h0, double h0p)
        : u0_(u0), init_{h0, h0p, 0.0, 0.0} {
        if (!(h0 != 0.0))
            throw InvalidParams("case-III diffusivity requires h0 != 0");
        if (std::fabs(4.0 * h0p + 1.0) < 1e-12)
            throw InvalidParams(
                "case-III diffusivity requires h0prime != -1/4");
    }

    CaseIIIState state_at(double w) const {
        const std::uint64_t key = key_of(w);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        CaseIIIState s = integrate_to(w);
        {
            std::lock_guard<std::mutex> lock(mu_);
            cache_.emplace(key, s);
        }
        return s;
    }

    double u0() const { return u0_; }

private:
    static std::uint64_t key_of(double w) {
        std::uint64_t k;
        std::memcpy(&k, &w, sizeof(k));
        return k;
    }

    CaseIIIState integrate_to(double w) const {
        const double span = w - u0_;
        const int n = std::max(1, static_cast<int>(std::ceil(
                                      std::fabs(span) / 2.0e-4)));
        const double dw = span / n;
        CaseIIIState y = init_;
        for (int i = 0; i < n; ++i) {
            const CaseIIIState k1 = rhs(y);
            const CaseIIIState k2 = rhs(advance(y, k1, 0.5 * dw));
            const CaseIIIState k3 = rhs(advance(y, k2, 0.5 * dw));
            const CaseIIIState k4 = rhs(advance(y, k3, dw));
            y.h += dw / 6.0 * (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h);
            y.hp += dw / 6.0 * (k1.hp + 2.0 * k2.hp + 2.0 * k3.hp + k4.hp);
            y.ld += dw / 6.0 * (k1.ld + 2.0 * k2.ld + 2.0 * k3.ld + k4.ld);
            y.iint +=
                dw / 6.0 * (k1.iint + 2.0 * k2.iint + 2.0 * k3.iint + k4.iint);
            if (std::fabs(y.h) < 1e-8)
                throw DomainError("case-III diffusivity: h reached 0");
        }
        return y;
    }

    static CaseIIIState rhs(const CaseIIIState& y) {
        const double d = std::exp(y.ld);
        return CaseIIIState{y.hp, (4.0 * y.hp + 1.0) / (8.0 * y.h), 1.0 / y.h,
                            (1.0 - y.hp) / (d * y.h)};
    }

    static CaseIIIState advance(const CaseIIIState& y, const CaseIIIState& k,
                                double dw) {
        return CaseIIIState{y.h + dw * k.h, y.hp + dw * k.hp,
                            y.ld + dw * k.ld, y.iint + dw * k.iint};
    }

    double u0_;
    CaseIIIState init_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, CaseIIIState> cache_;
};

TaylorValue case_iii_value(Var arg, double w, double v0, double v1, double v2) {
    // value plus exact first/second derivatives with respect to arg
    TaylorValue a = TaylorValue::variable(arg, w);
    return tv::chain(a, v0, v1, v2);
}

} // namespace

DiffusivityFamily DiffusivityFamily::power_law(double exponent, double scale,
                                               Var arg, double sign) {
    if (!(scale > 0.0))
        throw InvalidParams("power-law diffusivity requires scale > 0");
    if (sign != 1.0 && sign != -1.0)
        throw InvalidParams("power-law diffusivity sign must be +/-1");
    DiffusivityFamily f;
    f.kind_ = DiffKind::PowerLaw;
    f.arg_ = arg;
    f.exponent_ = exponent;
    f.scale_ = scale;
    f.sign_ = sign;
    f.constant_ = exponent == 0.0;
    const bool integral_exp =
        exponent == std::nearbyint(exponent) && std::fabs(exponent) < 1e15;
    f.needs_positive_ = exponent < 0.0 || !integral_exp;
    const Field w = var(arg);
    const Field base = sign == 1.0 ? w : (0.0 - w);
    f.d_ = csymrd::constant(scale) * pow(base, exponent);
    f.du_ = csymrd::constant(scale * exponent * sign) * pow(base, exponent - 1.0);
    f.duu_ = csymrd::constant(scale * exponent * (exponent - 1.0)) *
             pow(base, exponent - 2.0);
    if (!f.constant_) f.h_ = w / exponent;
    return f;
}

DiffusivityFamily DiffusivityFamily::exponential(double scale, Var arg) {
    if (!(scale > 0.0))
        throw InvalidParams("exponential diffusivity requires scale > 0");
    DiffusivityFamily f;
    f.kind_ = DiffKind::Exponential;
    f.arg_ = arg;
    f.scale_ = scale;
    f.needs_positive_ = false;
    const Field d = csymrd::constant(scale) * exp(var(arg));
    f.d_ = d;
    f.du_ = d;
    f.duu_ = d;
    f.h_ = csymrd::constant(1.0);
    return f;
}

DiffusivityFamily DiffusivityFamily::constant(double value, Var arg) {
    if (!(value > 0.0))
        throw InvalidParams("constant diffusivity must be positive");
    DiffusivityFamily f = power_law(0.0, value, arg);
    return f;
}

DiffusivityFamily DiffusivityFamily::implicit_case_iii(double u0, double h0,
                                                       double h0prime,
                                                       Var arg) {
    auto backend = std::make_shared<CaseIIIBackend>(u0, h0, h0prime);
    DiffusivityFamily f;
    f.kind_ = DiffKind::ImplicitCaseIII;
    f.arg_ = arg;
    f.needs_positive_ = false;

    const auto st = [backend, arg](const Point4& p) {
        return backend->state_at(p.coord(arg));
    };

    // h'' and d-derivatives are algebraic functions of the ODE state
    f.h_ = csymrd::custom(
        [st, arg](const Point4& p, int) {
            const CaseIIIState s = st(p);
            const double hpp = (4.0 * s.hp + 1.0) / (8.0 * s.h);
            return case_iii_value(arg, p.coord(arg), s.h, s.hp, hpp);
        },
        2, "case3.h");
    f.d_ = csymrd::custom(
        [st, arg](const Point4& p, int) {
            const CaseIIIState s = st(p);
            const double d = std::exp(s.ld);
            const double du = d / s.h;
            const double duu = d * (1.0 - s.hp) / (s.h * s.h);
            return case_iii_value(arg, p.coord(arg), d, du, duu);
        },
        2, "case3.d");
    f.du_ = csymrd::custom(
        [st, arg](const Point4& p, int) {
            const CaseIIIState s = st(p);
            const double d = std::exp(s.ld);
            const double hpp = (4.0 * s.hp + 1.0) / (8.0 * s.h);
            const double du = d / s.h;
            const double duu = d * (1.0 - s.hp) / (s.h * s.h);
            const double duuu = du * (1.0 - s.hp) / (s.h * s.h) -
                                d * hpp / (s.h * s.h) -
                                2.0 * d * (1.0 - s.hp) * s.hp /
                                    (s.h * s.h * s.h);
            return case_iii_value(arg, p.coord(arg), du, duu, duuu);
        },
        2, "case3.du");
    f.duu_ = csymrd::custom(
        [st, arg](const Point4& p, int order) {
            if (order > 1)
                throw UnsupportedOrder(
                    "case3.duu provides first derivatives only");
            const CaseIIIState s = st(p);
            const double d = std::exp(s.ld);
            const double hpp = (4.0 * s.hp + 1.0) / (8.0 * s.h);
            const double du = d / s.h;
            const double duu = d * (1.0 - s.hp) / (s.h * s.h);
            const double duuu = du * (1.0 - s.hp) / (s.h * s.h) -
                                d * hpp / (s.h * s.h) -
                                2.0 * d * (1.0 - s.hp) * s.hp /
                                    (s.h * s.h * s.h);
            return case_iii_value(arg, p.coord(arg), duu, duuu, 0.0);
        },
        1, "case3.duu");
    f.case_iii_integral_ = csymrd::custom(
        [st, arg](const Point4& p, int) {
            const CaseIIIState s = st(p);
            const double d = std::exp(s.ld);
            const double hpp = (4.0 * s.hp + 1.0) / (8.0 * s.h);
            const double i1 = (1.0 - s.hp) / (d * s.h);
            const double du = d / s.h;
            const double i2 =
                (-hpp * (d * s.h) - (1.0 - s.hp) * (du * s.h + d * s.hp)) /
                (d * s.h * d * s.h);
            return case_iii_value(arg, p.coord(arg), s.iint, i1, i2);
        },
        2, "case3.integral");
    return f;
}

DiffusivityFamily DiffusivityFamily::custom(Field d, Field du, Field duu,
                                            Var arg, bool needs_positive) {
    DiffusivityFamily f;
    f.kind_ = DiffKind::Custom;
    f.arg_ = arg;
    f.needs_positive_ = needs_positive;
    f.d_ = d;
    f.du_ = du;
    f.duu_ = duu;
    f.h_ = d / du;
    return f;
}

const Field& DiffusivityFamily::h() const {
    if (h_.empty())
        throw InvalidParams("h = d/d_w is undefined for constant diffusivity");
    return h_;
}

const Field& DiffusivityFamily::case_iii_integral() const {
    if (case_iii_integral_.empty())
        throw InvalidParams("integral term only defined for case-III kind");
    return case_iii_integral_;
}

double DiffusivityFamily::eval_d(double w) const {
    return taylor_eval(d_, point_with(arg_, w), 0).value();
}
double DiffusivityFamily::eval_du(double w) const {
    return taylor_eval(du_, point_with(arg_, w), 0).value();
}
double DiffusivityFamily::eval_duu(double w) const {
    return taylor_eval(duu_, point_with(arg_, w), 0).value();
}
double DiffusivityFamily::eval_h(double w) const {
    return taylor_eval(h(), point_with(arg_, w), 0).value();
}

} // namespace csymrd
