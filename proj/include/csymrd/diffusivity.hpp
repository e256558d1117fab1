#pragma once

#include "csymrd/field.hpp"

#include <optional>

namespace csymrd {

enum class DiffKind { PowerLaw, Exponential, ImplicitCaseIII, Custom };

// Physical-side description retained by the Kirchhoff map so the inverse can
// reproduce the original diffusivity (the exponential map absorbs its scale
// into the integration constant, which only the forward record pins down).
struct KirchhoffOrigin {
    DiffKind kind;
    double exponent; // power-law only
    double scale;
};

// One diffusivity d(w) together with its first two derivatives and the ratio
// h(w) = d/d_w, all as evaluable fields of one variable.
class DiffusivityFamily {
public:
    DiffusivityFamily() = default; // empty; use the factories

    static DiffusivityFamily power_law(double exponent, double scale = 1.0,
                                       Var arg = Var::U, double sign = 1.0);
    static DiffusivityFamily exponential(double scale = 1.0, Var arg = Var::U);
    static DiffusivityFamily constant(double value, Var arg = Var::U);
    // d defined through h = d/d_w solving 8*h*h'' - 4*h' - 1 = 0 with
    // h(u0) = h0, h'(u0) = h0prime, normalized so d(u0) = 1.
    static DiffusivityFamily implicit_case_iii(double u0, double h0,
                                               double h0prime,
                                               Var arg = Var::U);
    static DiffusivityFamily custom(Field d, Field du, Field duu, Var arg,
                                    bool needs_positive);

    DiffKind kind() const { return kind_; }
    Var arg() const { return arg_; }
    bool is_constant() const { return constant_; }
    bool needs_positive() const { return needs_positive_; }
    double exponent() const { return exponent_; }
    double scale() const { return scale_; }
    double sign() const { return sign_; }

    const Field& d() const { return d_; }
    const Field& du() const { return du_; }
    const Field& duu() const { return duu_; }
    // throws InvalidParams for constant diffusivities
    const Field& h() const;
    // integral of (1 - h')/(d*h) from u0; only for ImplicitCaseIII
    const Field& case_iii_integral() const;

    double eval_d(double w) const;
    double eval_du(double w) const;
    double eval_duu(double w) const;
    double eval_h(double w) const;

    const std::optional<KirchhoffOrigin>& origin() const { return origin_; }
    void set_origin(KirchhoffOrigin o) { origin_ = o; }

private:
    DiffKind kind_ = DiffKind::Custom;
    Var arg_ = Var::U;
    bool constant_ = false;
    bool needs_positive_ = false;
    double exponent_ = 0.0;
    double scale_ = 1.0;
    double sign_ = 1.0;
    Field d_, du_, duu_, h_, case_iii_integral_;
    std::optional<KirchhoffOrigin> origin_;
};

} // namespace csymrd
