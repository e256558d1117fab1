#include "csymrd/jet.hpp"

#include "csymrd/errors.hpp"

#include <cmath>

namespace csymrd {

namespace {

struct CoeffDerivs {
    TaylorValue xi0, xi, eta1, eta2;
};

CoeffDerivs eval_coeffs(const SymmetryOperator& Q, const Point4& p) {
    return CoeffDerivs{taylor_eval(Q.xi0, p, 2), taylor_eval(Q.xi, p, 2),
                       taylor_eval(Q.eta1, p, 2), taylor_eval(Q.eta2, p, 2)};
}

// total derivatives of a coefficient restricted to first-order jet data
double Dx0(const TaylorValue& f, const JetPoint& j) {
    return f.grad(Var::X) + f.grad(Var::U) * j.u_x + f.grad(Var::V) * j.v_x;
}

double Dt0(const TaylorValue& f, const JetPoint& j) {
    return f.grad(Var::T) + f.grad(Var::U) * j.u_t + f.grad(Var::V) * j.v_t;
}

double DxDx0(const TaylorValue& f, const JetPoint& j) {
    return f.hess(Var::X, Var::X) + 2.0 * f.hess(Var::X, Var::U) * j.u_x +
           2.0 * f.hess(Var::X, Var::V) * j.v_x +
           f.hess(Var::U, Var::U) * j.u_x * j.u_x +
           2.0 * f.hess(Var::U, Var::V) * j.u_x * j.v_x +
           f.hess(Var::V, Var::V) * j.v_x * j.v_x +
           f.grad(Var::U) * j.u_xx + f.grad(Var::V) * j.v_xx;
}

} // namespace

ProlongedCoefficients prolong_second(const SymmetryOperator& Q,
                                     const JetPoint& jet) {
    const CoeffDerivs c = eval_coeffs(Q, jet.base());
    ProlongedCoefficients out;

    const double dt_xi0 = Dt0(c.xi0, jet), dx_xi0 = Dx0(c.xi0, jet);
    const double dt_xi = Dt0(c.xi, jet), dx_xi = Dx0(c.xi, jet);
    const double dxx_xi0 = DxDx0(c.xi0, jet), dxx_xi = DxDx0(c.xi, jet);

    out.rho1_t = Dt0(c.eta1, jet) - jet.u_t * dt_xi0 - jet.u_x * dt_xi;
    out.rho1_x = Dx0(c.eta1, jet) - jet.u_t * dx_xi0 - jet.u_x * dx_xi;
    out.sigma1_xx = DxDx0(c.eta1, jet) - jet.u_t * dxx_xi0 -
                    jet.u_x * dxx_xi - 2.0 * jet.u_tx * dx_xi0 -
                    2.0 * jet.u_xx * dx_xi;

    out.rho2_t = Dt0(c.eta2, jet) - jet.v_t * dt_xi0 - jet.v_x * dt_xi;
    out.rho2_x = Dx0(c.eta2, jet) - jet.v_t * dx_xi0 - jet.v_x * dx_xi;
    out.sigma2_xx = DxDx0(c.eta2, jet) - jet.v_t * dxx_xi0 -
                    jet.v_x * dxx_xi - 2.0 * jet.v_tx * dx_xi0 -
                    2.0 * jet.v_xx * dx_xi;
    return out;
}

JetPoint project_manifold(const RDSystem& sys, const SymmetryOperator& Q,
                          const JetBase& base, ManifoldKind kind) {
    JetPoint j;
    j.t = base.t;
    j.x = base.x;
    j.u = base.u;
    j.v = base.v;
    j.u_t = base.u_t;
    j.v_t = base.v_t;
    j.u_x = base.u_x;
    j.v_x = base.v_x;
    j.u_tx = base.u_tx;
    j.v_tx = base.v_tx;
    j.constraint_tag = kind;
    if (kind == ManifoldKind::Free) return j;

    const Point4 p = j.base();
    const bool want_u =
        kind == ManifoldKind::FirstTypeU || kind == ManifoldKind::SecondType;
    const bool want_v =
        kind == ManifoldKind::FirstTypeV || kind == ManifoldKind::SecondType;

    if (want_u || want_v) {
        if (!Q.xi0_is_zero)
            throw SingularManifold(
                "invariant-surface elimination requires xi0 = 0");
        const TaylorValue xi = taylor_eval(Q.xi, p, 1);
        if (std::fabs(xi.value()) < 1e-8)
            throw SingularManifold("xi vanishes at the projection point");
        if (want_u) {
            const TaylorValue e1 = taylor_eval(Q.eta1, p, 1);
            j.u_x = e1.value() / xi.value();
            const double dt_eta1 = e1.grad(Var::T) +
                                   e1.grad(Var::U) * j.u_t +
                                   e1.grad(Var::V) * j.v_t;
            const double dt_xi = xi.grad(Var::T) + xi.grad(Var::U) * j.u_t +
                                 xi.grad(Var::V) * j.v_t;
            j.u_tx = (dt_eta1 - j.u_x * dt_xi) / xi.value();
        }
        if (want_v) {
            const TaylorValue e2 = taylor_eval(Q.eta2, p, 1);
            j.v_x = e2.value() / xi.value();
            const double dt_eta2 = e2.grad(Var::T) +
                                   e2.grad(Var::U) * j.u_t +
                                   e2.grad(Var::V) * j.v_t;
            const double dt_xi = xi.grad(Var::T) + xi.grad(Var::U) * j.u_t +
                                 xi.grad(Var::V) * j.v_t;
            j.v_tx = (dt_eta2 - j.v_x * dt_xi) / xi.value();
        }
    }

    const double d1 = sys.d1.eval_d(j.u);
    const double d2 = sys.d2.eval_d(j.v);
    const double C1 = taylor_eval(sys.C1, p, 0).value();
    const double C2 = taylor_eval(sys.C2, p, 0).value();
    j.u_xx = d1 * j.u_t + C1;
    j.v_xx = d2 * j.v_t + C2;
    return j;
}

} // namespace csymrd
