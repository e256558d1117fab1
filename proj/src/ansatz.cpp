#include "csymrd/ansatz.hpp"

#include "csymrd/errors.hpp"

#include <cmath>

namespace csymrd {

Ansatz::Eval Ansatz::eval(double t, double x, double phi, double psi,
                          double dphi, double dpsi) const {
    if (x < x_min_valid || x > x_max_valid)
        throw DomainError("x outside the ansatz validity interval");
    const Point4 p{t, x, phi, psi};
    const TaylorValue uu = taylor_eval(u_of, p, 2);
    const TaylorValue vv = taylor_eval(v_of, p, 2);
    Eval e{};
    e.u = uu.value();
    e.v = vv.value();
    e.u_x = uu.grad(Var::X);
    e.u_xx = uu.hess(Var::X, Var::X);
    e.v_x = vv.grad(Var::X);
    e.v_xx = vv.hess(Var::X, Var::X);
    // time enters only through (phi(t), psi(t))
    e.u_t = uu.grad(Var::T) + uu.grad(Var::U) * dphi + uu.grad(Var::V) * dpsi;
    e.v_t = vv.grad(Var::T) + vv.grad(Var::U) * dphi + vv.grad(Var::V) * dpsi;
    return e;
}

namespace {

// e^{2x} + alpha e^{-2x} and its positivity threshold
Field exp_profile(double alpha) {
    return exp(2.0 * var_x()) + constant(alpha) * exp(-2.0 * var_x());
}

double exp_profile_xmin(double alpha) {
    // e^{4x} > -alpha
    if (alpha >= 0.0) return -1e300;
    return 0.25 * std::log(-alpha) + 1e-9;
}

} // namespace

Ansatz build_ansatz(const std::string& operator_id, const CatalogParams& p) {
    Ansatz a;
    a.operator_id = operator_id;
    const Field phi = var_u();
    const Field psi = var_v();

    if (operator_id == "Q-T1-I") {
        const double beta = p.get(p.beta, 2.0);
        if (beta == 0.0 || beta == -4.0)
            throw UnsupportedOperator("Q-T1-I ansatz requires beta not in {0,-4}");
        const double mu = p.get(p.mu, 4.0);
        if (mu != 4.0)
            throw UnsupportedOperator(
                "the catalogued invariant shape uses the mu = 4 scaling");
        a.u_of = phi * exp(constant(-4.0 / beta) * var_x());
        a.v_of = psi * exp(var_x());
        a.params["beta"] = beta;
        return a;
    }
    if (operator_id == "Q-T1-II") {
        const double mu = p.get(p.mu, 4.0);
        const double alpha = p.get(p.alpha, 1.0);
        if (mu != 4.0 && mu != -4.0)
            throw UnsupportedOperator(
                "catalogued reductions use the mu = +/-4 presets");
        Field E;
        if (mu > 0.0) {
            if (alpha == 0.0)
                throw UnsupportedOperator("Q-T1-II needs alpha != 0");
            E = exp_profile(alpha);
            a.x_min_valid = exp_profile_xmin(alpha);
            a.params["alpha"] = alpha;
        } else {
            E = sin(2.0 * var_x());
            a.x_min_valid = 1e-9;
            a.x_max_valid = M_PI / 2.0 - 1e-9;
        }
        if (p.d1_kind == "exp") {
            a.u_of = phi - 2.0 * log(E);
            a.v_of = psi * sqrt(E);
            a.params["mu"] = mu;
            return a;
        }
        if (p.d1_kind == "power") {
            const double beta = p.get(p.beta, 2.0);
            if (beta == 0.0 || beta == -4.0)
                throw UnsupportedOperator(
                    "Q-T1-II ansatz requires beta not in {0,-4}");
            a.u_of = phi * pow(E, -2.0 / beta);
            a.v_of = psi * sqrt(E);
            a.params["beta"] = beta;
            a.params["mu"] = mu;
            return a;
        }
        throw UnsupportedOperator("Q-T1-II ansatz needs d1_kind power or exp");
    }
    throw UnsupportedOperator("no catalogued ansatz for operator '" +
                              operator_id + "'");
}

std::pair<double, double> invariant_surface_residual(const Ansatz& a,
                                                     const SymmetryOperator& Q,
                                                     double t, double x,
                                                     double phi, double psi) {
    const Ansatz::Eval e = a.eval(t, x, phi, psi, 0.0, 0.0);
    const Point4 p{t, x, e.u, e.v};
    const double xi = taylor_eval(Q.xi, p, 0).value();
    const double eta1 = taylor_eval(Q.eta1, p, 0).value();
    const double eta2 = taylor_eval(Q.eta2, p, 0).value();
    return {xi * e.u_x - eta1, xi * e.v_x - eta2};
}

} // namespace csymrd
