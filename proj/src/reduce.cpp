#include "csymrd/reduce.hpp"

#include "csymrd/errors.hpp"

#include <cmath>

namespace csymrd {

std::pair<double, double> ReducedODESystem::rhs(double phi, double psi) const {
    const Point4 p{0, 0, phi, psi};
    return {taylor_eval(rhs_phi, p, 0).value(),
            taylor_eval(rhs_psi, p, 0).value()};
}

double ReducedODESystem::chi_value(double phi, double psi) const {
    return taylor_eval(chi, Point4{0, 0, phi, psi}, 0).value();
}

namespace {

Field profile_on(const ReactionProfile& prof, const Field& chi) {
    return prof.apply(chi);
}

} // namespace

ReducedODESystem reduce(const std::string& system_id, const Ansatz& a,
                        const CatalogParams& p) {
    ReducedODESystem ode;
    ode.system_id = system_id;
    const Field phi = var_u();
    const Field psi = var_v();

    if ((system_id == "S-c2" || system_id == "S-c8") &&
        a.operator_id == "Q-T1-I") {
        const double beta = a.params.at("beta");
        RDSystem sys = catalog_system(system_id, p);
        ode.chi = pow(phi, beta) * pow(psi, 4.0);
        ode.rhs_phi = -profile_on(sys.profile_f, ode.chi) * phi;
        ode.rhs_psi = -profile_on(sys.profile_g, ode.chi) * psi;
        ode.params["beta"] = beta;
        return ode;
    }
    throw IncompatiblePair("no catalogued reduction for system '" + system_id +
                           "' with operator '" + a.operator_id + "'");
}

ReductionTriple catalog_triple(const std::string& id, const CatalogParams& p) {
    ReductionTriple tr;
    tr.id = id;
    const Field phi = var_u();
    const Field psi = var_v();

    if (id == "c3") {
        CatalogParams q = p;
        if (!q.beta.has_value()) q.beta = 2.0;
        tr.sys = catalog_system("S-c2", q);
        CatalogParams ap;
        ap.beta = q.beta;
        tr.ansatz = build_ansatz("Q-T1-I", ap);
        tr.ode = reduce("S-c2", tr.ansatz, q);
        return tr;
    }

    if (id == "t1r1" || id == "t1r2" || id == "t1r3" || id == "t1r4") {
        const bool exp_row = id == "t1r1" || id == "t1r2";
        const bool plus_branch = id == "t1r1" || id == "t1r3";
        const double mu = plus_branch ? 4.0 : -4.0;
        const double alpha = p.get(p.alpha, 1.0);
        const double beta = p.get(p.beta, 2.0);
        const ReactionProfile fprof =
            ReactionProfile::power_law(p.get(p.alpha1, 1.0), p.get(p.k, 1.0));
        const ReactionProfile gprof =
            ReactionProfile::power_law(p.get(p.alpha2, 1.0), p.get(p.k, 1.0));

        // row systems; the power rows absorb the 1/beta factor into f
        RDSystem sys;
        sys.catalog_id = "T1-R" + id.substr(3);
        sys.d2 = DiffusivityFamily::power_law(-4.0, 1.0, Var::V);
        sys.profile_f = fprof;
        sys.profile_g = gprof;
        const double vsign = plus_branch ? 1.0 : -1.0;
        if (exp_row) {
            sys.d1 = DiffusivityFamily::exponential(1.0, Var::U);
            const Field omega = pow(var_v(), 4.0) * exp(var_u());
            sys.C1 = exp(var_u()) * fprof.apply(omega);
            sys.C2 = pow(var_v(), -3.0) * gprof.apply(omega) +
                     constant(vsign) * var_v();
        } else {
            if (beta == 0.0 || beta == -4.0)
                throw InvalidParams(id + ": beta not in {0,-4}");
            sys.d1 = DiffusivityFamily::power_law(beta, 1.0, Var::U);
            const Field omega = pow(var_v(), 4.0) * pow(var_u(), beta);
            sys.C1 = pow(var_u(), beta + 1.0) * fprof.apply(omega) +
                     constant(vsign * 16.0 / (beta * beta)) * var_u();
            sys.C2 = pow(var_v(), -3.0) * gprof.apply(omega) +
                     constant(vsign) * var_v();
            sys.params["beta"] = beta;
        }
        sys.params["mu"] = mu;

        CatalogParams ap;
        ap.mu = mu;
        ap.alpha = alpha;
        ap.d1_kind = exp_row ? "exp" : "power";
        ap.beta = beta;
        tr.ansatz = build_ansatz("Q-T1-II", ap);

        ReducedODESystem ode;
        ode.system_id = sys.catalog_id;
        ode.chi = exp_row ? exp(phi) * pow(psi, 4.0)
                          : pow(phi, beta) * pow(psi, 4.0);
        const Field fchi = fprof.apply(ode.chi);
        const Field gchi = gprof.apply(ode.chi);
        if (id == "t1r1") {
            ode.rhs_phi = -fchi - constant(32.0 * alpha) * exp(-phi);
            ode.rhs_psi = -psi * gchi + constant(4.0 * alpha) * pow(psi, 5.0);
        } else if (id == "t1r2") {
            ode.rhs_phi = -fchi + constant(8.0) * exp(-phi);
            ode.rhs_psi = -psi * gchi - pow(psi, 5.0);
        } else if (id == "t1r3") {
            ode.rhs_phi =
                -phi * fchi -
                constant(32.0 * alpha * (2.0 + beta) / (beta * beta)) *
                    pow(phi, 1.0 - beta);
            ode.rhs_psi = -psi * gchi + constant(4.0 * alpha) * pow(psi, 5.0);
        } else {
            ode.rhs_phi = -phi * fchi +
                          constant(8.0 * (2.0 + beta) / (beta * beta)) *
                              pow(phi, 1.0 - beta);
            ode.rhs_psi = -psi * gchi - pow(psi, 5.0);
        }
        ode.params = sys.params;
        tr.sys = sys;
        tr.ode = ode;
        return tr;
    }
    throw IncompatiblePair("unknown reduction id '" + id +
                           "'; known: c3 t1r1 t1r2 t1r3 t1r4");
}

ResidualPair reduction_residual(const RDSystem& sys, const Ansatz& a,
                                const ReducedODESystem& ode, double t, double x,
                                double phi, double psi) {
    const auto [dphi, dpsi] = ode.rhs(phi, psi);
    const Ansatz::Eval e = a.eval(t, x, phi, psi, dphi, dpsi);
    const Point4 p{t, x, e.u, e.v};
    const double d1 = sys.d1.eval_d(e.u);
    const double d2 = sys.d2.eval_d(e.v);
    const double C1 = taylor_eval(sys.C1, p, 0).value();
    const double C2 = taylor_eval(sys.C2, p, 0).value();

    ResidualPair r;
    r.r1 = e.u_xx - d1 * e.u_t - C1;
    r.r2 = e.v_xx - d2 * e.v_t - C2;
    r.r1_scale = 1.0 + std::max(std::fabs(e.u_xx),
                                std::max(std::fabs(d1 * e.u_t), std::fabs(C1)));
    r.r2_scale = 1.0 + std::max(std::fabs(e.v_xx),
                                std::max(std::fabs(d2 * e.v_t), std::fabs(C2)));
    return r;
}

std::pair<double, double> closed_form_c6(const C6Params& p, double t) {
    const auto [f, g] = closed_form_c6_fields(p);
    const Point4 q{t, 0, 0, 0};
    return {taylor_eval(f, q, 0).value(), taylor_eval(g, q, 0).value()};
}

std::pair<Field, Field> closed_form_c6_fields(const C6Params& p) {
    const double g0 = (4.0 * p.alpha2 + p.beta * p.alpha1) * p.k;
    if (g0 == 0.0)
        throw InvalidParams(
            "closed form requires (4 alpha2 + beta alpha1) k != 0");
    if (!(p.lambda1 > 0.0))
        throw InvalidParams("closed form requires lambda1 > 0");
    const double scale = g0 * std::pow(p.lambda1, p.beta * p.k);
    const Field base = constant(scale) * (var_t() - constant(p.t0));
    const Field phi =
        constant(p.lambda1) * pow(base, -p.alpha1 / g0);
    const Field psi = pow(base, -p.alpha2 / g0);
    return {phi, psi};
}

} // namespace csymrd
