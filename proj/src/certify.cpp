#include "csymrd/certify.hpp"

#include "csymrd/errors.hpp"
#include "csymrd/rng.hpp"

#include <algorithm>
#include <cmath>

namespace csymrd {

namespace {

// signed sum tracking the largest term magnitude
struct TermSum {
    double sum = 0;
    double peak = 0;
    void add(double term) {
        sum += term;
        peak = std::max(peak, std::fabs(term));
    }
    double scale() const { return 1.0 + peak; }
};

} // namespace

double ResidualPair::max_normalized() const {
    return std::max(std::fabs(r1) / r1_scale, std::fabs(r2) / r2_scale);
}

double DeterminingResiduals::max_normalized() const {
    double m = 0;
    for (int i = 0; i < kCount; ++i)
        m = std::max(m, std::fabs(r[i]) / scale[i]);
    return m;
}

const char* DeterminingResiduals::label(int i) {
    static const char* names[kCount] = {
        "xi_u",
        "xi_v",
        "(d1-d2) eta1_v",
        "(d1-d2) eta2_u",
        "eta1_vv",
        "eta2_vv",
        "eta1_xv + eta1_uv eta1/xi",
        "2 xi_x d1 + eta1 d1_u",
        "2 xi_x d2 + eta2 d2_v",
        "xi_t d2 + 2 eta2_xv - xi_xx + 2 eta1/xi eta2_uv",
        "u-component classification",
        "v-component classification",
    };
    return names[i];
}

ResidualPair invariance_residual(const RDSystem& sys,
                                 const SymmetryOperator& Q, const JetBase& base,
                                 ManifoldKind kind) {
    const JetPoint j = project_manifold(sys, Q, base, kind);
    const ProlongedCoefficients pc = prolong_second(Q, j);
    const Point4 p = j.base();

    const double eta1 = taylor_eval(Q.eta1, p, 0).value();
    const double eta2 = taylor_eval(Q.eta2, p, 0).value();
    const TaylorValue C1 = taylor_eval(sys.C1, p, 1);
    const TaylorValue C2 = taylor_eval(sys.C2, p, 1);
    const double d1 = sys.d1.eval_d(j.u);
    const double d1u = sys.d1.eval_du(j.u);
    const double d2 = sys.d2.eval_d(j.v);
    const double d2v = sys.d2.eval_du(j.v);

    TermSum s1;
    s1.add(pc.sigma1_xx);
    s1.add(-d1 * pc.rho1_t);
    s1.add(-eta1 * d1u * j.u_t);
    s1.add(-eta1 * C1.grad(Var::U));
    s1.add(-eta2 * C1.grad(Var::V));

    TermSum s2;
    s2.add(pc.sigma2_xx);
    s2.add(-d2 * pc.rho2_t);
    s2.add(-eta2 * d2v * j.v_t);
    s2.add(-eta1 * C2.grad(Var::U));
    s2.add(-eta2 * C2.grad(Var::V));

    return ResidualPair{s1.sum, s2.sum, s1.scale(), s2.scale()};
}

DeterminingResiduals determining_residuals(const RDSystem& sys,
                                           const SymmetryOperator& Q,
                                           const Point4& p) {
    const TaylorValue xi = taylor_eval(Q.xi, p, 2);
    const TaylorValue e1 = taylor_eval(Q.eta1, p, 2);
    const TaylorValue e2 = taylor_eval(Q.eta2, p, 2);
    const TaylorValue C1 = taylor_eval(sys.C1, p, 1);
    const TaylorValue C2 = taylor_eval(sys.C2, p, 1);
    const double d1 = sys.d1.eval_d(p.u);
    const double d1u = sys.d1.eval_du(p.u);
    const double d2 = sys.d2.eval_d(p.v);
    const double d2v = sys.d2.eval_du(p.v);
    if (std::fabs(xi.value()) < 1e-12)
        throw SingularManifold("determining residuals need xi != 0");
    const double q1 = e1.value() / xi.value(); // eta1 / xi

    DeterminingResiduals out;
    int idx = 0;
    const auto put = [&](const TermSum& ts) {
        out.r[idx] = ts.sum;
        out.scale[idx] = ts.scale();
        ++idx;
    };

    TermSum t;
    t.add(xi.grad(Var::U));
    put(t);
    t = {};
    t.add(xi.grad(Var::V));
    put(t);
    t = {};
    t.add((d1 - d2) * e1.grad(Var::V));
    put(t);
    t = {};
    t.add((d1 - d2) * e2.grad(Var::U));
    put(t);
    t = {};
    t.add(e1.hess(Var::V, Var::V));
    put(t);
    t = {};
    t.add(e2.hess(Var::V, Var::V));
    put(t);
    t = {};
    t.add(e1.hess(Var::X, Var::V));
    t.add(e1.hess(Var::U, Var::V) * q1);
    put(t);
    t = {};
    t.add(2.0 * xi.grad(Var::X) * d1);
    t.add(e1.value() * d1u);
    put(t);
    t = {};
    t.add(2.0 * xi.grad(Var::X) * d2);
    t.add(e2.value() * d2v);
    put(t);
    t = {};
    t.add(xi.grad(Var::T) * d2);
    t.add(2.0 * e2.hess(Var::X, Var::V));
    t.add(-xi.hess(Var::X, Var::X));
    t.add(2.0 * q1 * e2.hess(Var::U, Var::V));
    put(t);

    // u-component classification equation
    t = {};
    t.add(e1.value() * C1.grad(Var::U));
    t.add(e2.value() * C1.grad(Var::V));
    t.add(-e1.grad(Var::V) * C2.value());
    t.add((2.0 * xi.grad(Var::X) - e1.grad(Var::U)) * C1.value());
    t.add(e1.grad(Var::T) * d1);
    t.add(-e1.hess(Var::X, Var::X));
    t.add(-q1 * q1 * e1.hess(Var::U, Var::U));
    t.add(-q1 * (xi.grad(Var::T) * d1 + 2.0 * e1.hess(Var::X, Var::U) -
                 xi.hess(Var::X, Var::X)));
    put(t);

    // v-component classification equation
    t = {};
    t.add(e1.value() * C2.grad(Var::U));
    t.add(e2.value() * C2.grad(Var::V));
    t.add(-e2.grad(Var::U) * C1.value());
    t.add((2.0 * xi.grad(Var::X) - e2.grad(Var::V)) * C2.value());
    t.add(e2.grad(Var::T) * d2);
    t.add(-e2.hess(Var::X, Var::X));
    t.add(-q1 * q1 * e2.hess(Var::U, Var::U));
    t.add(-2.0 * q1 * e2.hess(Var::X, Var::U));
    put(t);

    return out;
}

std::pair<double, double> lie_restriction_residuals(const RDSystem& sys,
                                                    const SymmetryOperator& Q,
                                                    const Point4& p) {
    const TaylorValue xi = taylor_eval(Q.xi, p, 2);
    const TaylorValue e1 = taylor_eval(Q.eta1, p, 2);
    const double d1 = sys.d1.eval_d(p.u);
    const double a = e1.hess(Var::U, Var::U);
    const double b = xi.grad(Var::T) * d1 + 2.0 * e1.hess(Var::X, Var::U) -
                     xi.hess(Var::X, Var::X);
    return {a, b};
}

CertificationReport certify(const RDSystem& sys, const SymmetryOperator& Q,
                            const SamplerConfig& cfg) {
    SplitMix64 rng(cfg.seed);
    CertificationReport rep;
    rep.tol = cfg.tol;
    rep.seed = cfg.seed;

    int produced = 0;
    int attempts = 0;
    const int max_attempts = cfg.n * 200;
    while (produced < cfg.n && attempts < max_attempts) {
        ++attempts;
        JetBase b;
        b.t = rng.uniform(cfg.t_min, cfg.t_max);
        b.x = rng.uniform(cfg.x_min, cfg.x_max);
        b.u = rng.uniform(cfg.u_min, cfg.u_max);
        b.v = rng.uniform(cfg.v_min, cfg.v_max);
        b.u_t = rng.uniform(cfg.deriv_min, cfg.deriv_max);
        b.v_t = rng.uniform(cfg.deriv_min, cfg.deriv_max);
        b.v_x = rng.uniform(cfg.deriv_min, cfg.deriv_max);
        b.v_tx = rng.uniform(cfg.deriv_min, cfg.deriv_max);
        const Point4 p{b.t, b.x, b.u, b.v};
        const double xiv = taylor_eval(Q.xi, p, 0).value();
        if (std::fabs(xiv) <= cfg.xi_min) continue;
        ++produced;

        try {
            const ResidualPair inv =
                invariance_residual(sys, Q, b, ManifoldKind::FirstTypeU);
            rep.max_invariance_residual =
                std::max(rep.max_invariance_residual, inv.max_normalized());

            const DeterminingResiduals det = determining_residuals(sys, Q, p);
            rep.max_determining_residual =
                std::max(rep.max_determining_residual, det.max_normalized());

            const auto [l1, l2] = lie_restriction_residuals(sys, Q, p);
            rep.restriction_residuals.first =
                std::max(rep.restriction_residuals.first, std::fabs(l1));
            rep.restriction_residuals.second =
                std::max(rep.restriction_residuals.second, std::fabs(l2));
        } catch (const Error&) {
            ++rep.n_failed;
        }
    }
    if (produced < cfg.n)
        throw DomainError("sampler failed to find points with |xi| above the "
                          "filter; adjust the box");
    rep.n_samples = produced;

    const bool residuals_ok = rep.n_failed == 0 &&
                              rep.max_invariance_residual < cfg.tol &&
                              rep.max_determining_residual < cfg.tol;
    const double restr = std::max(rep.restriction_residuals.first,
                                  rep.restriction_residuals.second);
    rep.is_lie = restr <= 10.0 * cfg.tol;
    if (!residuals_ok)
        rep.verdict = Verdict::Fails;
    else
        rep.verdict = rep.is_lie ? Verdict::Lie : Verdict::FirstType;
    return rep;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::FirstType: return "FirstType";
    case Verdict::Lie: return "Lie";
    default: return "Fails";
    }
}

} // namespace csymrd
