#include "csymrd/ansatz.hpp"
#include "csymrd/ode.hpp"
#include "csymrd/reduce.hpp"
#include "csymrd/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace csymrd;

namespace {

const char* kTripleIds[] = {"c3", "t1r1", "t1r2", "t1r3", "t1r4"};

CatalogParams triple_params() {
    CatalogParams p;
    p.beta = 2.0;
    p.alpha = 1.0;
    p.alpha1 = 0.7;
    p.alpha2 = -0.3;
    p.k = 1.0;
    return p;
}

double sample_x(const Ansatz& a, SplitMix64& rng) {
    const double lo = std::max(a.x_min_valid + 0.1, -1.0);
    const double hi = std::min(a.x_max_valid - 0.1, 1.0);
    return rng.uniform(lo, hi);
}

SymmetryOperator operator_of_triple(const std::string& id,
                                    const ReductionTriple& tr) {
    CatalogParams p;
    if (id == "c3") {
        p.beta = tr.ansatz.params.at("beta");
        return catalog_operator("Q-T1-I", p);
    }
    p.mu = tr.sys.params.at("mu");
    p.alpha = 1.0;
    if (id == "t1r1" || id == "t1r2") {
        p.d1_kind = "exp";
    } else {
        p.d1_kind = "power";
        p.beta = tr.sys.params.at("beta");
    }
    return catalog_operator("Q-T1-II", p);
}

} // namespace

TEST_CASE("ansatz worked values") {
    SUBCASE("exponential shape of the first family") {
        CatalogParams p;
        p.beta = 2.0;
        const Ansatz a = build_ansatz("Q-T1-I", p);
        const auto e = a.eval(0.0, 0.0, 1.0, 1.0, 0.0, 0.0);
        CHECK(e.u == doctest::Approx(1.0));
        CHECK(e.v == doctest::Approx(1.0));
        CHECK(e.u_x == doctest::Approx(-2.0));
        CHECK(e.v_x == doctest::Approx(1.0));
    }
    SUBCASE("sine-branch shape at the quarter wave") {
        CatalogParams p;
        p.d1_kind = "exp";
        p.mu = -4.0;
        const Ansatz a = build_ansatz("Q-T1-II", p);
        const auto e = a.eval(0.3, M_PI / 4.0, 0.9, 1.1, 0.0, 0.0);
        CHECK(e.u == doctest::Approx(0.9)); // phi - 2 ln 1
        CHECK(e.v == doctest::Approx(1.1));
    }
    SUBCASE("unknown operators are rejected") {
        CHECK_THROWS_AS((void)build_ansatz("Q-T2-I", {}), UnsupportedOperator);
    }
}

TEST_CASE("invariant-surface residuals vanish on every catalogued shape") {
    SplitMix64 rng(61);
    for (const char* id : kTripleIds) {
        const ReductionTriple tr = catalog_triple(id, triple_params());
        const SymmetryOperator op = operator_of_triple(id, tr);
        for (int i = 0; i < 50; ++i) {
            const double t = rng.uniform(0, 1);
            const double x = sample_x(tr.ansatz, rng);
            const double phi = rng.uniform(0.5, 2);
            const double psi = rng.uniform(0.5, 2);
            const auto [q1, q2] =
                invariant_surface_residual(tr.ansatz, op, t, x, phi, psi);
            CHECK(std::fabs(q1) < 1e-12 * (1 + std::fabs(q1)));
            CHECK(std::fabs(q2) < 1e-12);
        }
    }
}

TEST_CASE("a wrong shape leaves a visible surface residual") {
    CatalogParams p;
    p.beta = 2.0;
    Ansatz a = build_ansatz("Q-T1-I", p);
    a.v_of = var_v() * exp(2.0 * var_x()); // deliberately v = psi e^{2x}
    const SymmetryOperator op = catalog_operator("Q-T1-I", p);
    const auto [q1, q2] = invariant_surface_residual(a, op, 0.0, 0.3, 1.0, 1.0);
    CHECK(std::fabs(q1) < 1e-12);
    CHECK(std::fabs(q2) > 1e-2);
}

TEST_CASE("reduced right-hand sides match the catalogued reductions") {
    SUBCASE("plain power reduction with unit reactions") {
        CatalogParams p;
        p.beta = 2.0;
        p.alpha1 = 1.0;
        p.alpha2 = 1.0;
        p.k = 0.0; // alpha * chi^0 = 1
        CatalogParams ap;
        ap.beta = 2.0;
        const Ansatz a = build_ansatz("Q-T1-I", ap);
        const ReducedODESystem ode = reduce("S-c2", a, p);
        const auto [dphi, dpsi] = ode.rhs(1.0, 1.0);
        CHECK(dphi == doctest::Approx(-1.0));
        CHECK(dpsi == doctest::Approx(-1.0));
    }
    SUBCASE("exp row with zero reactions") {
        CatalogParams p;
        p.alpha = 1.0;
        p.alpha1 = 0.0;
        p.alpha2 = 0.0;
        const ReductionTriple tr = catalog_triple("t1r1", p);
        const auto [dphi, dpsi] = tr.ode.rhs(0.0, 1.0);
        CHECK(dphi == doctest::Approx(-32.0));
        CHECK(dpsi == doctest::Approx(4.0));
    }
    SUBCASE("sine power row with zero reactions") {
        CatalogParams p;
        p.beta = 2.0;
        p.alpha1 = 0.0;
        p.alpha2 = 0.0;
        const ReductionTriple tr = catalog_triple("t1r4", p);
        const auto [dphi, dpsi] = tr.ode.rhs(1.0, 1.0);
        CHECK(dphi == doctest::Approx(8.0)); // 8 (2+beta)/beta^2
        CHECK(dpsi == doctest::Approx(-1.0));
    }
}

TEST_CASE("reduction residuals vanish for every catalogued triple") {
    SplitMix64 rng(62);
    for (const char* id : kTripleIds) {
        const ReductionTriple tr = catalog_triple(id, triple_params());
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const double t = rng.uniform(0, 1);
            const double x = sample_x(tr.ansatz, rng);
            const double phi = rng.uniform(0.5, 2);
            const double psi = rng.uniform(0.5, 2);
            const ResidualPair r =
                reduction_residual(tr.sys, tr.ansatz, tr.ode, t, x, phi, psi);
            worst =
                std::max(worst, std::max(std::fabs(r.r1), std::fabs(r.r2)));
        }
        INFO("triple ", id);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("reduction residual detects a dropped linear term") {
    CatalogParams p = triple_params();
    ReductionTriple tr = catalog_triple("c3", p);
    const double beta = 2.0;
    // drop the 16u/beta^2 term from the evolution pair
    tr.sys.C1 = tr.sys.C1 - constant(16.0 / (beta * beta)) * var_u();
    SplitMix64 rng(63);
    for (int i = 0; i < 10; ++i) {
        const double t = rng.uniform(0, 1);
        const double x = rng.uniform(-1, 1);
        const double phi = rng.uniform(0.5, 2);
        const double psi = rng.uniform(0.5, 2);
        const ResidualPair r =
            reduction_residual(tr.sys, tr.ansatz, tr.ode, t, x, phi, psi);
        const double u = phi * std::exp(-2.0 * x);
        CHECK(std::fabs(r.r1) ==
              doctest::Approx(16.0 * u / (beta * beta)).epsilon(1e-9));
    }
}

TEST_CASE("reduction residual detects a perturbed coefficient") {
    for (const char* id : kTripleIds) {
        const ReductionTriple tr = catalog_triple(id, triple_params());
        ReducedODESystem bad = tr.ode;
        bad.rhs_phi = bad.rhs_phi + 0.1 * var_u();
        SplitMix64 rng(64);
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            const double t = rng.uniform(0, 1);
            const double x = sample_x(tr.ansatz, rng);
            const ResidualPair r = reduction_residual(
                tr.sys, tr.ansatz, bad, t, x, rng.uniform(0.5, 2),
                rng.uniform(0.5, 2));
            worst = std::max(worst, std::fabs(r.r1));
        }
        INFO("triple ", id);
        CHECK(worst > 1e-3);
    }
}

TEST_CASE("closed-form pair worked values") {
    C6Params p;
    p.alpha1 = 1.0;
    p.alpha2 = 1.0;
    p.beta = 2.0;
    p.k = 1.0;
    p.lambda1 = 1.0;
    p.t0 = 0.0;
    const auto [phi, psi] = closed_form_c6(p, 1.0 / 6.0);
    CHECK(phi == doctest::Approx(1.0));
    CHECK(psi == doctest::Approx(1.0));
    C6Params degenerate = p;
    degenerate.alpha1 = -2.0; // 4 alpha2 + beta alpha1 = 0
    CHECK_THROWS_AS((void)closed_form_c6(degenerate, 1.0), InvalidParams);
}

TEST_CASE("closed-form pair satisfies the power reduction") {
    const C6Params pc{0.7, -0.3, 2.0, 1.0, 1.2, 0.0};
    const auto [phif, psif] = closed_form_c6_fields(pc);
    // reduced system with the matching power-law reactions
    CatalogParams cp;
    cp.beta = pc.beta;
    cp.alpha1 = pc.alpha1;
    cp.alpha2 = pc.alpha2;
    cp.k = pc.k;
    const ReductionTriple tr = catalog_triple("c3", cp);
    const double g0 = (4.0 * pc.alpha2 + pc.beta * pc.alpha1) * pc.k;
    REQUIRE(g0 > 0.0);
    SplitMix64 rng(65);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(0.05, 2.0);
        const TaylorValue pf = taylor_eval(phif, Point4{t, 0, 0, 0}, 1);
        const TaylorValue sf = taylor_eval(psif, Point4{t, 0, 0, 0}, 1);
        const auto [dphi, dpsi] = tr.ode.rhs(pf.value(), sf.value());
        CHECK(std::fabs(pf.grad(Var::T) - dphi) <
              1e-10 * (1 + std::fabs(dphi)));
        CHECK(std::fabs(sf.grad(Var::T) - dpsi) <
              1e-10 * (1 + std::fabs(dpsi)));
    }
}

TEST_CASE("closed-form scale parameter only enters through the base") {
    C6Params p{1.0, 1.0, 2.0, 1.0, 1.7, 0.0};
    const double g0 = (4.0 + 2.0) * 1.0;
    for (double t : {0.2, 0.5, 1.4}) {
        const auto [phi, psi] = closed_form_c6(p, t);
        const double base = g0 * std::pow(p.lambda1, p.beta * p.k) * t;
        CHECK(phi / p.lambda1 ==
              doctest::Approx(std::pow(base, -p.alpha1 / g0)));
        CHECK(psi == doctest::Approx(std::pow(base, -p.alpha2 / g0)));
    }
}

TEST_CASE("integration matches a linear decay") {
    ReducedODESystem ode;
    ode.system_id = "decay";
    ode.rhs_phi = -var_u();
    ode.rhs_psi = -var_v();
    ode.chi = constant(0.0);
    const Trajectory tr = integrate(ode, {1.0, 2.0}, 0.0, 3.0, {});
    CHECK(tr.termination == Termination::Completed);
    const auto yend = tr.y.back();
    CHECK(yend[0] == doctest::Approx(std::exp(-3.0)).epsilon(1e-8));
    CHECK(yend[1] == doctest::Approx(2.0 * std::exp(-3.0)).epsilon(1e-8));
}

TEST_CASE("integration tracks the closed form") {
    const C6Params pc{1.0, 1.0, 2.0, 1.0, 1.0, 0.0};
    CatalogParams cp;
    cp.beta = pc.beta;
    cp.alpha1 = pc.alpha1;
    cp.alpha2 = pc.alpha2;
    cp.k = pc.k;
    const ReductionTriple tr = catalog_triple("c3", cp);
    const double tstart = pc.t0 + 0.1, tend = pc.t0 + 2.0;
    const auto y0 = closed_form_c6(pc, tstart);
    IntegrateOptions opt;
    opt.rtol = 1e-9;
    const Trajectory traj =
        integrate(tr.ode, {y0.first, y0.second}, tstart, tend, opt);
    REQUIRE(traj.termination == Termination::Completed);
    double worst = 0;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const auto [p, s] = closed_form_c6(pc, traj.t[i]);
        worst = std::max(worst, std::fabs(traj.y[i][0] - p) / std::fabs(p));
        worst = std::max(worst, std::fabs(traj.y[i][1] - s) / std::fabs(s));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("finite-time escape is detected near the separable answer") {
    ReducedODESystem ode;
    ode.system_id = "quintic";
    ode.rhs_phi = constant(0.0);
    ode.rhs_psi = pow(var_v(), 5.0);
    ode.chi = constant(0.0);
    const Trajectory tr = integrate(ode, {1.0, 1.0}, 0.0, 2.0, {});
    CHECK(tr.termination == Termination::BlowUpDetected);
    CHECK(std::fabs(tr.blowup_time - 0.25) < 1e-3);
}

TEST_CASE("step collapse without growth reports stiffness") {
    // the derivative blows up at phi = 1 while phi itself stays bounded
    ReducedODESystem ode;
    ode.system_id = "gradient-wall";
    ode.rhs_phi = constant(1.0) / (1.0 - var_u());
    ode.rhs_psi = constant(0.0);
    ode.chi = constant(0.0);
    CHECK_THROWS_AS((void)integrate(ode, {0.0, 1.0}, 0.0, 2.0, {}),
                    StiffnessFailure);
}

TEST_CASE("leaving the positivity domain terminates gracefully") {
    ReducedODESystem ode;
    ode.system_id = "drift";
    ode.rhs_phi = constant(-1.0) * sqrt(var_u());
    ode.rhs_psi = constant(0.0);
    ode.chi = constant(0.0);
    const Trajectory tr = integrate(ode, {0.04, 1.0}, 0.0, 2.0, {});
    CHECK(tr.termination == Termination::DomainExit);
}

TEST_CASE("fixed-step order on the closed-form family") {
    const C6Params pc{1.0, 1.0, 2.0, 1.0, 1.0, 0.0};
    CatalogParams cp;
    cp.beta = pc.beta;
    cp.k = pc.k;
    const ReductionTriple tr = catalog_triple("c3", cp);
    const double tstart = 0.1, tend = 1.1;
    const auto y0 = closed_form_c6(pc, tstart);
    const auto err_for = [&](double h) {
        IntegrateOptions opt;
        opt.fixed_step = true;
        opt.fixed_h = h;
        const Trajectory traj =
            integrate(tr.ode, {y0.first, y0.second}, tstart, tend, opt);
        const auto [p, s] = closed_form_c6(pc, traj.t.back());
        return std::max(std::fabs(traj.y.back()[0] - p),
                        std::fabs(traj.y.back()[1] - s));
    };
    const double e1 = err_for(0.02);
    const double e2 = err_for(0.01);
    CHECK(std::log2(e1 / e2) >= 4.0);
}

TEST_CASE("adaptive tolerance halving reduces the error") {
    const C6Params pc{1.0, 1.0, 2.0, 1.0, 1.0, 0.0};
    CatalogParams cp;
    cp.beta = pc.beta;
    cp.k = pc.k;
    const ReductionTriple tr = catalog_triple("c3", cp);
    const auto y0 = closed_form_c6(pc, 0.1);
    double prev = 1e300;
    for (double rtol : {1e-6, 1e-7, 1e-8}) {
        IntegrateOptions opt;
        opt.rtol = rtol;
        opt.atol = 1e-14;
        const Trajectory traj =
            integrate(tr.ode, {y0.first, y0.second}, 0.1, 2.1, opt);
        const auto [p, s] = closed_form_c6(pc, traj.t.back());
        const double e = std::max(std::fabs(traj.y.back()[0] - p),
                                  std::fabs(traj.y.back()[1] - s));
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("interpolated trajectory keeps a small midpoint defect") {
    const C6Params pc{1.0, 1.0, 2.0, 1.0, 1.0, 0.0};
    CatalogParams cp;
    cp.beta = pc.beta;
    cp.k = pc.k;
    const ReductionTriple tr = catalog_triple("c3", cp);
    const auto y0 = closed_form_c6(pc, 0.1);
    const Trajectory traj =
        integrate(tr.ode, {y0.first, y0.second}, 0.1, 2.1, {});
    double worst = 0;
    for (std::size_t i = 0; i + 1 < traj.t.size(); ++i) {
        const double mid = 0.5 * (traj.t[i] + traj.t[i + 1]);
        const auto ym = traj.interpolate(mid);
        const auto dym = traj.interpolate_derivative(mid);
        const auto [f1, f2] = tr.ode.rhs(ym[0], ym[1]);
        worst = std::max(worst, std::fabs(dym[0] - f1));
        worst = std::max(worst, std::fabs(dym[1] - f2));
    }
    CHECK(worst < 1e-5);
}
