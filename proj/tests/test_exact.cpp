#include "csymrd/catalog.hpp"
#include "csymrd/exact.hpp"
#include "csymrd/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace csymrd;

namespace {

FamilyParams base_params() {
    FamilyParams p;
    p.beta = 2.0;
    p.k = 1.0;
    p.alpha1 = 1.0;
    p.alpha2 = 1.0;
    p.lambda1 = 1.0;
    p.t0 = -1.0;
    return p;
}

CatalogParams c13_params(const FamilyParams& p) {
    CatalogParams cp;
    cp.beta = p.beta;
    cp.alpha1 = p.alpha1;
    cp.alpha2 = p.alpha2;
    cp.k = p.k;
    return cp;
}

// numeric probe: growth/decay of both components toward the singular time
enum class Limit { Blows, Vanishes };
std::pair<Limit, Limit> probe_family(const ExactSolutionFamily& f) {
    const double side = f.gamma_k > 0 ? 1.0 : -1.0;
    double u_prev = 0, v_prev = 0;
    int u_grow = 0, v_grow = 0;
    bool first = true;
    for (const double d : {0.1, 0.01, 0.001}) {
        const auto [c1, c2] = f.eval(f.t0 + side * d, 0.0);
        if (!first) {
            u_grow += std::fabs(c1.val) > u_prev ? 1 : -1;
            v_grow += std::fabs(c2.val) > v_prev ? 1 : -1;
        }
        u_prev = std::fabs(c1.val);
        v_prev = std::fabs(c2.val);
        first = false;
    }
    return {u_grow > 0 ? Limit::Blows : Limit::Vanishes,
            v_grow > 0 ? Limit::Blows : Limit::Vanishes};
}

} // namespace

TEST_CASE("flux-form family worked values") {
    FamilyParams p = base_params();
    const ExactSolutionFamily c14 = make_family_c14(p);
    const auto [U, V] = c14.eval(0.0, 0.0);
    // base = gamma k (t - t0) = 6 at t = 0
    CHECK(U.val == doctest::Approx(std::pow(6.0, -0.5)));
    CHECK(V.val == doctest::Approx(std::pow(6.0, +0.5)));

    // the family is the image of the evolution-form one under the power map
    const ExactSolutionFamily c9 = make_family_c9(p);
    SplitMix64 rng(71);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(-0.9, 1.0);
        const double x = rng.uniform(-1.0, 1.0);
        const auto [u, v] = c9.eval(t, x);
        const auto [Um, Vm] = map_solution_c10(u.val, v.val, p.beta);
        const auto [Ue, Ve] = c14.eval(t, x);
        CHECK(Um == doctest::Approx(Ue.val).epsilon(1e-12));
        CHECK(Vm == doctest::Approx(Ve.val).epsilon(1e-12));
    }
}

TEST_CASE("power substitution basics") {
    CHECK(map_solution_c10(1.0, 1.0, 3.7) ==
          std::pair<double, double>{1.0, 1.0});
    const auto [U, V] = map_solution_c10(2.0, 2.0, 2.0);
    CHECK(U == doctest::Approx(8.0));
    CHECK(V == doctest::Approx(0.125));
    SplitMix64 rng(72);
    for (int i = 0; i < 50; ++i) {
        const double u = rng.uniform(0.2, 3.0), v = rng.uniform(0.2, 3.0);
        const auto [Uu, Vv] = map_solution_c10(u, v, 2.0);
        const auto [ub, vb] = map_solution_c10_inverse(Uu, Vv, 2.0);
        CHECK(ub == doctest::Approx(u).epsilon(1e-14));
        CHECK(vb == doctest::Approx(v).epsilon(1e-14));
    }
    CHECK_THROWS_AS((void)map_solution_c10(-1.0, 1.0, 2.0), DomainError);
}

TEST_CASE("families satisfy their systems") {
    SplitMix64 rng(73);
    for (const auto& bk :
         {std::pair{2.0, 1.0}, std::pair{3.0, 1.0}, std::pair{2.0, 2.0}}) {
        const double beta = bk.first, k = bk.second;
        FamilyParams p = base_params();
        p.beta = beta;
        p.k = k;
        const ExactSolutionFamily c9 = make_family_c9(p);
        const ExactSolutionFamily c14 = make_family_c14(p);
        const RDSystem sys = catalog_system("S-c8", c13_params(p));
        const PhysicalRDSystem phys = catalog_physical("S-c13", c13_params(p));
        double worst9 = 0, worst14 = 0;
        for (int i = 0; i < 100; ++i) {
            const double t = rng.uniform(-0.9, 1.0);
            const double x = rng.uniform(-1.0, 1.0);
            const ResidualPair r9 = solution_residual(sys, c9, t, x);
            const ResidualPair r14 = solution_residual(phys, c14, t, x);
            worst9 = std::max(worst9, r9.max_normalized());
            worst14 = std::max(worst14, r14.max_normalized());
        }
        INFO("beta ", beta, " k ", k);
        CHECK(worst9 < 1e-9);
        CHECK(worst14 < 1e-9);
    }
}

TEST_CASE("a perturbed exponent leaves a visible residual") {
    FamilyParams p = base_params();
    const RDSystem sys = catalog_system("S-c8", c13_params(p));
    ExactSolutionFamily fam = make_family_c9(p);
    // perturb the time exponent of the first component only
    const double g0 = fam.gamma_k;
    const Field base = constant(g0) * (var_t() - constant(p.t0));
    fam.comp1 = constant(p.lambda1) * pow(base, -1.1 * p.alpha1 / g0) *
                exp(constant(-4.0 / p.beta) * var_x());
    SplitMix64 rng(74);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const ResidualPair r = solution_residual(
            sys, fam, rng.uniform(-0.5, 1.0), rng.uniform(-1.0, 1.0));
        worst = std::max(worst, r.max_normalized());
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("plane wave solves both forms") {
    const double beta = 2.0, a1 = 1.0, a2 = 0.5;
    const ExactSolutionFamily pw = make_plane_wave(beta, a1, a2);
    const ExactSolutionFamily pwf = make_plane_wave_flux(beta, a1, a2);
    // evolution form: constant reactions
    CatalogParams cp;
    cp.beta = beta;
    const RDSystem sys =
        catalog_system("S-c2", cp, ReactionProfile::constant(a1),
                       ReactionProfile::constant(a2));
    const PhysicalRDSystem phys = plane_wave_physical(beta, a1, a2);
    SplitMix64 rng(75);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(0, 1), x = rng.uniform(-1, 1);
        CHECK(solution_residual(sys, pw, t, x).max_normalized() < 1e-12);
        CHECK(solution_residual(phys, pwf, t, x).max_normalized() < 1e-12);
        // the flux components are the power image of the evolution ones
        const auto [u, v] = pw.eval(t, x);
        const auto [Um, Vm] = map_solution_c10(u.val, v.val, beta);
        const auto [Ue, Ve] = pwf.eval(t, x);
        CHECK(Um == doctest::Approx(Ue.val).epsilon(1e-12));
        CHECK(Vm == doctest::Approx(Ve.val).epsilon(1e-12));
    }
}

TEST_CASE("validity set follows the base sign") {
    FamilyParams p = base_params();
    p.t0 = 0.5; // gamma k > 0, so valid for t > t0
    const ExactSolutionFamily f = make_family_c9(p);
    CHECK(f.valid(1.0, 0.0));
    CHECK_FALSE(f.valid(0.0, 0.0));
    CHECK_THROWS_AS((void)f.eval(0.0, 0.0), DomainError);
}

TEST_CASE("regime classification from the exact exponents") {
    const double kp = 2.0 / 3.0;
    SUBCASE("worked cells") {
        // gamma = 6, both amplitude products positive: the first component
        // escapes, the second decays toward the singular time
        CHECK(classify_regime(3, 3, kp, 1, 1) == Regime::UBlowsVVanishes);
        // gamma = -2: both components decay
        CHECK(classify_regime(3, -3, kp, 1, 1) == Regime::BothVanish);
        CHECK(classify_regime(3, 3, kp, 1, -1) == Regime::Global);
        // gamma = 2/3 with a negative second amplitude: both escape
        CHECK(classify_regime(3, -1, kp, 1, 1) == Regime::BothBlowUp);
        // reversed coupling sign: the second escapes, the first decays
        CHECK(classify_regime(3, 3, kp, -1, 1) == Regime::VBlowsUVanishes);
    }
    SUBCASE("boundaries are reported, not classified") {
        CHECK_THROWS_AS((void)classify_regime(3, 3, kp, 1, 0), BoundaryCase);
        CHECK_THROWS_AS((void)classify_regime(0, 3, kp, 1, 1), BoundaryCase);
        // gamma k = 0
        CHECK_THROWS_AS((void)classify_regime(4, -2.0 * kp * 4.0 * 3.0 / 8.0,
                                              kp, 1, 1),
                        InvalidParams);
    }
    SUBCASE("labels agree with the numeric limit probe") {
        for (const double kappa : {2.0 / 3.0, 0.75}) {
            const double beta = kappa / (1.0 - kappa);
            for (const double a1s : {3.0, -3.0})
                for (const double a2s : {3.0, -3.0})
                    for (const double k : {1.0, -1.0})
                        for (const double t0 : {1.0, -1.0}) {
                            const Regime r =
                                classify_regime(a1s, a2s, kappa, k, t0);
                            FamilyParams p;
                            p.beta = beta;
                            p.k = k;
                            p.alpha1 = a1s / (beta + 1.0);
                            p.alpha2 = a2s / 3.0;
                            p.lambda1 = 1.0;
                            p.t0 = t0;
                            const ExactSolutionFamily f = make_family_c14(p);
                            const double side = f.gamma_k > 0 ? 1.0 : -1.0;
                            if (t0 < 0) {
                                CHECK(r == Regime::Global);
                                // stays finite arbitrarily far on the valid
                                // side of the singular time
                                const auto [c1, c2] =
                                    f.eval(t0 + side * 6.0, 0.3);
                                CHECK(std::isfinite(c1.val));
                                CHECK(std::isfinite(c2.val));
                                continue;
                            }
                            const auto [ul, vl] = probe_family(f);
                            const bool ub = ul == Limit::Blows;
                            const bool vb = vl == Limit::Blows;
                            Regime want = Regime::BothVanish;
                            if (ub && vb) want = Regime::BothBlowUp;
                            else if (ub) want = Regime::UBlowsVVanishes;
                            else if (vb) want = Regime::VBlowsUVanishes;
                            CHECK(r == want);
                        }
        }
    }
}
