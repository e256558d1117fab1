#include "csymrd/kernels/array_ops.hpp"
#include "csymrd/catalog.hpp"
#include "csymrd/pde.hpp"
#include "csymrd/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace csymrd;

namespace {

CatalogParams benchmark_params() {
    CatalogParams p;
    p.beta = 2.0;
    p.k = 1.0;
    p.alpha1s = 3.0;
    p.alpha2s = 3.0;
    p.kappa = 2.0 / 3.0;
    return p;
}

FamilyParams benchmark_family() {
    FamilyParams f;
    f.beta = 2.0;
    f.k = 1.0;
    f.alpha1 = 1.0;
    f.alpha2 = 1.0;
    f.lambda1 = 1.0;
    f.t0 = -1.0;
    return f;
}

} // namespace

TEST_CASE("constant state with zero reaction stays put") {
    PhysicalRDSystem sys;
    sys.D1 = DiffusivityFamily::constant(1.0, Var::U);
    sys.D2 = DiffusivityFamily::constant(2.0, Var::V);
    sys.F = constant(0.0);
    sys.G = constant(0.0);
    GridField ic;
    ic.x_left = 0;
    ic.x_right = 1;
    ic.n = 32;
    ic.U.assign(33, 1.7);
    ic.V.assign(33, 0.4);
    const auto snaps =
        simulate(sys, ic, BoundaryCondition::fixed_from(ic), 0.05, {});
    for (int i = 0; i <= 32; ++i) {
        CHECK(snaps.back().U[i] == doctest::Approx(1.7).epsilon(1e-13));
        CHECK(snaps.back().V[i] == doctest::Approx(0.4).epsilon(1e-13));
    }
}

TEST_CASE("zero steps give zero error") {
    const ExactSolutionFamily fam = make_family_c14(benchmark_family());
    const GridField ic = grid_from_family(fam, 0.0, 0.5, 32, 0.0);
    const auto errs = error_vs_exact({ic}, fam);
    CHECK(errs.front().linf_U == 0.0);
    CHECK(errs.front().linf_V == 0.0);
    CHECK(errs.front().l2_U == 0.0);
}

TEST_CASE("convergence order arithmetic") {
    CHECK(convergence_order({4.0, 1.0, 0.25}) == doctest::Approx(2.0));
    CHECK_THROWS_AS((void)convergence_order({1.0, 1.0, 1.0}),
                    DegenerateErrors);
    CHECK_THROWS_AS((void)convergence_order({1.0, -1.0}), DegenerateErrors);
    CHECK_THROWS_AS((void)convergence_order({1.0}), DegenerateErrors);
}

TEST_CASE("short benchmark run converges at second order") {
    const ExactSolutionFamily fam = make_family_c14(benchmark_family());
    const PhysicalRDSystem sys = catalog_physical("S-c13", benchmark_params());
    std::vector<double> errs;
    for (int n : {16, 32, 64}) {
        const GridField ic = grid_from_family(fam, 0.0, 0.5, n, 0.0);
        SimulateOptions opt;
        opt.cfl = 0.9;
        const auto snaps =
            simulate(sys, ic, BoundaryCondition::from_family(fam), 0.05, opt);
        errs.push_back(error_vs_exact({snaps.back()}, fam).front().linf());
    }
    const double order = convergence_order(errs);
    CHECK(order > 1.5);
    CHECK(order < 2.5);
}

TEST_CASE("plane-wave benchmark error stays small") {
    const double beta = 2.0, a1 = 1.0, a2 = 0.5;
    const ExactSolutionFamily pw = make_plane_wave_flux(beta, a1, a2);
    const PhysicalRDSystem sys = plane_wave_physical(beta, a1, a2);
    const GridField ic = grid_from_family(pw, 0.0, 0.5, 128, 0.0);
    const auto snaps =
        simulate(sys, ic, BoundaryCondition::from_family(pw), 0.25, {});
    const auto errs = error_vs_exact({snaps.back()}, pw);
    CHECK(errs.front().linf() < 1e-5);
}

TEST_CASE("positivity guard fires on a draining component") {
    PhysicalRDSystem sys;
    sys.D1 = DiffusivityFamily::power_law(-2.0 / 3.0, 1.0, Var::U);
    sys.D2 = DiffusivityFamily::constant(1.0, Var::V);
    sys.F = constant(-10.0); // constant drain
    sys.G = constant(0.0);
    GridField ic;
    ic.x_left = 0;
    ic.x_right = 1;
    ic.n = 16;
    ic.U.assign(17, 0.05);
    ic.V.assign(17, 1.0);
    CHECK_THROWS_AS((void)simulate(sys, ic, BoundaryCondition::fixed_from(ic),
                                   1.0, {}),
                    PositivityLoss);
}

TEST_CASE("cfl outside (0,1] is rejected") {
    PhysicalRDSystem sys;
    sys.D1 = DiffusivityFamily::constant(1.0, Var::U);
    sys.D2 = DiffusivityFamily::constant(1.0, Var::V);
    sys.F = constant(0.0);
    sys.G = constant(0.0);
    GridField ic;
    ic.n = 8;
    ic.U.assign(9, 1.0);
    ic.V.assign(9, 1.0);
    SimulateOptions opt;
    opt.cfl = 1.5;
    CHECK_THROWS_AS(
        (void)simulate(sys, ic, BoundaryCondition::fixed_from(ic), 0.1, opt),
        InvalidParams);
}

TEST_CASE("snapshots are taken at the requested times") {
    const ExactSolutionFamily fam = make_family_c14(benchmark_family());
    const PhysicalRDSystem sys = catalog_physical("S-c13", benchmark_params());
    const GridField ic = grid_from_family(fam, 0.0, 0.5, 16, 0.0);
    SimulateOptions opt;
    opt.snapshot_times = {0.01, 0.02};
    const auto snaps =
        simulate(sys, ic, BoundaryCondition::from_family(fam), 0.03, opt);
    REQUIRE(snaps.size() == 4); // ic + two marks + t_end
    CHECK(snaps[1].time == doctest::Approx(0.01));
    CHECK(snaps[2].time == doctest::Approx(0.02));
    CHECK(snaps[3].time == doctest::Approx(0.03));
}

TEST_CASE("simulation is bitwise identical across kernel backends") {
    if (!kernels::backend_available(kernels::Backend::Avx2)) {
        MESSAGE("avx2 backend unavailable; skipping");
        return;
    }
    const ExactSolutionFamily fam = make_family_c14(benchmark_family());
    const PhysicalRDSystem sys = catalog_physical("S-c13", benchmark_params());
    const GridField ic = grid_from_family(fam, 0.0, 0.5, 24, 0.0);
    const kernels::Backend saved = kernels::active_backend();
    kernels::set_active_backend(kernels::Backend::Scalar);
    const auto a =
        simulate(sys, ic, BoundaryCondition::from_family(fam), 0.02, {});
    kernels::set_active_backend(kernels::Backend::Avx2);
    const auto b =
        simulate(sys, ic, BoundaryCondition::from_family(fam), 0.02, {});
    kernels::set_active_backend(saved);
    REQUIRE(a.size() == b.size());
    for (std::size_t s = 0; s < a.size(); ++s)
        for (int i = 0; i <= a[s].n; ++i) {
            CHECK(a[s].U[i] == b[s].U[i]);
            CHECK(a[s].V[i] == b[s].V[i]);
        }
}

TEST_CASE("generic field path matches the tabled fast path") {
    const ExactSolutionFamily fam = make_family_c14(benchmark_family());
    PhysicalRDSystem sys = catalog_physical("S-c13", benchmark_params());
    const GridField ic = grid_from_family(fam, 0.0, 0.5, 16, 0.0);
    const auto fast =
        simulate(sys, ic, BoundaryCondition::from_family(fam), 0.01, {});
    sys.fast.reset();
    const auto slow =
        simulate(sys, ic, BoundaryCondition::from_family(fam), 0.01, {});
    REQUIRE(fast.size() == slow.size());
    for (int i = 0; i <= 16; ++i) {
        CHECK(fast.back().U[i] ==
              doctest::Approx(slow.back().U[i]).epsilon(1e-11));
        CHECK(fast.back().V[i] ==
              doctest::Approx(slow.back().V[i]).epsilon(1e-11));
    }
}
