#include "csymrd/field.hpp"
#include "csymrd/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace csymrd;

TEST_CASE("fd_check on the worked cases") {
    CHECK(fd_check(var_u() * var_u(), Point4{0, 0, 3, 0}, 1e-4) < 1e-7);
    CHECK(fd_check(exp(2.0 * var_x()), Point4{0, 0, 0, 0}, 1e-4) < 1e-6);
    CHECK(fd_check(constant(7.0), Point4{0.2, 0.4, 1.0, 1.0}, 1e-4) == 0.0);
}

TEST_CASE("fd_check across a field battery at random points") {
    const std::vector<Field> battery = {
        var_u() * var_u(),
        pow(var_v(), 4.0) * pow(var_u(), 2.0),
        exp(2.0 * var_x()) + sin(var_t()),
        log(var_u()) * cos(var_x()),
        pow(var_u(), -1.5) / (1.0 + var_v()),
        sqrt(var_u() * var_v()) - var_t() * var_x(),
        exp(var_u() - var_v()) * sin(2.0 * var_x()),
        pow(var_u(), var_v()),
    };
    SplitMix64 rng(2024);
    for (const Field& f : battery) {
        for (int i = 0; i < 100; ++i) {
            const Point4 p{rng.uniform(-1, 1), rng.uniform(-1, 1),
                           rng.uniform(0.5, 2), rng.uniform(0.5, 2)};
            const double val = taylor_eval(f, p, 0).value();
            const double disc = fd_check(f, p, 1e-5);
            CHECK(disc / (1.0 + std::fabs(val)) < 1e-5);
        }
    }
}

TEST_CASE("fd_check validates h") {
    CHECK_THROWS_AS((void)fd_check(var_u(), Point4{}, 0.0), DomainError);
}

TEST_CASE("affine substitution chains derivatives") {
    // f(u) = u^3 evaluated at 2u + 1
    const Field f = subst_affine(pow(var_u(), 3.0), {1, 1, 2, 1}, {0, 0, 1, 0});
    const double u = 0.7;
    const double w = 2 * u + 1;
    const TaylorValue t = taylor_eval(f, Point4{0, 0, u, 0}, 2);
    CHECK(t.value() == doctest::Approx(w * w * w));
    CHECK(t.grad(Var::U) == doctest::Approx(3 * w * w * 2));
    CHECK(t.hess(Var::U, Var::U) == doctest::Approx(6 * w * 4));
}

TEST_CASE("swap_uv exchanges the u and v slots") {
    const Field f = swap_uv(pow(var_u(), 2.0) * var_v());
    // f(u,v) = v^2 * u
    const TaylorValue t = taylor_eval(f, Point4{0, 0, 3, 2}, 2);
    CHECK(t.value() == doctest::Approx(12.0));
    CHECK(t.grad(Var::U) == doctest::Approx(4.0));  // v^2
    CHECK(t.grad(Var::V) == doctest::Approx(12.0)); // 2uv
    CHECK(t.hess(Var::U, Var::V) == doctest::Approx(4.0));
    CHECK(t.hess(Var::V, Var::V) == doctest::Approx(6.0));
}

TEST_CASE("literal zero detection") {
    CHECK(is_literal_zero(constant(0.0)));
    CHECK_FALSE(is_literal_zero(constant(1.0)));
    CHECK_FALSE(is_literal_zero(var_u()));
}
