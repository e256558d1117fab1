#include "csymrd/field.hpp"
#include "csymrd/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace csymrd;

TEST_CASE("monomial derivatives") {
    const Field f = var_u() * var_u();
    const TaylorValue t = taylor_eval(f, Point4{0, 0, 3, 0}, 2);
    CHECK(t.value() == doctest::Approx(9.0));
    CHECK(t.grad(Var::U) == doctest::Approx(6.0));
    CHECK(t.hess(Var::U, Var::U) == doctest::Approx(2.0));
    CHECK(t.grad(Var::V) == 0.0);
}

TEST_CASE("exponential derivatives") {
    const Field f = exp(2.0 * var_x());
    const TaylorValue t = taylor_eval(f, Point4{0, 0, 0, 0}, 2);
    CHECK(t.value() == doctest::Approx(1.0));
    CHECK(t.grad(Var::X) == doctest::Approx(2.0));
    CHECK(t.hess(Var::X, Var::X) == doctest::Approx(4.0));
}

TEST_CASE("mixed monomial v^4 u^2") {
    const Field f = pow(var_v(), 4.0) * pow(var_u(), 2.0);
    const TaylorValue t = taylor_eval(f, Point4{0, 0, 1, 1}, 2);
    CHECK(t.value() == doctest::Approx(1.0));
    CHECK(t.grad(Var::U) == doctest::Approx(2.0));
    CHECK(t.grad(Var::V) == doctest::Approx(4.0));
    CHECK(t.hess(Var::U, Var::U) == doctest::Approx(2.0));
    CHECK(t.hess(Var::U, Var::V) == doctest::Approx(8.0));
    CHECK(t.hess(Var::V, Var::V) == doctest::Approx(12.0));
}

TEST_CASE("linearity of evaluation") {
    const Field f = sin(var_x()) * pow(var_u(), 3.0) + exp(var_v());
    const Field g = log(var_u()) / (1.0 + var_v() * var_v());
    const Field combo = 3.5 * f - 1.25 * g;
    SplitMix64 rng(11);
    for (int i = 0; i < 40; ++i) {
        const Point4 p{rng.uniform(-1, 1), rng.uniform(-1, 1),
                       rng.uniform(0.5, 2), rng.uniform(0.5, 2)};
        const TaylorValue a = taylor_eval(f, p, 2);
        const TaylorValue b = taylor_eval(g, p, 2);
        const TaylorValue c = taylor_eval(combo, p, 2);
        for (int lane = 0; lane < 15; ++lane) {
            const double expect = 3.5 * a.b.s[lane] - 1.25 * b.b.s[lane];
            CHECK(c.b.s[lane] ==
                  doctest::Approx(expect).epsilon(1e-13).scale(
                      1.0 + std::fabs(expect)));
        }
    }
}

TEST_CASE("chain rule against hand-built compositions") {
    SUBCASE("exp(u^2)") {
        const Field f = exp(var_u() * var_u());
        const double u = 1.3;
        const TaylorValue t = taylor_eval(f, Point4{0, 0, u, 0}, 2);
        const double e = std::exp(u * u);
        CHECK(t.value() == doctest::Approx(e));
        CHECK(t.grad(Var::U) == doctest::Approx(2 * u * e));
        CHECK(t.hess(Var::U, Var::U) ==
              doctest::Approx((2 + 4 * u * u) * e));
    }
    SUBCASE("log(u^2 v^4)") {
        const Field f = log(pow(var_u(), 2.0) * pow(var_v(), 4.0));
        const double u = 2.0, v = 1.5;
        const TaylorValue t = taylor_eval(f, Point4{0, 0, u, v}, 2);
        CHECK(t.value() == doctest::Approx(2 * std::log(u) + 4 * std::log(v)));
        CHECK(t.grad(Var::U) == doctest::Approx(2 / u));
        CHECK(t.grad(Var::V) == doctest::Approx(4 / v));
        CHECK(t.hess(Var::U, Var::U) == doctest::Approx(-2 / (u * u)));
        CHECK(t.hess(Var::U, Var::V) == doctest::Approx(0.0));
        CHECK(t.hess(Var::V, Var::V) == doctest::Approx(-4 / (v * v)));
    }
    SUBCASE("sin(t + 2x)") {
        const Field f = sin(var_t() + 2.0 * var_x());
        const double t0 = 0.4, x0 = -0.3;
        const TaylorValue t = taylor_eval(f, Point4{t0, x0, 0, 0}, 2);
        const double arg = t0 + 2 * x0;
        CHECK(t.value() == doctest::Approx(std::sin(arg)));
        CHECK(t.grad(Var::T) == doctest::Approx(std::cos(arg)));
        CHECK(t.grad(Var::X) == doctest::Approx(2 * std::cos(arg)));
        CHECK(t.hess(Var::T, Var::X) == doctest::Approx(-2 * std::sin(arg)));
        CHECK(t.hess(Var::X, Var::X) == doctest::Approx(-4 * std::sin(arg)));
    }
}

TEST_CASE("evaluation is deterministic bitwise") {
    const Field f =
        exp(var_u() * sin(var_x())) / (pow(var_v(), 1.5) + log(var_u() + 2.0));
    const Point4 p{0.3, -0.7, 1.2, 0.9};
    const TaylorValue a = taylor_eval(f, p, 2);
    const TaylorValue b = taylor_eval(f, p, 2);
    CHECK(std::memcmp(a.b.s, b.b.s, sizeof(a.b.s)) == 0);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS((void)taylor_eval(log(var_u()), Point4{0, 0, -1, 0}, 0),
                    DomainError);
    CHECK_THROWS_AS((void)taylor_eval(log(var_u()), Point4{0, 0, 0, 0}, 0),
                    DomainError);
    CHECK_THROWS_AS(
        (void)taylor_eval(pow(var_u(), 0.5), Point4{0, 0, -1, 0}, 0),
        DomainError);
    CHECK_THROWS_AS(
        (void)taylor_eval(constant(1.0) / (var_u() - 1.0), Point4{0, 0, 1, 0}, 0),
        DomainError);
    CHECK_THROWS_AS((void)taylor_eval(sqrt(var_v()), Point4{0, 0, 0, -2}, 0),
                    DomainError);
    // negative integer powers stay defined away from zero
    CHECK(taylor_eval(pow(var_u(), -2.0), Point4{0, 0, -2, 0}, 0).value() ==
          doctest::Approx(0.25));
}

TEST_CASE("callable fields declare their derivative order") {
    const Field f = custom(
        [](const Point4& p, int) {
            TaylorValue t = TaylorValue::variable(Var::U, p.u);
            return tv::chain(t, p.u * p.u, 2.0 * p.u, 0.0); // order-1 data
        },
        1, "value_and_slope");
    CHECK(taylor_eval(f, Point4{0, 0, 3, 0}, 1).grad(Var::U) ==
          doctest::Approx(6.0));
    CHECK_THROWS_AS((void)taylor_eval(f, Point4{0, 0, 3, 0}, 2),
                    UnsupportedOrder);
}

TEST_CASE("pow with expression exponent") {
    // u^v = exp(v log u)
    const Field f = pow(var_u(), var_v());
    const double u = 1.7, v = 2.3;
    const TaylorValue t = taylor_eval(f, Point4{0, 0, u, v}, 2);
    const double val = std::pow(u, v);
    CHECK(t.value() == doctest::Approx(val));
    CHECK(t.grad(Var::U) == doctest::Approx(v * std::pow(u, v - 1)));
    CHECK(t.grad(Var::V) == doctest::Approx(val * std::log(u)));
    CHECK_THROWS_AS((void)taylor_eval(f, Point4{0, 0, -1, 2}, 0), DomainError);
}
