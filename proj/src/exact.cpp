#include "csymrd/exact.hpp"

#include "csymrd/errors.hpp"

#include <cmath>

namespace csymrd {

namespace {

Field base_field(double gamma_k, double lambda1, double beta_k, double t0) {
    const double scale = gamma_k * std::pow(lambda1, beta_k);
    return constant(scale) * (var_t() - constant(t0));
}

ExactSolutionFamily::CompEval eval_comp(const Field& f, double t, double x) {
    const TaylorValue v = taylor_eval(f, Point4{t, x, 0, 0}, 2);
    return ExactSolutionFamily::CompEval{v.value(), v.grad(Var::T),
                                         v.grad(Var::X),
                                         v.hess(Var::X, Var::X)};
}

} // namespace

bool ExactSolutionFamily::valid(double t, double x) const {
    (void)x;
    if (id == FamilyId::PlaneWave) return true;
    const double base =
        gamma_k * std::pow(lambda1, beta * k) * (t - t0);
    return base > 0.0;
}

std::pair<ExactSolutionFamily::CompEval, ExactSolutionFamily::CompEval>
ExactSolutionFamily::eval(double t, double x) const {
    if (!valid(t, x))
        throw DomainError("point outside the family validity set (base <= 0)");
    return {eval_comp(comp1, t, x), eval_comp(comp2, t, x)};
}

ExactSolutionFamily make_family_c9(const FamilyParams& p) {
    ExactSolutionFamily f;
    f.id = FamilyId::C9;
    f.beta = p.beta;
    f.k = p.k;
    f.alpha1 = p.alpha1;
    f.alpha2 = p.alpha2;
    f.lambda1 = p.lambda1;
    f.t0 = p.t0;
    if (p.beta == 0.0) throw InvalidParams("family requires beta != 0");
    if (p.k == 0.0) throw InvalidParams("family requires k != 0");
    if (!(p.lambda1 > 0.0)) throw InvalidParams("family requires lambda1 > 0");
    f.gamma_k = (4.0 * p.alpha2 + p.beta * p.alpha1) * p.k;
    if (f.gamma_k == 0.0)
        throw InvalidParams(
            "family requires (4 alpha2 + beta alpha1) k != 0");
    const Field base = base_field(f.gamma_k, p.lambda1, p.beta * p.k, p.t0);
    f.comp1 = constant(p.lambda1) * pow(base, -p.alpha1 / f.gamma_k) *
              exp(constant(-4.0 / p.beta) * var_x());
    f.comp2 = pow(base, -p.alpha2 / f.gamma_k) * exp(var_x());
    return f;
}

ExactSolutionFamily make_family_c14(const FamilyParams& p) {
    // image of the C9 family under U = u^(beta+1), V = v^-3
    ExactSolutionFamily f = make_family_c9(p);
    f.id = FamilyId::C14;
    if (p.beta == -1.0) throw InvalidParams("C14 requires beta != -1");
    const double kappa = p.beta / (p.beta + 1.0);
    const Field base = base_field(f.gamma_k, p.lambda1, p.beta * p.k, p.t0);
    const double bp1 = p.beta + 1.0;
    f.comp1 = constant(std::pow(p.lambda1, bp1)) *
              pow(base, -bp1 * p.alpha1 / f.gamma_k) *
              exp(constant(-4.0 / kappa) * var_x());
    f.comp2 =
        pow(base, 3.0 * p.alpha2 / f.gamma_k) * exp(constant(-3.0) * var_x());
    return f;
}

ExactSolutionFamily make_plane_wave(double beta, double alpha1,
                                    double alpha2) {
    if (beta == 0.0) throw InvalidParams("plane wave requires beta != 0");
    ExactSolutionFamily f;
    f.id = FamilyId::PlaneWave;
    f.beta = beta;
    f.k = 0.0;
    f.alpha1 = alpha1;
    f.alpha2 = alpha2;
    f.gamma_k = 0.0;
    f.comp1 = exp(constant(-alpha1) * var_t() +
                  constant(-4.0 / beta) * var_x());
    f.comp2 = exp(constant(-alpha2) * var_t() + var_x());
    return f;
}

ExactSolutionFamily make_plane_wave_flux(double beta, double alpha1,
                                         double alpha2) {
    if (beta == 0.0 || beta == -1.0)
        throw InvalidParams("plane wave requires beta not in {0,-1}");
    const double kappa = beta / (beta + 1.0);
    ExactSolutionFamily f;
    f.id = FamilyId::PlaneWave;
    f.beta = beta;
    f.k = 0.0;
    f.alpha1 = alpha1;
    f.alpha2 = alpha2;
    f.gamma_k = 0.0;
    f.comp1 = exp(constant(-(beta + 1.0) * alpha1) * var_t() +
                  constant(-4.0 / kappa) * var_x());
    f.comp2 = exp(constant(3.0 * alpha2) * var_t() +
                  constant(-3.0) * var_x());
    return f;
}

PhysicalRDSystem plane_wave_physical(double beta, double alpha1,
                                     double alpha2) {
    if (beta == 0.0 || beta == -1.0)
        throw InvalidParams("plane-wave pair requires beta not in {0,-1}");
    const double kappa = beta / (beta + 1.0);
    const double a1s = (beta + 1.0) * alpha1;
    const double a2s = 3.0 * alpha2;
    const double c16 = 16.0 / (beta * kappa);
    PhysicalRDSystem ph;
    ph.id = "plane-wave";
    ph.D1 = DiffusivityFamily::power_law(-kappa, 1.0, Var::U);
    ph.D2 = DiffusivityFamily::power_law(-4.0 / 3.0, 1.0, Var::V);
    const Field U = var_u();
    const Field V = var_v();
    ph.F = constant(-a1s) * U - constant(c16) * pow(U, 1.0 - kappa);
    ph.G = constant(a2s) * V + constant(3.0) * pow(V, -1.0 / 3.0);
    ph.params = {{"kappa", kappa},
                 {"beta", beta},
                 {"k", 0.0},
                 {"alpha1s", a1s},
                 {"alpha2s", a2s}};
    PowerLawRhs fast;
    fast.dU_exp = -kappa;
    fast.dV_exp = -4.0 / 3.0;
    fast.reaction_U = {{-a1s, 1.0, 0.0}, {-c16, 1.0 - kappa, 0.0}};
    fast.reaction_V = {{a2s, 0.0, 1.0}, {3.0, 0.0, -1.0 / 3.0}};
    ph.fast = fast;
    return ph;
}

std::pair<double, double> map_solution_c10(double u, double v, double beta) {
    if (!(u > 0.0) || !(v > 0.0))
        throw DomainError("the power substitution requires u > 0, v > 0");
    return {std::pow(u, beta + 1.0), std::pow(v, -3.0)};
}

std::pair<double, double> map_solution_c10_inverse(double U, double V,
                                                   double beta) {
    if (!(U > 0.0) || !(V > 0.0))
        throw DomainError("the power substitution requires U > 0, V > 0");
    return {std::pow(U, 1.0 / (beta + 1.0)), std::pow(V, -1.0 / 3.0)};
}

ResidualPair solution_residual(const RDSystem& sys,
                               const ExactSolutionFamily& fam, double t,
                               double x) {
    const auto [c1, c2] = fam.eval(t, x);
    const Point4 p{t, x, c1.val, c2.val};
    const double d1 = sys.d1.eval_d(c1.val);
    const double d2 = sys.d2.eval_d(c2.val);
    const double C1 = taylor_eval(sys.C1, p, 0).value();
    const double C2 = taylor_eval(sys.C2, p, 0).value();
    ResidualPair r;
    r.r1 = c1.dxx - d1 * c1.dt - C1;
    r.r2 = c2.dxx - d2 * c2.dt - C2;
    r.r1_scale = 1.0 + std::max(std::fabs(c1.dxx),
                                std::max(std::fabs(d1 * c1.dt), std::fabs(C1)));
    r.r2_scale = 1.0 + std::max(std::fabs(c2.dxx),
                                std::max(std::fabs(d2 * c2.dt), std::fabs(C2)));
    return r;
}

ResidualPair solution_residual(const PhysicalRDSystem& sys,
                               const ExactSolutionFamily& fam, double t,
                               double x) {
    const auto [c1, c2] = fam.eval(t, x);
    const Point4 p{t, x, c1.val, c2.val};
    const double D1 = sys.D1.eval_d(c1.val);
    const double D1p = sys.D1.eval_du(c1.val);
    const double D2 = sys.D2.eval_d(c2.val);
    const double D2p = sys.D2.eval_du(c2.val);
    const double F = taylor_eval(sys.F, p, 0).value();
    const double G = taylor_eval(sys.G, p, 0).value();
    // (D(W) W_x)_x = D'(W) W_x^2 + D(W) W_xx
    const double flux1 = D1p * c1.dx * c1.dx + D1 * c1.dxx;
    const double flux2 = D2p * c2.dx * c2.dx + D2 * c2.dxx;
    ResidualPair r;
    r.r1 = c1.dt - flux1 - F;
    r.r2 = c2.dt - flux2 - G;
    r.r1_scale = 1.0 + std::max(std::fabs(c1.dt),
                                std::max(std::fabs(flux1), std::fabs(F)));
    r.r2_scale = 1.0 + std::max(std::fabs(c2.dt),
                                std::max(std::fabs(flux2), std::fabs(G)));
    return r;
}

Regime classify_regime(double alpha1s, double alpha2s, double kappa, double k,
                       double t0) {
    if (kappa == 0.0 || kappa == 1.0)
        throw InvalidParams("classify_regime requires kappa not in {0,1}");
    const double gamma = kappa * alpha1s + (4.0 / 3.0) * alpha2s;
    const double gk = gamma * k;
    if (gk == 0.0)
        throw InvalidParams("classify_regime requires gamma * k != 0");
    if (t0 == 0.0)
        throw BoundaryCase("t0 = 0 sits on the regime boundary");
    if (alpha1s == 0.0 || alpha2s == 0.0)
        throw BoundaryCase("zero reaction amplitude sits on a regime boundary");
    if (t0 < 0.0) return Regime::Global;
    // Exact exponents of the family: comp1 ~ base^(-alpha1s/gk),
    // comp2 ~ base^(+alpha2s/gk) with base -> 0 as t -> t0 on the valid side.
    const bool u_blows = alpha1s * gk > 0.0;
    const bool v_blows = alpha2s * gk < 0.0;
    if (u_blows && v_blows) return Regime::BothBlowUp;
    if (u_blows) return Regime::UBlowsVVanishes;
    if (v_blows) return Regime::VBlowsUVanishes;
    return Regime::BothVanish;
}

const char* regime_name(Regime r) {
    switch (r) {
    case Regime::BothBlowUp: return "BothBlowUp";
    case Regime::UBlowsVVanishes: return "UBlowsVVanishes";
    case Regime::VBlowsUVanishes: return "VBlowsUVanishes";
    case Regime::BothVanish: return "BothVanish";
    default: return "Global";
    }
}

} // namespace csymrd
