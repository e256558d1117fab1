#include "csymrd/catalog.hpp"

#include "csymrd/errors.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace csymrd {

Field ReactionProfile::apply(const Field& argument) const {
    switch (kind) {
    case Kind::PowerLaw: return csymrd::constant(alpha) * csymrd::pow(argument, k);
    case Kind::Constant: return csymrd::constant(alpha);
    default:
        if (custom_field.empty())
            throw InvalidParams("custom reaction profile has no field");
        return custom_field;
    }
}

void EquivalenceTransform::validate() const {
    for (int i = 0; i < 8; i += 2)
        if (c[i] == 0.0)
            throw InvalidParams("equivalence transform scale C" +
                                std::to_string(i + 1) + " must be nonzero");
}

EquivalenceTransform EquivalenceTransform::inverse() const {
    validate();
    EquivalenceTransform inv;
    for (int i = 0; i < 8; i += 2) {
        inv.c[i] = 1.0 / c[i];
        inv.c[i + 1] = -c[i + 1] / c[i];
    }
    if (swap) {
        // (A o s)^-1 = s o A^-1 = (s A^-1 s) o s
        std::swap(inv.c[4], inv.c[6]);
        std::swap(inv.c[5], inv.c[7]);
        inv.swap = true;
    }
    return inv;
}

Point4 EquivalenceTransform::apply(const Point4& p) const {
    const double u = swap ? p.v : p.u;
    const double v = swap ? p.u : p.v;
    return Point4{c[0] * p.t + c[1], c[2] * p.x + c[3], c[4] * u + c[5],
                  c[6] * v + c[7]};
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParams(what);
}

// d1 family from (d1_kind, beta | u0,h0,h0prime)
DiffusivityFamily make_d1(const CatalogParams& p, const std::string& id,
                          bool allow_case3 = true) {
    if (p.d1_kind == "exp") return DiffusivityFamily::exponential(1.0, Var::U);
    if (p.d1_kind == "case3") {
        require(allow_case3, id + ": d1_kind case3 not supported here");
        return DiffusivityFamily::implicit_case_iii(p.get(p.u0, 1.0),
                                                    p.get(p.h0, 1.0),
                                                    p.get(p.h0prime, 0.25));
    }
    require(p.d1_kind == "power", id + ": unknown d1_kind '" + p.d1_kind + "'");
    const double beta = p.get(p.beta, 2.0);
    require(beta != 0.0, id + ": beta must be nonzero (d1 nonconstant)");
    return DiffusivityFamily::power_law(beta, 1.0, Var::U);
}

Field omega_of(const DiffusivityFamily& d1) {
    return pow(var_v(), 4.0) * d1.d();
}

ReactionProfile default_profile(const CatalogParams& p, bool first,
                                ProfileArg arg) {
    const double a = first ? p.get(p.alpha1, 1.0) : p.get(p.alpha2, 1.0);
    const double kk = p.get(p.k, 1.0);
    return ReactionProfile::power_law(a, kk, arg);
}

// T1 family. mu/delta2 generalize the first entry (defaults mu = 4,
// delta2 = 1); integral terms are resolved in closed form per diffusivity
// kind.
RDSystem make_t1(const std::string& id, const CatalogParams& p,
                 std::optional<ReactionProfile> fopt,
                 std::optional<ReactionProfile> gopt) {
    CatalogParams q = p;
    if (id == "T1-III") q.d1_kind = "case3";
    const bool is1 = id == "T1-I";
    const bool is2 = id == "T1-II";
    const bool is3 = id == "T1-III";
    if (is2)
        require(q.d1_kind == "power" || q.d1_kind == "exp",
                "T1-II: d1 must be power-law or exponential");
    const double mu = q.get(q.mu, 4.0);
    const double delta2 = q.get(q.delta2, 1.0);
    if (is1) require(mu > 0.0, "T1-I: mu must be positive");
    require(delta2 > 0.0, "delta2 must be positive");
    if (q.d1_kind == "power") {
        const double beta = q.get(q.beta, 2.0);
        require(beta != -4.0,
                id + ": beta != -4 (d1 = u^-4 yields plain symmetries only)");
    }
    const DiffusivityFamily d1 = make_d1(q, id, /*allow_case3=*/!is2);

    const Field omega = omega_of(d1);
    const ReactionProfile fprof =
        fopt.value_or(default_profile(q, true, ProfileArg::Omega));
    const ReactionProfile gprof =
        gopt.value_or(default_profile(q, false, ProfileArg::Omega));
    const Field f = fprof.apply(omega);
    const Field g = gprof.apply(omega);

    Field C1;
    if (is1) {
        // h_u * h = (1 - d*d''/(d')^2) * d/d'
        Field hu;
        if (d1.kind() == DiffKind::PowerLaw)
            hu = constant(1.0 / d1.exponent());
        else if (d1.kind() == DiffKind::Exponential)
            hu = constant(0.0);
        else
            hu = constant(1.0) - d1.d() * d1.duu() / (d1.du() * d1.du());
        C1 = d1.d() * d1.h() * f + constant(4.0 * mu) * hu * d1.h();
    } else if (is2) {
        if (d1.kind() == DiffKind::Exponential) {
            C1 = d1.d() * f; // the mu terms cancel
        } else {
            const double beta = d1.exponent();
            C1 = pow(var_u(), beta + 1.0) / beta * f +
                 constant(4.0 * mu / (beta * beta)) * var_u();
        }
    } else {
        C1 = d1.d() * d1.h() *
             (f + constant(1.5 * mu) / d1.d() +
              constant(2.0 * mu) * d1.case_iii_integral());
    }
    const Field C2 =
        pow(var_v(), -3.0) * g + constant(mu / 4.0) * var_v();

    RDSystem sys;
    sys.d1 = d1;
    sys.d2 = DiffusivityFamily::power_law(-4.0, delta2, Var::V);
    sys.C1 = C1;
    sys.C2 = C2;
    sys.profile_f = fprof;
    sys.profile_g = gprof;
    sys.catalog_id = id;
    sys.params["mu"] = mu;
    sys.params["delta2"] = delta2;
    if (q.d1_kind == "power") sys.params["beta"] = q.get(q.beta, 2.0);
    if (is3) {
        sys.params["u0"] = q.get(q.u0, 1.0);
        sys.params["h0"] = q.get(q.h0, 1.0);
        sys.params["h0prime"] = q.get(q.h0prime, 0.25);
    }
    return sys;
}

RDSystem make_t2(const std::string& id, const CatalogParams& p,
                 std::optional<ReactionProfile> fopt,
                 std::optional<ReactionProfile> gopt) {
    RDSystem sys;
    sys.catalog_id = id;
    const double alpha = p.get(p.alpha, 1.0);
    if (id == "T2-III") {
        // Canonical orientation: the constant-diffusivity component carries
        // the exp reactions; the swapped orientation certifies as FirstTypeV.
        require(alpha > 0.0, "T2-III: alpha must be positive");
        CatalogParams q = p;
        q.d1_kind = p.d2_kind;
        DiffusivityFamily d2v;
        if (q.d1_kind == "exp")
            d2v = DiffusivityFamily::exponential(1.0, Var::V);
        else if (q.d1_kind == "case3")
            d2v = DiffusivityFamily::implicit_case_iii(
                q.get(q.u0, 1.0), q.get(q.h0, 1.0), q.get(q.h0prime, 0.25),
                Var::V);
        else {
            const double beta = q.get(q.beta, 2.0);
            require(beta != 0.0, "T2-III: d2 must be nonconstant");
            d2v = DiffusivityFamily::power_law(beta, 1.0, Var::V);
        }
        const ReactionProfile fprof =
            fopt.value_or(default_profile(p, true, ProfileArg::V));
        const ReactionProfile gprof =
            gopt.value_or(default_profile(p, false, ProfileArg::V));
        require(fprof.arg == ProfileArg::V && gprof.arg == ProfileArg::V,
                "T2-III: profiles take argument v");
        sys.d1 = DiffusivityFamily::constant(1.0, Var::U);
        sys.d2 = d2v;
        sys.C1 = exp(var_u()) * gprof.apply(var_v()) +
                 constant(alpha) * exp(2.0 * var_u());
        sys.C2 = fprof.apply(var_v());
        sys.profile_f = fprof;
        sys.profile_g = gprof;
        sys.params["alpha"] = alpha;
        sys.notes.push_back("canonical orientation; swap components for the "
                            "d(u)-first form");
        return sys;
    }
    require(id == "T2-I" || id == "T2-II", "unknown T2 id");
    if (id == "T2-I") require(alpha != 0.0, "T2-I: alpha must be nonzero");
    sys.d1 = make_d1(p, id);
    require(!sys.d1.is_constant(), id + ": d1 must be nonconstant");
    sys.d2 = DiffusivityFamily::constant(1.0, Var::V);
    const ReactionProfile fprof =
        fopt.value_or(default_profile(p, true, ProfileArg::U));
    const ReactionProfile gprof =
        gopt.value_or(default_profile(p, false, ProfileArg::U));
    require(fprof.arg == ProfileArg::U && gprof.arg == ProfileArg::U,
            id + ": profiles take argument u");
    sys.C1 = fprof.apply(var_u());
    Field C2 = var_v() * gprof.apply(var_u());
    if (id == "T2-I")
        C2 = C2 + constant(alpha) * var_v() * log(var_v());
    sys.C2 = C2;
    sys.profile_f = fprof;
    sys.profile_g = gprof;
    if (id == "T2-I") sys.params["alpha"] = alpha;
    return sys;
}

RDSystem make_c2(const std::string& id, const CatalogParams& p,
                 std::optional<ReactionProfile> fopt,
                 std::optional<ReactionProfile> gopt) {
    const double beta = p.get(p.beta, 2.0);
    require(beta != 0.0, id + ": beta must be nonzero");
    require(beta != -4.0, id + ": beta != -4");
    ReactionProfile fprof, gprof;
    if (id == "S-c8") {
        const double k = p.get(p.k, 1.0);
        const double a1 = p.get(p.alpha1, 1.0);
        const double a2 = p.get(p.alpha2, 1.0);
        require(k != 0.0, "S-c8: k must be nonzero");
        require(a1 != -4.0 * a2 / beta,
                "S-c8: alpha1 != -4*alpha2/beta (plane-wave degeneration)");
        fprof = ReactionProfile::power_law(a1, k);
        gprof = ReactionProfile::power_law(a2, k);
    } else {
        fprof = fopt.value_or(default_profile(p, true, ProfileArg::Omega));
        gprof = gopt.value_or(default_profile(p, false, ProfileArg::Omega));
    }
    if (fopt) fprof = *fopt;
    if (gopt) gprof = *gopt;

    RDSystem sys;
    sys.d1 = DiffusivityFamily::power_law(beta, 1.0, Var::U);
    sys.d2 = DiffusivityFamily::power_law(-4.0, 1.0, Var::V);
    const Field omega = omega_of(sys.d1);
    sys.C1 = fprof.apply(omega) * pow(var_u(), beta + 1.0) +
             constant(16.0 / (beta * beta)) * var_u();
    sys.C2 = gprof.apply(omega) * pow(var_v(), -3.0) + var_v();
    sys.profile_f = fprof;
    sys.profile_g = gprof;
    sys.catalog_id = id;
    sys.params["beta"] = beta;
    if (id == "S-c8") {
        sys.params["alpha1"] = fprof.alpha;
        sys.params["alpha2"] = gprof.alpha;
        sys.params["k"] = fprof.k;
    }
    return sys;
}

struct C13Params {
    double kappa, beta, k, alpha1s, alpha2s, alpha1, alpha2, gamma;
};

C13Params resolve_c13(const CatalogParams& p) {
    C13Params r{};
    if (p.kappa.has_value()) {
        r.kappa = *p.kappa;
        require(r.kappa != 1.0, "S-c13: kappa != 1");
        require(r.kappa != 0.0, "S-c13: kappa != 0");
        r.beta = r.kappa / (1.0 - r.kappa);
        r.alpha1s = p.get(p.alpha1s, 3.0);
        r.alpha2s = p.get(p.alpha2s, 3.0);
        r.alpha1 = r.alpha1s * (1.0 - r.kappa);
        r.alpha2 = r.alpha2s / 3.0;
    } else {
        r.beta = p.get(p.beta, 2.0);
        require(r.beta != 0.0, "S-c13: beta != 0");
        require(r.beta != -1.0, "S-c13: beta != -1");
        r.kappa = r.beta / (r.beta + 1.0);
        r.alpha1 = p.get(p.alpha1, 1.0);
        r.alpha2 = p.get(p.alpha2, 1.0);
        r.alpha1s = (r.beta + 1.0) * r.alpha1;
        r.alpha2s = 3.0 * r.alpha2;
    }
    r.k = p.get(p.k, 1.0);
    require(r.k != 0.0, "S-c13: k must be nonzero");
    r.gamma = r.kappa * r.alpha1s + (4.0 / 3.0) * r.alpha2s;
    require(r.gamma != 0.0,
            "S-c13: kappa*alpha1s + 4/3*alpha2s must be nonzero "
            "(plane-wave degeneration)");
    return r;
}

PhysicalRDSystem make_c13_physical(const C13Params& c) {
    PhysicalRDSystem ph;
    ph.id = "S-c13";
    ph.D1 = DiffusivityFamily::power_law(-c.kappa, 1.0, Var::U);
    ph.D2 = DiffusivityFamily::power_law(-4.0 / 3.0, 1.0, Var::V);
    const double c16 = 16.0 / (c.beta * c.kappa);
    const Field U = var_u();
    const Field V = var_v();
    const Field coupling = pow(pow(U, c.kappa) * pow(V, -4.0 / 3.0), c.k);
    ph.F = constant(-c.alpha1s) * U * coupling -
           constant(c16) * pow(U, 1.0 - c.kappa);
    ph.G = constant(c.alpha2s) * V * coupling +
           constant(3.0) * pow(V, -1.0 / 3.0);
    ph.params = {{"kappa", c.kappa},     {"beta", c.beta},
                 {"k", c.k},             {"alpha1s", c.alpha1s},
                 {"alpha2s", c.alpha2s}, {"gamma", c.gamma}};
    PowerLawRhs fast;
    fast.dU_exp = -c.kappa;
    fast.dV_exp = -4.0 / 3.0;
    fast.reaction_U = {{-c.alpha1s, 1.0 + c.kappa * c.k, -4.0 * c.k / 3.0},
                       {-c16, 1.0 - c.kappa, 0.0}};
    fast.reaction_V = {{c.alpha2s, c.kappa * c.k, 1.0 - 4.0 * c.k / 3.0},
                       {3.0, 0.0, -1.0 / 3.0}};
    ph.fast = fast;
    return ph;
}

RDSystem make_c13(const CatalogParams& p) {
    const C13Params c = resolve_c13(p);
    CatalogParams q;
    q.beta = c.beta;
    q.alpha1 = c.alpha1;
    q.alpha2 = c.alpha2;
    q.k = c.k;
    RDSystem sys = make_c2("S-c8", q, {}, {});
    sys.catalog_id = "S-c13";
    sys.params["kappa"] = c.kappa;
    sys.params["alpha1s"] = c.alpha1s;
    sys.params["alpha2s"] = c.alpha2s;
    sys.params["gamma"] = c.gamma;
    sys.notes.push_back("evolution-form image under the power substitution; "
                        "see the physical member for the flux form");
    if (c.kappa == 4.0 / 3.0)
        sys.notes.push_back("special case kappa = 4/3: the U^{-1/3} and "
                            "V^{-1/3} terms are removable");
    sys.physical =
        std::make_shared<PhysicalRDSystem>(make_c13_physical(c));
    return sys;
}

// xi and xi_x trees for the T1 operator branches
struct XiPair {
    Field xi, xi_x;
};

XiPair xi_t1_i(double mu) {
    const double r = std::sqrt(mu);
    const Field e = exp(constant(r) * var_x());
    return {e, constant(r) * e};
}

XiPair xi_t1_ii(double mu, double alpha) {
    if (mu > 0.0) {
        const double r = std::sqrt(mu);
        const Field ep = exp(constant(r) * var_x());
        const Field em = exp(constant(-r) * var_x());
        return {ep + constant(alpha) * em,
                constant(r) * (ep - constant(alpha) * em)};
    }
    const double r = std::sqrt(-mu);
    return {sin(constant(r) * var_x()),
            constant(r) * cos(constant(r) * var_x())};
}

XiPair xi_t1_iii(double mu, double alpha, double sgn) {
    if (mu == 0.0) {
        return {var_x() * var_x(), 2.0 * var_x()};
    }
    if (mu > 0.0) {
        const double a = 0.5 * std::sqrt(mu);
        const Field ep = exp(constant(a) * var_x());
        const Field em = exp(constant(-a) * var_x());
        const Field e = ep + constant(alpha) * em;
        return {e * e,
                2.0 * constant(a) * e * (ep - constant(alpha) * em)};
    }
    const double r = std::sqrt(-mu);
    return {sin(constant(r) * var_x()) + constant(sgn),
            constant(r) * cos(constant(r) * var_x())};
}

} // namespace

Field omega_field(const RDSystem& sys) { return omega_of(sys.d1); }

RDSystem catalog_system(const std::string& id, const CatalogParams& p,
                        std::optional<ReactionProfile> f,
                        std::optional<ReactionProfile> g) {
    if (id == "T1-I" || id == "T1-II" || id == "T1-III")
        return make_t1(id, p, f, g);
    if (id == "T2-I" || id == "T2-II" || id == "T2-III")
        return make_t2(id, p, f, g);
    if (id == "S-c2" || id == "S-c8") return make_c2(id, p, f, g);
    if (id == "S-c13") return make_c13(p);
    throw InvalidParams(
        "unknown system id '" + id +
        "'; known: T1-I T1-II T1-III T2-I T2-II T2-III S-c2 S-c8 S-c13");
}

PhysicalRDSystem catalog_physical(const std::string& id,
                                  const CatalogParams& p) {
    if (id == "S-c13") return make_c13_physical(resolve_c13(p));
    throw InvalidParams("no flux-form instance for id '" + id + "'");
}

SymmetryOperator catalog_operator(const std::string& id,
                                  const CatalogParams& p) {
    SymmetryOperator op;
    op.catalog_id = id;
    op.xi0 = constant(0.0);
    op.xi0_is_zero = true;

    if (id == "Q-T1-I" || id == "Q-T1-II" || id == "Q-T1-III") {
        CatalogParams q = p;
        if (id == "Q-T1-III") q.d1_kind = "case3";
        const DiffusivityFamily d1 =
            make_d1(q, id, /*allow_case3=*/id != "Q-T1-II");
        require(!d1.is_constant(), id + ": d1 must be nonconstant");
        const double mu = q.get(q.mu, 4.0);
        XiPair xp;
        if (id == "Q-T1-I") {
            require(mu > 0.0, "Q-T1-I: mu must be positive");
            xp = xi_t1_i(mu);
        } else if (id == "Q-T1-II") {
            require(mu != 0.0, "Q-T1-II: mu must be nonzero");
            const double alpha = q.get(q.alpha, 1.0);
            if (mu > 0.0)
                require(alpha != 0.0, "Q-T1-II: alpha must be nonzero");
            xp = xi_t1_ii(mu, alpha);
            op.params["alpha"] = alpha;
        } else {
            const double alpha = q.get(q.alpha, 1.0);
            const double sgn = q.get(q.sign, 1.0);
            if (mu > 0.0)
                require(alpha != 0.0, "Q-T1-III: alpha must be nonzero");
            require(sgn == 1.0 || sgn == -1.0, "Q-T1-III: sign must be +/-1");
            xp = xi_t1_iii(mu, alpha, sgn);
            op.params["alpha"] = alpha;
            op.params["sign"] = sgn;
        }
        op.xi = xp.xi;
        op.eta1 = constant(-2.0) * xp.xi_x * d1.h();
        op.eta2 = constant(0.5) * xp.xi_x * var_v();
        op.params["mu"] = mu;
        return op;
    }
    if (id == "Q-T2-I") {
        const double alpha = p.get(p.alpha, 1.0);
        require(alpha != 0.0, "Q-T2-I: alpha must be nonzero");
        const Field damp = exp(constant(-alpha) * var_t());
        op.xi = 2.0 * damp;
        op.eta1 = constant(0.0);
        op.eta2 = constant(alpha) * var_x() * var_v() * damp;
        op.params["alpha"] = alpha;
        return op;
    }
    if (id == "Q-T2-II") {
        op.xi = constant(-2.0) * var_t();
        op.eta1 = constant(0.0);
        op.eta2 = var_x() * var_v();
        return op;
    }
    if (id == "Q-T2-III") {
        const double alpha = p.get(p.alpha, 1.0);
        require(alpha > 0.0, "Q-T2-III: alpha must be positive");
        op.xi = constant(1.0);
        op.eta1 = constant(std::sqrt(alpha)) * exp(var_u());
        op.eta2 = constant(0.0);
        op.params["alpha"] = alpha;
        return op;
    }
    throw InvalidParams("unknown operator id '" + id +
                        "'; known: Q-T1-I Q-T1-II Q-T1-III Q-T2-I Q-T2-II "
                        "Q-T2-III");
}

std::vector<CatalogInfo> catalog_list() {
    return {
        {"T1-I", "system",
         "u_xx = d1 u_t + d1 h f(w) + 4 mu h_u h, v_xx = d2 v^-4 v_t + "
         "v^-3 g(w) + mu/4 v; w = v^4 d1(u)",
         "d1_kind beta mu delta2 alpha1 alpha2 k"},
        {"T1-II", "system",
         "power/exp d1 with the resolved mu terms; v-component as T1-I",
         "d1_kind beta mu alpha1 alpha2 k"},
        {"T1-III", "system", "d1 defined by 8 h h'' - 4 h' - 1 = 0",
         "mu u0 h0 h0prime alpha1 alpha2 k"},
        {"T2-I", "system",
         "u_xx = d1(u) u_t + f(u), v_xx = v_t + v g(u) + alpha v ln v",
         "d1_kind beta alpha alpha1 alpha2 k"},
        {"T2-II", "system", "u_xx = d1(u) u_t + f(u), v_xx = v_t + v g(u)",
         "d1_kind beta alpha1 alpha2 k"},
        {"T2-III", "system",
         "u_xx = u_t + e^u g(v) + alpha e^2u, v_xx = d2(v) v_t + f(v)",
         "d2_kind beta alpha alpha1 alpha2 k"},
        {"S-c2", "system",
         "u_xx = u^b u_t + f(w) u^(b+1) + 16 u/b^2, v_xx = v^-4 v_t + "
         "g(w) v^-3 + v",
         "beta alpha1 alpha2 k"},
        {"S-c8", "system", "S-c2 with power-law reactions", "beta alpha1 alpha2 k"},
        {"S-c13", "system", "flux-form image of S-c8 (see simulate)",
         "kappa|beta alpha1s alpha2s k"},
        {"Q-T1-I", "operator", "exp(r x)(dx - 2r h du + r/2 v dv), r=sqrt(mu)",
         "d1_kind beta mu"},
        {"Q-T1-II", "operator", "xi(x) dx - 2 xi' h du + xi'/2 v dv",
         "d1_kind beta mu alpha"},
        {"Q-T1-III", "operator", "squared/offset xi branches over case-3 d1",
         "mu alpha sign u0 h0 h0prime"},
        {"Q-T2-I", "operator", "e^(-alpha t)(2 dx + alpha x v dv)", "alpha"},
        {"Q-T2-II", "operator", "-2t dx + x v dv", ""},
        {"Q-T2-III", "operator", "dx + sqrt(alpha) e^u du", "alpha"},
    };
}

// ---------------------------------------------------------------------------
// Kirchhoff maps
// ---------------------------------------------------------------------------

namespace {

// Inverse substitution W(w) for a physical diffusivity D: w = int D dW with
// zero integration constant.
Field physical_var_of(const DiffusivityFamily& D, Var slot) {
    const Field w = var(slot);
    if (D.kind() == DiffKind::PowerLaw) {
        const double m = D.exponent();
        const double delta = D.scale();
        if (m == -1.0)
            throw UnsupportedDiffusivity(
                "power-law exponent -1 has a logarithmic antiderivative");
        // W = ((m+1) w / delta)^(1/(m+1))
        return pow(constant((m + 1.0) / delta) * w, 1.0 / (m + 1.0));
    }
    if (D.kind() == DiffKind::Exponential)
        return log(w / D.scale());
    throw UnsupportedDiffusivity(
        "kirchhoff map needs a power-law or exponential diffusivity");
}

DiffusivityFamily kirchhoff_d_of(const DiffusivityFamily& D, Var slot) {
    DiffusivityFamily out;
    if (D.kind() == DiffKind::PowerLaw) {
        const double m = D.exponent();
        const double delta = D.scale();
        if (m == 0.0) {
            out = DiffusivityFamily::constant(1.0 / delta, slot);
        } else {
            const double b = -m / (m + 1.0);
            const double inner = (m + 1.0) / delta;
            const double sgn = inner >= 0.0 ? 1.0 : -1.0;
            const double scale =
                (1.0 / delta) * std::pow(std::fabs(inner), b);
            out = DiffusivityFamily::power_law(b, scale, slot, sgn);
        }
        out.set_origin({DiffKind::PowerLaw, m, delta});
        return out;
    }
    if (D.kind() == DiffKind::Exponential) {
        out = DiffusivityFamily::power_law(-1.0, 1.0, slot, 1.0);
        out.set_origin({DiffKind::Exponential, 0.0, D.scale()});
        return out;
    }
    throw UnsupportedDiffusivity(
        "kirchhoff map needs a power-law or exponential diffusivity");
}

DiffusivityFamily kirchhoff_D_of(const DiffusivityFamily& d, Var slot) {
    if (d.origin().has_value() &&
        d.origin()->kind == DiffKind::Exponential) {
        // the exponential map absorbs its scale into the integration
        // constant; only the recorded origin can restore it
        return DiffusivityFamily::exponential(d.origin()->scale, slot);
    }
    if (d.kind() == DiffKind::PowerLaw && !d.is_constant()) {
        const double b = d.exponent();
        const double s = d.scale();
        if (b == -1.0)
            throw UnsupportedDiffusivity(
                "d = s/w inverts to an exponential family only with a "
                "recorded origin scale");
        // W(w) = s (sgn w)^(b+1) sgn/(b+1); D(W) = 1/d(w(W))
        const double m = -b / (b + 1.0);
        const double inner = (b + 1.0) / s * d.sign();
        if (!(inner > 0.0))
            throw UnsupportedDiffusivity(
                "inverse map falls outside the W > 0 branch");
        const double delta = (1.0 / s) * std::pow(inner, m);
        return DiffusivityFamily::power_law(m, delta, slot);
    }
    if (d.is_constant())
        return DiffusivityFamily::constant(1.0 / d.scale(), slot);
    throw UnsupportedDiffusivity(
        "inverse kirchhoff map needs a power-law diffusivity or a recorded "
        "origin");
}

// w(W) substitution field used when composing reaction terms back.
Field kirchhoff_var_of(const DiffusivityFamily& d, Var slot) {
    const Field W = var(slot);
    if (d.origin().has_value() &&
        d.origin()->kind == DiffKind::Exponential) {
        return constant(d.origin()->scale) * exp(W);
    }
    if (d.kind() == DiffKind::PowerLaw && !d.is_constant()) {
        const double b = d.exponent();
        const double s = d.scale();
        // w = sgn * ((b+1)/s ... ) inverse of W(w): from
        // s*(sgn w)^(b+1)*sgn/(b+1) = W -> (sgn w) = ((b+1) sgn W / s)^(1/(b+1))
        const double sgn = d.sign();
        return constant(sgn) *
               pow(constant((b + 1.0) * sgn / s) * W, 1.0 / (b + 1.0));
    }
    if (d.is_constant()) return W / d.scale();
    throw UnsupportedDiffusivity("inverse kirchhoff substitution unavailable");
}

// substitute fields of (u,v) by per-slot maps
Field subst_uv(const Field& f, const Field& umap, const Field& vmap) {
    // evaluate f at (t, x, umap(p), vmap(p)) with exact chain rule through
    // custom composition
    return csymrd::custom(
        [f, umap, vmap](const Point4& p, int order) {
            const TaylorValue us = taylor_eval(umap, p, order);
            const TaylorValue vs = taylor_eval(vmap, p, order);
            const Point4 q{p.t, p.x, us.value(), vs.value()};
            const TaylorValue inner = taylor_eval(f, q, order);
            // first-order chain: grad_out = f_u * grad(us) + f_v * grad(vs)
            // plus pass-through of t,x dependence of f (assumed absent for
            // reaction fields; enforced by construction)
            TaylorValue out = TaylorValue::constant(inner.value());
            const double fu = inner.grad(Var::U);
            const double fv = inner.grad(Var::V);
            for (int i = 0; i < 4; ++i) {
                out.b.s[kernels::kGradOff + i] =
                    fu * us.b.s[kernels::kGradOff + i] +
                    fv * vs.b.s[kernels::kGradOff + i];
            }
            const double fuu = inner.hess(Var::U, Var::U);
            const double fuv = inner.hess(Var::U, Var::V);
            const double fvv = inner.hess(Var::V, Var::V);
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) {
                    const double gi_u = us.b.s[kernels::kGradOff + i];
                    const double gj_u = us.b.s[kernels::kGradOff + j];
                    const double gi_v = vs.b.s[kernels::kGradOff + i];
                    const double gj_v = vs.b.s[kernels::kGradOff + j];
                    out.b.s[kernels::hess_index(i, j)] =
                        fu * us.b.s[kernels::hess_index(i, j)] +
                        fv * vs.b.s[kernels::hess_index(i, j)] +
                        fuu * gi_u * gj_u + fuv * (gi_u * gj_v + gj_u * gi_v) +
                        fvv * gi_v * gj_v;
                }
            return out;
        },
        2, "subst_uv");
}

} // namespace

RDSystem kirchhoff_forward(const PhysicalRDSystem& phys) {
    RDSystem sys;
    sys.d1 = kirchhoff_d_of(phys.D1, Var::U);
    sys.d2 = kirchhoff_d_of(phys.D2, Var::V);
    const Field Umap = physical_var_of(phys.D1, Var::U);
    const Field Vmap = physical_var_of(phys.D2, Var::V);
    sys.C1 = constant(-1.0) * subst_uv(phys.F, Umap, Vmap);
    sys.C2 = constant(-1.0) * subst_uv(phys.G, Umap, Vmap);
    sys.catalog_id = phys.id.empty() ? "kirchhoff" : phys.id + "~kirchhoff";
    sys.params = phys.params;
    return sys;
}

PhysicalRDSystem kirchhoff_inverse(const RDSystem& sys) {
    PhysicalRDSystem phys;
    phys.D1 = kirchhoff_D_of(sys.d1, Var::U);
    phys.D2 = kirchhoff_D_of(sys.d2, Var::V);
    const Field umap = kirchhoff_var_of(sys.d1, Var::U);
    const Field vmap = kirchhoff_var_of(sys.d2, Var::V);
    phys.F = constant(-1.0) * subst_uv(sys.C1, umap, vmap);
    phys.G = constant(-1.0) * subst_uv(sys.C2, umap, vmap);
    phys.id = sys.catalog_id + "~inverse";
    phys.params = sys.params;
    return phys;
}

// ---------------------------------------------------------------------------
// Equivalence transforms
// ---------------------------------------------------------------------------

namespace {

// compose a one-variable field f (of slot fslot) with an argument field g
Field compose_1d(const Field& f, Var fslot, const Field& g) {
    return csymrd::custom(
        [f, fslot, g](const Point4& p, int order) {
            const TaylorValue gs = taylor_eval(g, p, order);
            Point4 q{};
            switch (fslot) {
            case Var::T: q.t = gs.value(); break;
            case Var::X: q.x = gs.value(); break;
            case Var::U: q.u = gs.value(); break;
            default: q.v = gs.value(); break;
            }
            const TaylorValue inner = taylor_eval(f, q, order);
            return tv::chain(gs, inner.value(), inner.grad(fslot),
                             inner.hess(fslot, fslot));
        },
        2, "compose1d");
}

Field pull_back(const Field& f, const EquivalenceTransform& tr) {
    const Field g = tr.swap ? swap_uv(f) : f;
    const std::array<double, 4> sc = {1.0 / tr.c[0], 1.0 / tr.c[2],
                                      1.0 / tr.c[4], 1.0 / tr.c[6]};
    const std::array<double, 4> sh = {
        -tr.c[1] / tr.c[0], -tr.c[3] / tr.c[2], -tr.c[5] / tr.c[4],
        -tr.c[7] / tr.c[6]};
    return subst_affine(g, sc, sh);
}

DiffusivityFamily transform_family(const DiffusivityFamily& src,
                                   const EquivalenceTransform& tr,
                                   double comp_scale, Var new_arg) {
    // dn(w) = (C1/C3^2) d((w - shift)/scale) with scale/shift of the new
    // component variable
    const double k = tr.c[0] / (tr.c[2] * tr.c[2]);
    const double cs = comp_scale;
    const double sh = new_arg == Var::U ? tr.c[5] : tr.c[7];
    const Field w = var(new_arg);
    const Field inner_arg = (w - constant(sh)) / cs;
    const Field d = constant(k) * compose_1d(src.d(), src.arg(), inner_arg);
    const Field du =
        constant(k / cs) * compose_1d(src.du(), src.arg(), inner_arg);
    const Field duu =
        constant(k / (cs * cs)) * compose_1d(src.duu(), src.arg(), inner_arg);
    return DiffusivityFamily::custom(d, du, duu, new_arg,
                                     src.needs_positive());
}

} // namespace

RDSystem apply_equivalence(const RDSystem& sys, const EquivalenceTransform& tr) {
    tr.validate();
    RDSystem out;
    const DiffusivityFamily& src1 = tr.swap ? sys.d2 : sys.d1;
    const DiffusivityFamily& src2 = tr.swap ? sys.d1 : sys.d2;
    out.d1 = transform_family(src1, tr, tr.c[4], Var::U);
    out.d2 = transform_family(src2, tr, tr.c[6], Var::V);
    const double kx = 1.0 / (tr.c[2] * tr.c[2]);
    out.C1 = constant(tr.c[4] * kx) *
             pull_back(tr.swap ? sys.C2 : sys.C1, tr);
    out.C2 = constant(tr.c[6] * kx) *
             pull_back(tr.swap ? sys.C1 : sys.C2, tr);
    out.profile_f = tr.swap ? sys.profile_g : sys.profile_f;
    out.profile_g = tr.swap ? sys.profile_f : sys.profile_g;
    out.catalog_id = sys.catalog_id + "~eq";
    out.params = sys.params;
    out.notes = sys.notes;
    out.notes.push_back("transformed by an equivalence map; profiles refer to "
                        "the source system");
    return out;
}

SymmetryOperator transform_operator(const SymmetryOperator& op,
                                    const EquivalenceTransform& tr) {
    tr.validate();
    SymmetryOperator out;
    out.xi0 = constant(tr.c[0]) * pull_back(op.xi0, tr);
    out.xi = constant(tr.c[2]) * pull_back(op.xi, tr);
    const Field& e1 = tr.swap ? op.eta2 : op.eta1;
    const Field& e2 = tr.swap ? op.eta1 : op.eta2;
    out.eta1 = constant(tr.c[4]) * pull_back(e1, tr);
    out.eta2 = constant(tr.c[6]) * pull_back(e2, tr);
    out.xi0_is_zero = op.xi0_is_zero;
    out.catalog_id = op.catalog_id + "~eq";
    out.params = op.params;
    return out;
}

} // namespace csymrd
