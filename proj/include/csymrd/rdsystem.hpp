#pragma once

#include "csymrd/diffusivity.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace csymrd {

enum class ProfileArg { Omega, U, V };

// Reaction shape f in the source terms: alpha * arg^k, a constant, or a
// user-supplied field of the argument.
struct ReactionProfile {
    enum class Kind { PowerLaw, Constant, Custom };
    Kind kind = Kind::Constant;
    double alpha = 0.0;
    double k = 0.0;
    ProfileArg arg = ProfileArg::Omega;
    Field custom_field; // of the u- or v-slot, per arg

    static ReactionProfile power_law(double alpha, double k,
                                     ProfileArg arg = ProfileArg::Omega) {
        ReactionProfile p;
        p.kind = Kind::PowerLaw;
        p.alpha = alpha;
        p.k = k;
        p.arg = arg;
        return p;
    }

    static ReactionProfile constant(double alpha) {
        ReactionProfile p;
        p.kind = Kind::Constant;
        p.alpha = alpha;
        return p;
    }

    static ReactionProfile custom(Field f, ProfileArg arg) {
        ReactionProfile p;
        p.kind = Kind::Custom;
        p.arg = arg;
        p.custom_field = f;
        return p;
    }

    // the profile applied to an evaluable argument field
    Field apply(const Field& argument) const;
};

// Fast path for grid right-hand sides: D(w) = scale * w^exp per component and
// reactions that are sums of c * U^a * V^b monomials.
struct PowerLawRhs {
    struct Term {
        double c, a, b;
    };
    double dU_exp = 0.0, dU_scale = 1.0;
    double dV_exp = 0.0, dV_scale = 1.0;
    std::vector<Term> reaction_U, reaction_V;
};

// Flux-form pair U_t = (D1(U) U_x)_x + F(U,V), V_t = (D2(V) V_x)_x + G(U,V).
struct PhysicalRDSystem {
    DiffusivityFamily D1, D2;
    Field F, G; // of (U,V) in the u/v slots
    std::string id;
    std::map<std::string, double> params;
    std::optional<PowerLawRhs> fast;
};

// Pair in the evolution form u_xx = d1(u) u_t + C1(u,v),
// v_xx = d2(v) v_t + C2(u,v).
struct RDSystem {
    DiffusivityFamily d1, d2;
    Field C1, C2; // of (u,v)
    ReactionProfile profile_f, profile_g;
    std::string catalog_id;
    std::map<std::string, double> params;
    std::vector<std::string> notes;
    std::shared_ptr<const PhysicalRDSystem> physical;
};

// Operator xi0*d_t + xi*d_x + eta1*d_u + eta2*d_v with evaluable coefficients.
struct SymmetryOperator {
    Field xi0, xi, eta1, eta2;
    bool xi0_is_zero = true;
    std::string catalog_id;
    std::map<std::string, double> params;
};

// Affine change of variables t -> C1 t + C2, x -> C3 x + C4, u -> C5 u + C6,
// v -> C7 v + C8, optionally preceded by the component swap u <-> v.
struct EquivalenceTransform {
    // c[0..7] = C1..C8
    double c[8] = {1, 0, 1, 0, 1, 0, 1, 0};
    bool swap = false;

    static EquivalenceTransform identity() { return {}; }
    static EquivalenceTransform swap_components() {
        EquivalenceTransform tr;
        tr.swap = true;
        return tr;
    }

    void validate() const;
    EquivalenceTransform inverse() const;
    Point4 apply(const Point4& p) const;
};

} // namespace csymrd
