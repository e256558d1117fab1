#pragma once

#include "csymrd/rdsystem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace csymrd {

// Parameter record shared by all catalogue ids; each id reads the subset it
// needs and rejects violated constraints with InvalidParams.
struct CatalogParams {
    std::optional<double> beta;
    std::optional<double> mu;
    std::optional<double> alpha;
    std::optional<double> alpha1, alpha2;
    std::optional<double> k;
    std::optional<double> delta2;
    std::optional<double> u0, h0, h0prime;
    std::optional<double> kappa;
    std::optional<double> alpha1s, alpha2s;
    std::optional<double> lambda1, t0;
    std::optional<double> sign; // sin-branch offset sign for Q-T1-III, mu<0
    std::string d1_kind = "power"; // power | exp | case3
    std::string d2_kind = "power";

    double get(const std::optional<double>& v, double fallback) const {
        return v.has_value() ? *v : fallback;
    }
};

RDSystem catalog_system(const std::string& id, const CatalogParams& p = {},
                        std::optional<ReactionProfile> f = {},
                        std::optional<ReactionProfile> g = {});

SymmetryOperator catalog_operator(const std::string& id,
                                  const CatalogParams& p = {});

// Flux-form instances (S-c13 and any id carrying a physical form).
PhysicalRDSystem catalog_physical(const std::string& id,
                                  const CatalogParams& p = {});

struct CatalogInfo {
    std::string id;
    std::string kind; // "system" | "operator"
    std::string brief;
    std::string param_keys;
};
std::vector<CatalogInfo> catalog_list();

RDSystem kirchhoff_forward(const PhysicalRDSystem& phys);
PhysicalRDSystem kirchhoff_inverse(const RDSystem& sys);

RDSystem apply_equivalence(const RDSystem& sys, const EquivalenceTransform& tr);
SymmetryOperator transform_operator(const SymmetryOperator& op,
                                    const EquivalenceTransform& tr);

// d/d_u of the first diffusivity as a field; helper shared by the residual
// evaluators.
Field omega_field(const RDSystem& sys); // v^4 * d1(u)

} // namespace csymrd
