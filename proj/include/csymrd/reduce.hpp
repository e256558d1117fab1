#pragma once

#include "csymrd/ansatz.hpp"
#include "csymrd/certify.hpp"

namespace csymrd {

// Two-dimensional dynamical system phi' = P(phi, psi), psi' = Q(phi, psi)
// obtained by substituting a catalogued ansatz into its system. The phi/psi
// arguments live in the u/v slots.
struct ReducedODESystem {
    std::string system_id;
    Field rhs_phi, rhs_psi;
    Field chi; // the invariant coupling argument
    std::map<std::string, double> params;

    std::pair<double, double> rhs(double phi, double psi) const;
    double chi_value(double phi, double psi) const;
};

// Catalogued (system, ansatz, reduced ODE) triples:
//   c3    : S-c2 with the exponential-profile shape
//   t1r1/2: exponential d1 rows (cosh-type / sine-type profile)
//   t1r3/4: power-law d1 rows
struct ReductionTriple {
    std::string id;
    RDSystem sys;
    Ansatz ansatz;
    ReducedODESystem ode;
};

ReductionTriple catalog_triple(const std::string& id,
                               const CatalogParams& p = {});

ReducedODESystem reduce(const std::string& system_id, const Ansatz& a,
                        const CatalogParams& p = {});

// Evolution-pair residuals on the ansatz with ODE-consistent time derivatives.
ResidualPair reduction_residual(const RDSystem& sys, const Ansatz& a,
                                const ReducedODESystem& ode, double t, double x,
                                double phi, double psi);

struct C6Params {
    double alpha1 = 1.0, alpha2 = 1.0;
    double beta = 2.0, k = 1.0;
    double lambda1 = 1.0, t0 = 0.0;
};

// Closed-form decay/blow-up pair solving the power-profile reduction of S-c2.
std::pair<double, double> closed_form_c6(const C6Params& p, double t);
// same pair as evaluable fields of t (for derivative checks)
std::pair<Field, Field> closed_form_c6_fields(const C6Params& p);

} // namespace csymrd
