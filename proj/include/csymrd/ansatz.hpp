#pragma once

#include "csymrd/catalog.hpp"

#include <string>
#include <utility>

namespace csymrd {

// Closed-form invariant shape u = U(x; phi), v = V(x; psi). The phi/psi
// arguments live in the u/v slots of the field space, so one taylor_eval
// yields both x-derivatives and the phi/psi sensitivities.
struct Ansatz {
    std::string operator_id;
    Field u_of, v_of; // over (t, x, phi, psi)
    double x_min_valid = -1e300;
    double x_max_valid = 1e300;
    std::map<std::string, double> params;

    struct Eval {
        double u, v;
        double u_t, u_x, u_xx;
        double v_t, v_x, v_xx;
    };

    Eval eval(double t, double x, double phi, double psi, double dphi,
              double dpsi) const;
};

Ansatz build_ansatz(const std::string& operator_id, const CatalogParams& p);

// (Q(u), Q(v)) = (xi u_x - eta1, xi v_x - eta2) evaluated on the ansatz.
std::pair<double, double> invariant_surface_residual(const Ansatz& a,
                                                     const SymmetryOperator& Q,
                                                     double t, double x,
                                                     double phi, double psi);

} // namespace csymrd
