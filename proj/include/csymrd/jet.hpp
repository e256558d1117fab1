#pragma once

#include "csymrd/rdsystem.hpp"

namespace csymrd {

enum class ManifoldKind { Free, Lie, FirstTypeU, FirstTypeV, SecondType };

// Point in second-order jet space. u_tt/v_tt are not carried: the prolonged
// action on the evolution pair involves only the rho_t and sigma_xx slots.
struct JetPoint {
    double t = 0, x = 0, u = 0, v = 0;
    double u_t = 0, u_x = 0, v_t = 0, v_x = 0;
    double u_xx = 0, v_xx = 0, u_tx = 0, v_tx = 0;
    ManifoldKind constraint_tag = ManifoldKind::Free;

    Point4 base() const { return Point4{t, x, u, v}; }
};

// Free coordinates handed to a projection; slots eliminated by the chosen
// manifold are ignored.
struct JetBase {
    double t = 0, x = 0, u = 1, v = 1;
    double u_t = 0, v_t = 0;
    double u_x = 0, v_x = 0;
    double u_tx = 0, v_tx = 0;
};

struct ProlongedCoefficients {
    double rho1_t = 0, rho1_x = 0;
    double rho2_t = 0, rho2_x = 0;
    double sigma1_xx = 0, sigma2_xx = 0;
};

ProlongedCoefficients prolong_second(const SymmetryOperator& Q,
                                     const JetPoint& jet);

JetPoint project_manifold(const RDSystem& sys, const SymmetryOperator& Q,
                          const JetBase& base, ManifoldKind kind);

} // namespace csymrd
