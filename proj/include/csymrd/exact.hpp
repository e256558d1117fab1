#pragma once

#include "csymrd/certify.hpp"

#include <utility>

namespace csymrd {

enum class FamilyId { C9, C14, PlaneWave };

enum class Regime {
    BothBlowUp,
    UBlowsVVanishes,
    VBlowsUVanishes,
    BothVanish,
    Global
};

// Two-parameter closed-form solution family with exact derivatives. C9 lives
// in the evolution variables (solves S-c8); C14 is its image under the power
// substitution (solves the S-c13 flux form); PlaneWave is the k = 0
// degeneration.
struct ExactSolutionFamily {
    FamilyId id = FamilyId::C9;
    Field comp1, comp2; // of (t, x)
    double beta = 2.0, k = 1.0;
    double alpha1 = 1.0, alpha2 = 1.0; // evolution-side reaction amplitudes
    double lambda1 = 1.0, t0 = 0.0;
    double gamma_k = 0.0; // (4 alpha2 + beta alpha1) k

    bool valid(double t, double x) const;

    struct CompEval {
        double val, dt, dx, dxx;
    };
    std::pair<CompEval, CompEval> eval(double t, double x) const;
};

struct FamilyParams {
    double beta = 2.0, k = 1.0;
    double alpha1 = 1.0, alpha2 = 1.0;
    double lambda1 = 1.0, t0 = 0.0;
};

ExactSolutionFamily make_family_c9(const FamilyParams& p);
ExactSolutionFamily make_family_c14(const FamilyParams& p);
// k = 0 plane wave for constant reactions (alpha1, alpha2), in the evolution
// variables; make_plane_wave_flux is its image under the power substitution
ExactSolutionFamily make_plane_wave(double beta, double alpha1, double alpha2);
ExactSolutionFamily make_plane_wave_flux(double beta, double alpha1,
                                         double alpha2);

// flux-form pair solved by the plane wave (the k = 0 analogue of S-c13)
PhysicalRDSystem plane_wave_physical(double beta, double alpha1,
                                     double alpha2);

// U = u^(beta+1), V = v^-3 and its inverse
std::pair<double, double> map_solution_c10(double u, double v, double beta);
std::pair<double, double> map_solution_c10_inverse(double U, double V,
                                                   double beta);

// evolution-form residuals (S1, S2) on the family
ResidualPair solution_residual(const RDSystem& sys,
                                   const ExactSolutionFamily& fam, double t,
                                   double x);
// flux-form residuals (U_t - (D U_x)_x - F, ...) on the family
ResidualPair solution_residual(const PhysicalRDSystem& sys,
                                   const ExactSolutionFamily& fam, double t,
                                   double x);

// Regime of the C14 family from the exact exponent signs. t0 = 0, zero
// amplitudes and gamma*k = 0 are boundary cases (BoundaryCase error).
Regime classify_regime(double alpha1s, double alpha2s, double kappa, double k,
                       double t0);

const char* regime_name(Regime r);

} // namespace csymrd
