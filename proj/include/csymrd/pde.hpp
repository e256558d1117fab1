#pragma once

#include "csymrd/exact.hpp"

#include <vector>

namespace csymrd {

// Uniform 1-D node grid with two component arrays.
struct GridField {
    double x_left = 0.0, x_right = 1.0;
    int n = 64; // cells; arrays hold n+1 node values
    std::vector<double> U, V;
    double time = 0.0;

    double dx() const { return (x_right - x_left) / n; }
    double x_at(int i) const { return x_left + dx() * i; }
};

GridField grid_from_family(const ExactSolutionFamily& fam, double x_left,
                           double x_right, int n, double t);

struct BoundaryCondition {
    enum class Kind { FromFamily, Fixed };
    Kind kind = Kind::Fixed;
    const ExactSolutionFamily* family = nullptr; // not owned
    double UL = 0, UR = 0, VL = 0, VR = 0;

    static BoundaryCondition from_family(const ExactSolutionFamily& f) {
        BoundaryCondition bc;
        bc.kind = Kind::FromFamily;
        bc.family = &f;
        return bc;
    }
    static BoundaryCondition fixed_from(const GridField& ic) {
        BoundaryCondition bc;
        bc.kind = Kind::Fixed;
        bc.UL = ic.U.front();
        bc.UR = ic.U.back();
        bc.VL = ic.V.front();
        bc.VR = ic.V.back();
        return bc;
    }
};

struct SimulateOptions {
    double cfl = 0.9;
    std::vector<double> snapshot_times; // t_end is always recorded
    double positivity_guard = 0.0;      // component must stay above this
};

// Conservative central discretization of (D(W) W_x)_x with face-averaged
// diffusivities and explicit stepping, dt = cfl dx^2 / (2 max D) recomputed
// each step.
std::vector<GridField> simulate(const PhysicalRDSystem& sys, GridField ic,
                                const BoundaryCondition& bc, double t_end,
                                const SimulateOptions& opt = {});

struct SnapshotError {
    double t;
    double linf_U, linf_V;
    double l2_U, l2_V;
    double linf() const { return linf_U > linf_V ? linf_U : linf_V; }
};

std::vector<SnapshotError> error_vs_exact(const std::vector<GridField>& snaps,
                                          const ExactSolutionFamily& fam);

// log2 ratio averaged over consecutive pairs of a grid-doubling study
double convergence_order(const std::vector<double>& errors);

} // namespace csymrd
