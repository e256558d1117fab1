#pragma once

#include "csymrd/reduce.hpp"

#include <array>
#include <vector>

namespace csymrd {

enum class Termination { Completed, BlowUpDetected, DomainExit };

struct IntegrateOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h0 = 0.0;      // 0 = choose automatically
    bool fixed_step = false;
    double fixed_h = 1e-3;
    double blowup_magnitude = 1e12;
    double h_floor = 1e-14;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<std::array<double, 2>> y;  // (phi, psi)
    std::vector<std::array<double, 2>> dy; // rhs at the accepted points
    std::vector<double> h_log;
    Termination termination = Termination::Completed;
    double blowup_time = 0.0; // set when termination == BlowUpDetected

    // cubic Hermite interpolation between accepted points
    std::array<double, 2> interpolate(double tq) const;
    std::array<double, 2> interpolate_derivative(double tq) const;
};

Trajectory integrate(const ReducedODESystem& ode, std::array<double, 2> y0,
                     double t0, double t1, const IntegrateOptions& opt = {});

} // namespace csymrd
