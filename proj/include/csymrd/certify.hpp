#pragma once

#include "csymrd/jet.hpp"

#include <array>
#include <cstdint>
#include <utility>

namespace csymrd {

struct ResidualPair {
    double r1 = 0, r2 = 0;
    double r1_scale = 1, r2_scale = 1; // 1 + max |term|
    double max_normalized() const;
};

// Invariance of the evolution pair under the prolonged operator, evaluated at
// the jet point projected onto the chosen manifold.
ResidualPair invariance_residual(const RDSystem& sys,
                                 const SymmetryOperator& Q, const JetBase& base,
                                 ManifoldKind kind = ManifoldKind::FirstTypeU);

// The twelve determining equations for a first-type operator with xi0 = 0 on
// the u-side manifold, as signed residuals in catalogue order.
struct DeterminingResiduals {
    static constexpr int kCount = 12;
    std::array<double, kCount> r{};
    std::array<double, kCount> scale{}; // 1 + max |term| per equation
    double max_normalized() const;
    static const char* label(int i);
};

DeterminingResiduals determining_residuals(const RDSystem& sys,
                                           const SymmetryOperator& Q,
                                           const Point4& p);

// (eta1_uu, xi_t d1 + 2 eta1_xu - xi_xx): both zero everywhere means the
// operator is an ordinary point symmetry.
std::pair<double, double> lie_restriction_residuals(const RDSystem& sys,
                                                    const SymmetryOperator& Q,
                                                    const Point4& p);

struct SamplerConfig {
    int n = 200;
    std::uint64_t seed = 0x5EEDULL;
    double t_min = 0.0, t_max = 1.0;
    double x_min = -1.0, x_max = 1.0;
    double u_min = 0.5, u_max = 2.0;
    double v_min = 0.5, v_max = 2.0;
    double deriv_min = -1.0, deriv_max = 1.0;
    double xi_min = 0.1; // sample filter: |xi| must exceed this
    double tol = 1e-9;
};

enum class Verdict { FirstType, Lie, Fails };

struct CertificationReport {
    int n_samples = 0;
    int n_failed = 0; // samples whose evaluation raised a domain error
    double max_invariance_residual = 0;
    double max_determining_residual = 0;
    bool is_lie = false;
    std::pair<double, double> restriction_residuals{0, 0}; // max |e1|, |e2|
    Verdict verdict = Verdict::Fails;
    double tol = 1e-9;
    std::uint64_t seed = 0;
};

CertificationReport certify(const RDSystem& sys, const SymmetryOperator& Q,
                            const SamplerConfig& cfg = {});

const char* verdict_name(Verdict v);

} // namespace csymrd
