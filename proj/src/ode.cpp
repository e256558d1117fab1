#include "csymrd/ode.hpp"

#include "csymrd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace csymrd {

namespace {

using Y = std::array<double, 2>;

Y axpy(const Y& y, double a, const Y& k) {
    return {y[0] + a * k[0], y[1] + a * k[1]};
}

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600,
                 E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640,
                 E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

struct StepResult {
    Y ynew;
    Y fnew; // FSAL stage
    double err;
};

StepResult dp54_step(const ReducedODESystem& ode, double t, const Y& y,
                     const Y& f0, double h, double rtol, double atol) {
    const auto f = [&](double tt, const Y& yy) -> Y {
        (void)tt;
        const auto [a, b] = ode.rhs(yy[0], yy[1]);
        return Y{a, b};
    };
    const Y k1 = f0;
    const Y k2 = f(t + h / 5, axpy(y, h * A21, k1));
    Y s = axpy(axpy(y, h * A31, k1), h * A32, k2);
    const Y k3 = f(t + 3 * h / 10, s);
    s = axpy(axpy(axpy(y, h * A41, k1), h * A42, k2), h * A43, k3);
    const Y k4 = f(t + 4 * h / 5, s);
    s = axpy(axpy(axpy(axpy(y, h * A51, k1), h * A52, k2), h * A53, k3),
             h * A54, k4);
    const Y k5 = f(t + 8 * h / 9, s);
    s = axpy(axpy(axpy(axpy(axpy(y, h * A61, k1), h * A62, k2), h * A63, k3),
                  h * A64, k4),
             h * A65, k5);
    const Y k6 = f(t + h, s);
    Y ynew;
    for (int i = 0; i < 2; ++i)
        ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] +
                              B5 * k5[i] + B6 * k6[i]);
    const Y k7 = f(t + h, ynew);
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] +
                              E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        const double sc =
            atol + rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
        err += (e / sc) * (e / sc);
    }
    return StepResult{ynew, k7, std::sqrt(err / 2.0)};
}

// power-law fit m ~ C (t* - t)^-q through three escaping samples
double extrapolate_blowup(const std::array<double, 3>& ts,
                          const std::array<double, 3>& ms) {
    const double dt = ts[2] - ts[1];
    if (!(dt > 0) || !(ms[0] > 0) || ms[1] <= ms[0] || ms[2] <= ms[1])
        return ts[2];
    const auto mismatch = [&](double tstar) {
        const double q12 = (std::log(ms[0]) - std::log(ms[1])) /
                           (std::log(tstar - ts[1]) - std::log(tstar - ts[0]));
        const double q23 = (std::log(ms[1]) - std::log(ms[2])) /
                           (std::log(tstar - ts[2]) - std::log(tstar - ts[1]));
        return q12 - q23;
    };
    double lo = ts[2] + 1e-3 * dt;
    double hi = ts[2] + 1e4 * dt;
    double flo = mismatch(lo), fhi = mismatch(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi) || flo * fhi > 0)
        return ts[2];
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = mismatch(mid);
        if (!std::isfinite(fm)) break;
        if (flo * fm <= 0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::array<double, 2> Trajectory::interpolate(double tq) const {
    if (t.size() < 2) return y.at(0);
    const auto it = std::upper_bound(t.begin(), t.end(), tq);
    std::size_t i = it == t.begin() ? 0 : (it - t.begin() - 1);
    if (i >= t.size() - 1) i = t.size() - 2;
    const double h = t[i + 1] - t[i];
    const double s = (tq - t[i]) / h;
    std::array<double, 2> out{};
    for (int c = 0; c < 2; ++c) {
        const double y0 = y[i][c], y1 = y[i + 1][c];
        const double m0 = dy[i][c] * h, m1 = dy[i + 1][c] * h;
        const double s2 = s * s, s3 = s2 * s;
        out[c] = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
                 (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
    }
    return out;
}

std::array<double, 2> Trajectory::interpolate_derivative(double tq) const {
    if (t.size() < 2) return dy.at(0);
    const auto it = std::upper_bound(t.begin(), t.end(), tq);
    std::size_t i = it == t.begin() ? 0 : (it - t.begin() - 1);
    if (i >= t.size() - 1) i = t.size() - 2;
    const double h = t[i + 1] - t[i];
    const double s = (tq - t[i]) / h;
    std::array<double, 2> out{};
    for (int c = 0; c < 2; ++c) {
        const double y0 = y[i][c], y1 = y[i + 1][c];
        const double m0 = dy[i][c] * h, m1 = dy[i + 1][c] * h;
        const double s2 = s * s;
        out[c] = ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 +
                  (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * m1) /
                 h;
    }
    return out;
}

Trajectory integrate(const ReducedODESystem& ode, std::array<double, 2> y0,
                     double t0, double t1, const IntegrateOptions& opt) {
    if (!(t1 > t0)) throw InvalidParams("integrate requires t1 > t0");
    Trajectory tr;
    double t = t0;
    Y y = y0;
    Y f0;
    try {
        const auto [a, b] = ode.rhs(y[0], y[1]);
        f0 = {a, b};
    } catch (const DomainError&) {
        throw InvalidParams("initial point outside the reduction domain");
    }
    tr.t.push_back(t);
    tr.y.push_back(y);
    tr.dy.push_back(f0);

    const double m_init =
        std::max(1.0, std::fabs(y[0]) + std::fabs(y[1]));
    double h = opt.fixed_step
                   ? opt.fixed_h
                   : (opt.h0 > 0 ? opt.h0 : (t1 - t0) * 1e-3);

    bool last_reject_domain = false;
    while (t < t1) {
        h = std::min(h, t1 - t);
        const double floor_h = opt.h_floor * std::max(1.0, std::fabs(t));
        bool accepted = false;
        StepResult st{};
        try {
            st = dp54_step(ode, t, y, f0, h, opt.rtol, opt.atol);
            if (opt.fixed_step || st.err <= 1.0) {
                accepted = true;
                last_reject_domain = false;
            } else {
                h *= std::clamp(0.9 * std::pow(st.err, -0.2), 0.2, 1.0);
                last_reject_domain = false;
            }
        } catch (const DomainError&) {
            h *= 0.5;
            last_reject_domain = true;
        }
        if (accepted) {
            t += h;
            y = st.ynew;
            f0 = st.fnew;
            tr.t.push_back(t);
            tr.y.push_back(y);
            tr.dy.push_back(f0);
            tr.h_log.push_back(h);
            const double m = std::fabs(y[0]) + std::fabs(y[1]);
            if (m > opt.blowup_magnitude) {
                tr.termination = Termination::BlowUpDetected;
                const std::size_t n = tr.t.size();
                if (n >= 3) {
                    tr.blowup_time = extrapolate_blowup(
                        {tr.t[n - 3], tr.t[n - 2], tr.t[n - 1]},
                        {std::fabs(tr.y[n - 3][0]) + std::fabs(tr.y[n - 3][1]),
                         std::fabs(tr.y[n - 2][0]) + std::fabs(tr.y[n - 2][1]),
                         m});
                } else {
                    tr.blowup_time = t;
                }
                return tr;
            }
            if (!opt.fixed_step) {
                h *= std::clamp(0.9 * std::pow(std::max(st.err, 1e-10), -0.2),
                                0.2, 5.0);
            }
            continue;
        }
        if (h < floor_h) {
            const double m = std::fabs(y[0]) + std::fabs(y[1]);
            if (m > 100.0 * m_init) {
                // escaping solution: the step collapse marks the singular time
                tr.termination = Termination::BlowUpDetected;
                const std::size_t n = tr.t.size();
                if (n >= 3) {
                    tr.blowup_time = extrapolate_blowup(
                        {tr.t[n - 3], tr.t[n - 2], tr.t[n - 1]},
                        {std::fabs(tr.y[n - 3][0]) + std::fabs(tr.y[n - 3][1]),
                         std::fabs(tr.y[n - 2][0]) + std::fabs(tr.y[n - 2][1]),
                         m});
                } else {
                    tr.blowup_time = t;
                }
                return tr;
            }
            // domain boundary: the right-hand side kept rejecting
            bool domain_issue = last_reject_domain;
            try {
                (void)ode.rhs(y[0], y[1]);
            } catch (const DomainError&) {
                domain_issue = true;
            }
            if (domain_issue) {
                tr.termination = Termination::DomainExit;
                return tr;
            }
            throw StiffnessFailure(
                "step size collapsed without solution growth at t = " +
                std::to_string(t));
        }
    }
    tr.termination = Termination::Completed;
    return tr;
}

} // namespace csymrd
