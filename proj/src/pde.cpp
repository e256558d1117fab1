#include "csymrd/pde.hpp"

#include "csymrd/errors.hpp"
#include "csymrd/kernels/array_ops.hpp"

#include <algorithm>
#include <cmath>

namespace csymrd {

namespace {

struct Scratch {
    std::vector<double> lu, lv, tmp, pw;
    std::vector<double> D1, D2, RU, RV, dU, dV;
    void resize(int m) {
        for (auto* v : {&lu, &lv, &tmp, &pw, &D1, &D2, &RU, &RV, &dU, &dV})
            v->assign(m, 0.0);
    }
};

// D and reaction arrays via the power-law tables: two logs and one exp per
// monomial, all through the dispatch kernels.
void eval_fast(const PowerLawRhs& fast, const std::vector<double>& U,
               const std::vector<double>& V, Scratch& s) {
    const auto& ops = kernels::array_ops();
    const int m = static_cast<int>(U.size());
    ops.vlog(s.lu.data(), U.data(), m);
    ops.vlog(s.lv.data(), V.data(), m);
    const auto powers = [&](double a, double b, std::vector<double>& out) {
        for (int i = 0; i < m; ++i) s.tmp[i] = a * s.lu[i] + b * s.lv[i];
        ops.vexp(out.data(), s.tmp.data(), m);
    };
    powers(fast.dU_exp, 0.0, s.D1);
    if (fast.dU_scale != 1.0)
        for (int i = 0; i < m; ++i) s.D1[i] *= fast.dU_scale;
    powers(0.0, fast.dV_exp, s.D2);
    if (fast.dV_scale != 1.0)
        for (int i = 0; i < m; ++i) s.D2[i] *= fast.dV_scale;
    std::fill(s.RU.begin(), s.RU.end(), 0.0);
    std::fill(s.RV.begin(), s.RV.end(), 0.0);
    for (const auto& term : fast.reaction_U) {
        powers(term.a, term.b, s.pw);
        ops.axpy(s.RU.data(), term.c, s.pw.data(), m);
    }
    for (const auto& term : fast.reaction_V) {
        powers(term.a, term.b, s.pw);
        ops.axpy(s.RV.data(), term.c, s.pw.data(), m);
    }
}

void eval_generic(const PhysicalRDSystem& sys, const std::vector<double>& U,
                  const std::vector<double>& V, Scratch& s) {
    const int m = static_cast<int>(U.size());
    for (int i = 0; i < m; ++i) {
        s.D1[i] = sys.D1.eval_d(U[i]);
        s.D2[i] = sys.D2.eval_d(V[i]);
        const Point4 p{0, 0, U[i], V[i]};
        s.RU[i] = taylor_eval(sys.F, p, 0).value();
        s.RV[i] = taylor_eval(sys.G, p, 0).value();
    }
}

} // namespace

GridField grid_from_family(const ExactSolutionFamily& fam, double x_left,
                           double x_right, int n, double t) {
    GridField g;
    g.x_left = x_left;
    g.x_right = x_right;
    g.n = n;
    g.time = t;
    g.U.resize(n + 1);
    g.V.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const auto [c1, c2] = fam.eval(t, g.x_at(i));
        g.U[i] = c1.val;
        g.V[i] = c2.val;
    }
    return g;
}

std::vector<GridField> simulate(const PhysicalRDSystem& sys, GridField ic,
                                const BoundaryCondition& bc, double t_end,
                                const SimulateOptions& opt) {
    if (!(opt.cfl > 0.0) || opt.cfl > 1.0)
        throw InvalidParams("cfl must lie in (0, 1]");
    if (!(t_end > ic.time)) throw InvalidParams("t_end must exceed ic.time");
    const int m = ic.n + 1;
    if (static_cast<int>(ic.U.size()) != m ||
        static_cast<int>(ic.V.size()) != m)
        throw InvalidParams("ic arrays must hold n+1 node values");

    const bool guard_U = sys.D1.needs_positive();
    const bool guard_V = sys.D2.needs_positive();
    const double guard = opt.positivity_guard;
    const auto check_positive = [&](const std::vector<double>& U,
                                    const std::vector<double>& V) {
        if (guard_U)
            for (double w : U)
                if (!(w > guard))
                    throw PositivityLoss("U crossed the domain guard");
        if (guard_V)
            for (double w : V)
                if (!(w > guard))
                    throw PositivityLoss("V crossed the domain guard");
    };
    check_positive(ic.U, ic.V);

    std::vector<double> marks = opt.snapshot_times;
    marks.push_back(t_end);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    std::vector<GridField> snaps;
    snaps.push_back(ic);

    Scratch s;
    s.resize(m);
    const auto& ops = kernels::array_ops();
    const double dx = ic.dx();
    const double inv_dx2 = 1.0 / (dx * dx);

    GridField g = ic;
    std::size_t mark_idx = 0;
    while (mark_idx < marks.size() && marks[mark_idx] <= g.time + 1e-15)
        ++mark_idx;

    while (g.time < t_end - 1e-15) {
        if (sys.fast.has_value())
            eval_fast(*sys.fast, g.U, g.V, s);
        else
            eval_generic(sys, g.U, g.V, s);

        const double maxD = std::max(ops.max_val(s.D1.data(), m),
                                     ops.max_val(s.D2.data(), m));
        if (!(maxD > 0.0) || !std::isfinite(maxD))
            throw StepCollapse("diffusivity became non-positive or infinite");
        const double dt_bound = opt.cfl * dx * dx / (2.0 * maxD);
        double dt = dt_bound;
        const double next_mark = marks[mark_idx];
        if (g.time + dt > next_mark) dt = next_mark - g.time;
        if (dt > dt_bound * (1.0 + 1e-12))
            throw Error("internal: step exceeded the cfl bound");
        if (dt < 1e-14)
            throw StepCollapse("time step collapsed below 1e-14");

        ops.diffusion(s.dU.data(), g.U.data(), s.D1.data(), m, inv_dx2);
        ops.diffusion(s.dV.data(), g.V.data(), s.D2.data(), m, inv_dx2);
        // interior update: W += dt * (diffusion + reaction)
        for (int i = 1; i < m - 1; ++i)
            g.U[i] += dt * (s.dU[i] + s.RU[i]);
        for (int i = 1; i < m - 1; ++i)
            g.V[i] += dt * (s.dV[i] + s.RV[i]);
        g.time += dt;
        if (bc.kind == BoundaryCondition::Kind::FromFamily) {
            const auto [l1, l2] = bc.family->eval(g.time, g.x_left);
            const auto [r1, r2] = bc.family->eval(g.time, g.x_right);
            g.U.front() = l1.val;
            g.V.front() = l2.val;
            g.U.back() = r1.val;
            g.V.back() = r2.val;
        } else {
            g.U.front() = bc.UL;
            g.U.back() = bc.UR;
            g.V.front() = bc.VL;
            g.V.back() = bc.VR;
        }
        check_positive(g.U, g.V);

        if (g.time >= next_mark - 1e-15) {
            snaps.push_back(g);
            ++mark_idx;
            if (mark_idx >= marks.size()) break;
        }
    }
    return snaps;
}

std::vector<SnapshotError> error_vs_exact(const std::vector<GridField>& snaps,
                                          const ExactSolutionFamily& fam) {
    std::vector<SnapshotError> out;
    out.reserve(snaps.size());
    for (const auto& g : snaps) {
        SnapshotError e{};
        e.t = g.time;
        double s2u = 0, s2v = 0;
        for (int i = 0; i <= g.n; ++i) {
            const auto [c1, c2] = fam.eval(g.time, g.x_at(i));
            const double eu = std::fabs(g.U[i] - c1.val);
            const double ev = std::fabs(g.V[i] - c2.val);
            e.linf_U = std::max(e.linf_U, eu);
            e.linf_V = std::max(e.linf_V, ev);
            s2u += eu * eu;
            s2v += ev * ev;
        }
        e.l2_U = std::sqrt(s2u * g.dx());
        e.l2_V = std::sqrt(s2v * g.dx());
        out.push_back(e);
    }
    return out;
}

double convergence_order(const std::vector<double>& errors) {
    if (errors.size() < 2)
        throw DegenerateErrors("need at least two grid errors");
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0))
            throw DegenerateErrors("errors must be strictly positive");
        if (i > 0 && errors[i] >= errors[i - 1])
            throw DegenerateErrors("errors must decrease under refinement");
    }
    double sum = 0;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        sum += std::log2(errors[i] / errors[i + 1]);
    return sum / static_cast<double>(errors.size() - 1);
}

} // namespace csymrd
