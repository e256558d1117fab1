#include "csymrd/field.hpp"

#include <cmath>
#include <utility>

namespace csymrd {

namespace detail {

class FieldNode {
public:
    virtual ~FieldNode() = default;
    virtual TaylorValue eval(const Point4& p, int order) const = 0;
    virtual bool literal_zero() const { return false; }
};

} // namespace detail

namespace {

using detail::FieldNode;
using NodePtr = std::shared_ptr<const FieldNode>;

class ConstNode final : public FieldNode {
public:
    explicit ConstNode(double c) : c_(c) {}
    TaylorValue eval(const Point4&, int) const override {
        return TaylorValue::constant(c_);
    }
    bool literal_zero() const override { return c_ == 0.0; }

private:
    double c_;
};

class VarNode final : public FieldNode {
public:
    explicit VarNode(Var w) : w_(w) {}
    TaylorValue eval(const Point4& p, int) const override {
        return TaylorValue::variable(w_, p.coord(w_));
    }

private:
    Var w_;
};

enum class BinOp { Add, Sub, Mul, Div };

class BinNode final : public FieldNode {
public:
    BinNode(BinOp op, NodePtr a, NodePtr b)
        : op_(op), a_(std::move(a)), b_(std::move(b)) {}
    TaylorValue eval(const Point4& p, int order) const override {
        const TaylorValue va = a_->eval(p, order);
        const TaylorValue vb = b_->eval(p, order);
        switch (op_) {
        case BinOp::Add: return tv::add(va, vb);
        case BinOp::Sub: return tv::sub(va, vb);
        case BinOp::Mul: return tv::mul(va, vb);
        default: return tv::div(va, vb);
        }
    }

private:
    BinOp op_;
    NodePtr a_, b_;
};

enum class UnOp { Neg, Exp, Log, Sin, Cos, Sqrt };

class UnNode final : public FieldNode {
public:
    UnNode(UnOp op, NodePtr a) : op_(op), a_(std::move(a)) {}
    TaylorValue eval(const Point4& p, int order) const override {
        const TaylorValue va = a_->eval(p, order);
        switch (op_) {
        case UnOp::Neg: return tv::neg(va);
        case UnOp::Exp: return tv::exp(va);
        case UnOp::Log: return tv::log(va);
        case UnOp::Sin: return tv::sin(va);
        case UnOp::Cos: return tv::cos(va);
        default: return tv::sqrt(va);
        }
    }

private:
    UnOp op_;
    NodePtr a_;
};

class PowCNode final : public FieldNode {
public:
    PowCNode(NodePtr a, double p) : a_(std::move(a)), p_(p) {}
    TaylorValue eval(const Point4& p, int order) const override {
        return tv::pow(a_->eval(p, order), p_);
    }

private:
    NodePtr a_;
    double p_;
};

class PowENode final : public FieldNode {
public:
    PowENode(NodePtr base, NodePtr expo)
        : base_(std::move(base)), expo_(std::move(expo)) {}
    TaylorValue eval(const Point4& p, int order) const override {
        const TaylorValue b = base_->eval(p, order);
        if (!(b.value() > 0.0)) throw DomainError("pow with non-positive base");
        return tv::exp(tv::mul(expo_->eval(p, order), tv::log(b)));
    }

private:
    NodePtr base_, expo_;
};

class CustomNode final : public FieldNode {
public:
    CustomNode(std::function<TaylorValue(const Point4&, int)> fn, int max_order,
               std::string name)
        : fn_(std::move(fn)), max_order_(max_order), name_(std::move(name)) {}
    TaylorValue eval(const Point4& p, int order) const override {
        if (order > max_order_)
            throw UnsupportedOrder("callable field '" + name_ +
                                   "' provides derivatives up to order " +
                                   std::to_string(max_order_));
        return fn_(p, order);
    }

private:
    std::function<TaylorValue(const Point4&, int)> fn_;
    int max_order_;
    std::string name_;
};

class AffineSubstNode final : public FieldNode {
public:
    AffineSubstNode(NodePtr a, std::array<double, 4> sc,
                    std::array<double, 4> sh)
        : a_(std::move(a)), sc_(sc), sh_(sh) {}
    TaylorValue eval(const Point4& p, int order) const override {
        const Point4 q{sc_[0] * p.t + sh_[0], sc_[1] * p.x + sh_[1],
                       sc_[2] * p.u + sh_[2], sc_[3] * p.v + sh_[3]};
        const TaylorValue inner = a_->eval(q, order);
        TaylorValue out = inner;
        for (int i = 0; i < 4; ++i)
            out.b.s[kernels::kGradOff + i] =
                sc_[i] * inner.b.s[kernels::kGradOff + i];
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                out.b.s[kernels::hess_index(i, j)] =
                    sc_[i] * sc_[j] * inner.b.s[kernels::hess_index(i, j)];
        return out;
    }

private:
    NodePtr a_;
    std::array<double, 4> sc_, sh_;
};

class SwapUVNode final : public FieldNode {
public:
    explicit SwapUVNode(NodePtr a) : a_(std::move(a)) {}
    TaylorValue eval(const Point4& p, int order) const override {
        const Point4 q{p.t, p.x, p.v, p.u};
        const TaylorValue inner = a_->eval(q, order);
        TaylorValue out = inner;
        const int U = static_cast<int>(Var::U), V = static_cast<int>(Var::V);
        std::swap(out.b.s[kernels::kGradOff + U],
                  out.b.s[kernels::kGradOff + V]);
        std::swap(out.b.s[kernels::hess_index(0, U)],
                  out.b.s[kernels::hess_index(0, V)]);
        std::swap(out.b.s[kernels::hess_index(1, U)],
                  out.b.s[kernels::hess_index(1, V)]);
        std::swap(out.b.s[kernels::hess_index(U, U)],
                  out.b.s[kernels::hess_index(V, V)]);
        return out;
    }

private:
    NodePtr a_;
};

Field wrap(const FieldNode* n) { return Field(NodePtr(n)); }

} // namespace

TaylorValue taylor_eval(const Field& f, const Point4& p, int order) {
    if (order < 0 || order > 2)
        throw UnsupportedOrder("taylor_eval order must be 0, 1 or 2");
    return f.node().eval(p, order);
}

double fd_check(const Field& f, const Point4& p, double h) {
    if (!(h > 0.0)) throw DomainError("fd_check requires h > 0");
    const TaylorValue tv0 = taylor_eval(f, p, 2);
    const auto shifted = [&](int i, double di, int j, double dj) {
        Point4 q = p;
        const auto bump = [&q](int k, double d) {
            switch (k) {
            case 0: q.t += d; break;
            case 1: q.x += d; break;
            case 2: q.u += d; break;
            default: q.v += d; break;
            }
        };
        bump(i, di);
        if (j >= 0) bump(j, dj);
        return taylor_eval(f, q, 0).value();
    };
    double worst = 0.0;
    const double f0 = tv0.value();
    for (int i = 0; i < 4; ++i) {
        const double fp = shifted(i, h, -1, 0.0);
        const double fm = shifted(i, -h, -1, 0.0);
        const double d1 = (fp - fm) / (2.0 * h);
        const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
        const Var vi = static_cast<Var>(i);
        worst = std::max(worst, std::fabs(d1 - tv0.grad(vi)));
        worst = std::max(worst, std::fabs(d2 - tv0.hess(vi, vi)));
        for (int j = i + 1; j < 4; ++j) {
            const double fpp = shifted(i, h, j, h);
            const double fpm = shifted(i, h, j, -h);
            const double fmp = shifted(i, -h, j, h);
            const double fmm = shifted(i, -h, j, -h);
            const double dij = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            worst = std::max(
                worst, std::fabs(dij - tv0.hess(vi, static_cast<Var>(j))));
        }
    }
    return worst;
}

Field constant(double c) { return wrap(new ConstNode(c)); }
Field var(Var w) { return wrap(new VarNode(w)); }

Field operator+(const Field& a, const Field& b) {
    return wrap(new BinNode(BinOp::Add, a.ptr(), b.ptr()));
}
Field operator-(const Field& a, const Field& b) {
    return wrap(new BinNode(BinOp::Sub, a.ptr(), b.ptr()));
}
Field operator*(const Field& a, const Field& b) {
    return wrap(new BinNode(BinOp::Mul, a.ptr(), b.ptr()));
}
Field operator/(const Field& a, const Field& b) {
    return wrap(new BinNode(BinOp::Div, a.ptr(), b.ptr()));
}
Field operator-(const Field& a) {
    return wrap(new UnNode(UnOp::Neg, a.ptr()));
}
Field operator+(const Field& a, double c) { return a + constant(c); }
Field operator+(double c, const Field& a) { return constant(c) + a; }
Field operator-(const Field& a, double c) { return a - constant(c); }
Field operator-(double c, const Field& a) { return constant(c) - a; }
Field operator*(const Field& a, double c) { return a * constant(c); }
Field operator*(double c, const Field& a) { return constant(c) * a; }
Field operator/(const Field& a, double c) { return a / constant(c); }
Field operator/(double c, const Field& a) { return constant(c) / a; }

Field pow(const Field& base, double expo) {
    return wrap(new PowCNode(base.ptr(), expo));
}
Field pow(const Field& base, const Field& expo) {
    return wrap(new PowENode(base.ptr(), expo.ptr()));
}
Field exp(const Field& a) { return wrap(new UnNode(UnOp::Exp, a.ptr())); }
Field log(const Field& a) { return wrap(new UnNode(UnOp::Log, a.ptr())); }
Field sin(const Field& a) { return wrap(new UnNode(UnOp::Sin, a.ptr())); }
Field cos(const Field& a) { return wrap(new UnNode(UnOp::Cos, a.ptr())); }
Field sqrt(const Field& a) { return wrap(new UnNode(UnOp::Sqrt, a.ptr())); }

Field custom(std::function<TaylorValue(const Point4&, int)> fn, int max_order,
             std::string name) {
    return wrap(new CustomNode(std::move(fn), max_order, std::move(name)));
}

Field subst_affine(const Field& f, const std::array<double, 4>& scale,
                   const std::array<double, 4>& shift) {
    return wrap(new AffineSubstNode(f.ptr(), scale, shift));
}

Field swap_uv(const Field& f) { return wrap(new SwapUVNode(f.ptr())); }

bool is_literal_zero(const Field& f) {
    return !f.empty() && f.node().literal_zero();
}

} // namespace csymrd
