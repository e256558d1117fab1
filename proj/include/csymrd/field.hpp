#pragma once

#include "csymrd/taylor.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>

namespace csymrd {

struct Point4 {
    double t = 0.0;
    double x = 0.0;
    double u = 0.0;
    double v = 0.0;

    double coord(Var w) const {
        switch (w) {
        case Var::T: return t;
        case Var::X: return x;
        case Var::U: return u;
        default: return v;
        }
    }
};

namespace detail {
class FieldNode;
}

// Immutable scalar field of (t, x, u, v) built from an expression tree or a
// user callable. Evaluation is deterministic and pure.
class Field {
public:
    Field() = default;
    explicit Field(std::shared_ptr<const detail::FieldNode> n)
        : node_(std::move(n)) {}

    bool empty() const { return node_ == nullptr; }
    const detail::FieldNode& node() const { return *node_; }
    const std::shared_ptr<const detail::FieldNode>& ptr() const {
        return node_;
    }

private:
    std::shared_ptr<const detail::FieldNode> node_;
};

// order: 0 value only, 1 adds the gradient, 2 adds the Hessian.
TaylorValue taylor_eval(const Field& f, const Point4& p, int order = 2);

// Maximum absolute discrepancy between central finite differences with step h
// and the Taylor first/second derivatives at p.
double fd_check(const Field& f, const Point4& p, double h);

Field constant(double c);
Field var(Var w);
inline Field var_t() { return var(Var::T); }
inline Field var_x() { return var(Var::X); }
inline Field var_u() { return var(Var::U); }
inline Field var_v() { return var(Var::V); }

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator/(const Field& a, const Field& b);
Field operator-(const Field& a);
Field operator+(const Field& a, double c);
Field operator+(double c, const Field& a);
Field operator-(const Field& a, double c);
Field operator-(double c, const Field& a);
Field operator*(const Field& a, double c);
Field operator*(double c, const Field& a);
Field operator/(const Field& a, double c);
Field operator/(double c, const Field& a);

Field pow(const Field& base, double expo);
Field pow(const Field& base, const Field& expo);
Field exp(const Field& a);
Field log(const Field& a);
Field sin(const Field& a);
Field cos(const Field& a);
Field sqrt(const Field& a);

// User-supplied callable with declared derivative availability. Requests for
// order > max_order raise UnsupportedOrder.
Field custom(std::function<TaylorValue(const Point4&, int)> fn, int max_order,
             std::string name);

// f evaluated at (scale_i * coord_i + shift_i)
Field subst_affine(const Field& f, const std::array<double, 4>& scale,
                   const std::array<double, 4>& shift);

// f evaluated with u and v exchanged
Field swap_uv(const Field& f);

// true iff the field is literally the constant 0
bool is_literal_zero(const Field& f);

} // namespace csymrd
