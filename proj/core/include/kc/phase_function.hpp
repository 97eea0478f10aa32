#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kc/vec.hpp"

namespace kc {

/// Evaluation point of an observable: (t, x, v, tag).
struct PhasePoint {
    double t = 0.0;
    Vec x;
    Vec v;
    int tag = 1;
};

namespace expr {

enum class Kind { Const, Time, XCoord, VCoord, TagIs, Sum, Prod, Pow, Sin, Cos, GaussV };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    double value = 0.0;  // Const c, GaussV rate, TagIs label
    int index = 0;       // coordinate index or Pow exponent
    std::vector<NodePtr> args;
};

NodePtr constant(double c);
NodePtr time_var();
NodePtr x_coord(int i);
NodePtr v_coord(int i);
NodePtr tag_is(int label);
NodePtr sum(std::vector<NodePtr> terms);
NodePtr prod(std::vector<NodePtr> factors);
NodePtr pow(NodePtr base, int n);
NodePtr sin(NodePtr arg);
NodePtr cos(NodePtr arg);
NodePtr gauss_v(double rate);  // exp(-rate * |v|^2)

double eval(const NodePtr& n, const PhasePoint& p);
NodePtr diff_t(const NodePtr& n);
NodePtr diff_x(const NodePtr& n, int i);
std::string to_string(const NodePtr& n);

}  // namespace expr

/// Growth class of an observable in velocity.
enum class GrowthClass {
    Bounded,        // |f| <= bound
    GaussQuarter,   // |f| <= bound * exp(beta |v|^2 / 4)
};

/// Symbolic observable over (t, x, v, tag) with analytic transport derivative.
/// The declared bound is a contract checked by quasi-random sampling, not inferred.
class PhaseFunction {
public:
    PhaseFunction() : PhaseFunction(expr::constant(0.0)) {}
    explicit PhaseFunction(expr::NodePtr root, double declared_bound = 1.0,
                           GrowthClass cls = GrowthClass::Bounded)
        : root_(std::move(root)), bound_(declared_bound), class_(cls) {
        dt_ = expr::diff_t(root_);
        for (int i = 0; i < 3; ++i) dx_[i] = expr::diff_x(root_, i);
    }

    double operator()(const PhasePoint& p) const { return expr::eval(root_, p); }
    double operator()(double t, const Vec& x, const Vec& v, int tag = 1) const {
        return expr::eval(root_, PhasePoint{t, x, v, tag});
    }

    /// (d_t + v . grad_x) f, evaluated analytically.
    double transport_forward(const PhasePoint& p) const;
    /// (d_t - v . grad_x) f.
    double transport_backward(const PhasePoint& p) const;

    double declared_bound() const { return bound_; }
    GrowthClass growth_class() const { return class_; }
    const expr::NodePtr& root() const { return root_; }
    std::string text() const { return expr::to_string(root_); }

    /// Checks |f| against the declared envelope on a quasi-random sweep of
    /// (t,x,v,tag) points; returns the worst violation ratio (<= 1 passes).
    double check_declared_bound(int d, double beta, int n_points = 10000) const;

private:
    expr::NodePtr root_;
    double bound_ = 1.0;
    GrowthClass class_ = GrowthClass::Bounded;
    expr::NodePtr dt_, dx_[3];  // precomputed; evaluation is const and thread-safe
};

/// Parse the prefix expression grammar:
///   expr  := number | t | (op ...)
///   ops   := (+ e e ...) | (* e e ...) | (- e e) | (neg e) | (pow e n)
///            | (sin e) | (cos e) | (x i) | (v i) | (gauss c) | (tag l) | (const c)
PhaseFunction parse_phase_function(const std::string& text, double declared_bound = 1.0,
                                   GrowthClass cls = GrowthClass::Bounded);

}  // namespace kc
