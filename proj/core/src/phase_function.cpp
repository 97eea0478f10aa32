#include "kc/phase_function.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kc/geometry.hpp"

namespace kc {
namespace expr {

namespace {
NodePtr make(Kind k, double value = 0.0, int index = 0, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = value;
    n->index = index;
    n->args = std::move(args);
    return n;
}
}  // namespace

NodePtr constant(double c) { return make(Kind::Const, c); }
NodePtr time_var() { return make(Kind::Time); }
NodePtr x_coord(int i) { return make(Kind::XCoord, 0.0, i); }
NodePtr v_coord(int i) { return make(Kind::VCoord, 0.0, i); }
NodePtr tag_is(int label) { return make(Kind::TagIs, label); }
NodePtr sum(std::vector<NodePtr> terms) { return make(Kind::Sum, 0.0, 0, std::move(terms)); }
NodePtr prod(std::vector<NodePtr> factors) { return make(Kind::Prod, 0.0, 0, std::move(factors)); }
NodePtr pow(NodePtr base, int n) { return make(Kind::Pow, 0.0, n, {std::move(base)}); }
NodePtr sin(NodePtr arg) { return make(Kind::Sin, 0.0, 0, {std::move(arg)}); }
NodePtr cos(NodePtr arg) { return make(Kind::Cos, 0.0, 0, {std::move(arg)}); }
NodePtr gauss_v(double rate) { return make(Kind::GaussV, rate); }

double eval(const NodePtr& n, const PhasePoint& p) {
    switch (n->kind) {
        case Kind::Const: return n->value;
        case Kind::Time: return p.t;
        case Kind::XCoord: return p.x[n->index];
        case Kind::VCoord: return p.v[n->index];
        case Kind::TagIs: return p.tag == static_cast<int>(n->value) ? 1.0 : 0.0;
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& a : n->args) s += eval(a, p);
            return s;
        }
        case Kind::Prod: {
            double s = 1.0;
            for (const auto& a : n->args) s *= eval(a, p);
            return s;
        }
        case Kind::Pow: return std::pow(eval(n->args[0], p), n->index);
        case Kind::Sin: return std::sin(eval(n->args[0], p));
        case Kind::Cos: return std::cos(eval(n->args[0], p));
        case Kind::GaussV: return std::exp(-n->value * norm2(p.v));
    }
    return 0.0;
}

namespace {
NodePtr diff(const NodePtr& n, bool wrt_time, int xi) {
    switch (n->kind) {
        case Kind::Const:
        case Kind::VCoord:
        case Kind::TagIs:
        case Kind::GaussV:  // depends on v only
            return constant(0.0);
        case Kind::Time: return constant(wrt_time ? 1.0 : 0.0);
        case Kind::XCoord: return constant(!wrt_time && n->index == xi ? 1.0 : 0.0);
        case Kind::Sum: {
            std::vector<NodePtr> terms;
            for (const auto& a : n->args) terms.push_back(diff(a, wrt_time, xi));
            return sum(std::move(terms));
        }
        case Kind::Prod: {
            std::vector<NodePtr> terms;
            for (std::size_t i = 0; i < n->args.size(); ++i) {
                std::vector<NodePtr> fac;
                for (std::size_t j = 0; j < n->args.size(); ++j)
                    fac.push_back(i == j ? diff(n->args[j], wrt_time, xi) : n->args[j]);
                terms.push_back(prod(std::move(fac)));
            }
            return sum(std::move(terms));
        }
        case Kind::Pow:
            return prod({constant(static_cast<double>(n->index)),
                         pow(n->args[0], n->index - 1), diff(n->args[0], wrt_time, xi)});
        case Kind::Sin: return prod({cos(n->args[0]), diff(n->args[0], wrt_time, xi)});
        case Kind::Cos:
            return prod({constant(-1.0), sin(n->args[0]), diff(n->args[0], wrt_time, xi)});
    }
    return constant(0.0);
}
}  // namespace

NodePtr diff_t(const NodePtr& n) { return diff(n, true, -1); }
NodePtr diff_x(const NodePtr& n, int i) { return diff(n, false, i); }

std::string to_string(const NodePtr& n) {
    std::ostringstream os;
    os.precision(17);
    switch (n->kind) {
        case Kind::Const: os << n->value; break;
        case Kind::Time: os << "t"; break;
        case Kind::XCoord: os << "(x " << n->index << ")"; break;
        case Kind::VCoord: os << "(v " << n->index << ")"; break;
        case Kind::TagIs: os << "(tag " << static_cast<int>(n->value) << ")"; break;
        case Kind::Sum: {
            os << "(+";
            for (const auto& a : n->args) os << " " << to_string(a);
            os << ")";
            break;
        }
        case Kind::Prod: {
            os << "(*";
            for (const auto& a : n->args) os << " " << to_string(a);
            os << ")";
            break;
        }
        case Kind::Pow: os << "(pow " << to_string(n->args[0]) << " " << n->index << ")"; break;
        case Kind::Sin: os << "(sin " << to_string(n->args[0]) << ")"; break;
        case Kind::Cos: os << "(cos " << to_string(n->args[0]) << ")"; break;
        case Kind::GaussV: os << "(gauss " << n->value << ")"; break;
    }
    return os.str();
}

}  // namespace expr

double PhaseFunction::transport_forward(const PhasePoint& p) const {
    double s = expr::eval(dt_, p);
    for (int i = 0; i < p.x.dim(); ++i) s += p.v[i] * expr::eval(dx_[i], p);
    return s;
}

double PhaseFunction::transport_backward(const PhasePoint& p) const {
    double s = expr::eval(dt_, p);
    for (int i = 0; i < p.x.dim(); ++i) s -= p.v[i] * expr::eval(dx_[i], p);
    return s;
}

double PhaseFunction::check_declared_bound(int d, double beta, int n_points) const {
    // Halton sweep in (t, x, v, tag); v mapped to a centered ball of radius 3 sigma-ish
    auto halton = [](int idx, int base) {
        double f = 1.0, r = 0.0;
        while (idx > 0) {
            f /= base;
            r += f * (idx % base);
            idx /= base;
        }
        return r;
    };
    static const int primes[8] = {2, 3, 5, 7, 11, 13, 17, 19};
    double worst = 0.0;
    for (int k = 1; k <= n_points; ++k) {
        PhasePoint p;
        int dim = 0;
        p.t = halton(k, primes[dim++]);
        p.x = Vec::zero(d);
        p.v = Vec::zero(d);
        for (int i = 0; i < d; ++i) p.x[i] = halton(k, primes[dim++]);
        double vmax = 5.0 / std::sqrt(beta);
        for (int i = 0; i < d; ++i) p.v[i] = vmax * (2.0 * halton(k, primes[dim++]) - 1.0);
        p.tag = k % 2;
        double envelope = bound_;
        if (class_ == GrowthClass::GaussQuarter)
            envelope *= std::exp(beta * norm2(p.v) / 4.0);
        double val = std::abs((*this)(p));
        if (envelope > 0.0) worst = std::max(worst, val / envelope);
    }
    return worst;
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw contract_error("phase-function parse error at offset " + std::to_string(pos) +
                             ": " + msg);
    }

    std::string token() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
               s[pos] != '(' && s[pos] != ')')
            ++pos;
        if (start == pos) fail("expected token");
        return s.substr(start, pos - start);
    }

    double number() {
        std::string t = token();
        try {
            std::size_t used = 0;
            double v = std::stod(t, &used);
            if (used != t.size()) fail("bad number '" + t + "'");
            return v;
        } catch (const std::invalid_argument&) {
            fail("bad number '" + t + "'");
        }
    }

    expr::NodePtr parse() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        if (s[pos] != '(') {
            std::string t = token();
            if (t == "t") return expr::time_var();
            try {
                std::size_t used = 0;
                double v = std::stod(t, &used);
                if (used == t.size()) return expr::constant(v);
            } catch (const std::invalid_argument&) {
            }
            fail("unknown atom '" + t + "'");
        }
        ++pos;  // consume '('
        std::string op = token();
        expr::NodePtr out;
        if (op == "+" || op == "*") {
            std::vector<expr::NodePtr> args;
            for (;;) {
                skip_ws();
                if (pos < s.size() && s[pos] == ')') break;
                args.push_back(parse());
            }
            if (args.empty()) fail("empty argument list");
            out = op == "+" ? expr::sum(std::move(args)) : expr::prod(std::move(args));
        } else if (op == "-") {
            auto a = parse();
            auto b = parse();
            out = expr::sum({a, expr::prod({expr::constant(-1.0), b})});
        } else if (op == "neg") {
            out = expr::prod({expr::constant(-1.0), parse()});
        } else if (op == "pow") {
            auto base = parse();
            double n = number();
            if (n < 0 || n != std::floor(n)) fail("pow exponent must be a nonnegative integer");
            out = expr::pow(base, static_cast<int>(n));
        } else if (op == "sin") {
            out = expr::sin(parse());
        } else if (op == "cos") {
            out = expr::cos(parse());
        } else if (op == "x" || op == "v") {
            double i = number();
            if (i < 0 || i > 2 || i != std::floor(i)) fail("coordinate index must be 0, 1 or 2");
            out = op == "x" ? expr::x_coord(static_cast<int>(i)) : expr::v_coord(static_cast<int>(i));
        } else if (op == "gauss") {
            out = expr::gauss_v(number());
        } else if (op == "tag") {
            double l = number();
            if (l != 0 && l != 1) fail("tag label must be 0 or 1");
            out = expr::tag_is(static_cast<int>(l));
        } else if (op == "const") {
            out = expr::constant(number());
        } else {
            fail("unknown operator '" + op + "'");
        }
        skip_ws();
        if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
        ++pos;
        return out;
    }
};

}  // namespace

PhaseFunction parse_phase_function(const std::string& text, double declared_bound,
                                   GrowthClass cls) {
    Parser p(text);
    auto root = p.parse();
    p.skip_ws();
    if (p.pos != text.size())
        throw contract_error("phase-function parse error: trailing input");
    return PhaseFunction(std::move(root), declared_bound, cls);
}

}  // namespace kc
