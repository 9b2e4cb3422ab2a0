#include "hwroots/jet.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "hwroots/errors.hpp"

namespace hwroots {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void require_compatible(const Jet& a, const Jet& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("jet arithmetic requires equal orders");
    if (a.center() != b.center())
        throw std::invalid_argument("jet arithmetic requires equal centers");
}

bool integer_valued(double v) {
    return std::isfinite(v) && v == std::floor(v) && std::abs(v) <= 1e9;
}

}  // namespace

Jet::Jet(std::vector<Complex> coeffs, Complex center)
    : c_(std::move(coeffs)), center_(center) {
    if (c_.empty()) throw std::invalid_argument("jet order must be >= 1");
}

Jet Jet::constant(Complex value, int order, Complex center) {
    if (order < 1) throw std::invalid_argument("jet order must be >= 1");
    std::vector<Complex> c(static_cast<std::size_t>(order), Complex(0.0, 0.0));
    c[0] = value;
    return Jet(std::move(c), center);
}

Jet Jet::variable(int order, Complex center) {
    Jet j = constant(center, order, center);
    if (order >= 2) j.c_[1] = Complex(1.0, 0.0);
    return j;
}

int Jet::valuation() const {
    for (int k = 0; k < order(); ++k)
        if (std::abs(c_[static_cast<std::size_t>(k)]) > kZeroTol) return k;
    return order();
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Jet Jet::operator+(const Jet& rhs) const {
    require_compatible(*this, rhs);
    Jet r = *this;
    for (int k = 0; k < order(); ++k) r.c_[static_cast<std::size_t>(k)] += rhs.c_[static_cast<std::size_t>(k)];
    return r;
}

Jet Jet::operator-(const Jet& rhs) const {
    require_compatible(*this, rhs);
    Jet r = *this;
    for (int k = 0; k < order(); ++k) r.c_[static_cast<std::size_t>(k)] -= rhs.c_[static_cast<std::size_t>(k)];
    return r;
}

Jet Jet::operator*(const Jet& rhs) const {
    require_compatible(*this, rhs);
    const int n = order();
    std::vector<Complex> out(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        const Complex a = c_[static_cast<std::size_t>(i)];
        if (a == Complex(0.0, 0.0)) continue;
        for (int j = 0; i + j < n; ++j)
            out[static_cast<std::size_t>(i + j)] += a * rhs.c_[static_cast<std::size_t>(j)];
    }
    return Jet(std::move(out), center_);
}

Jet Jet::operator/(const Jet& rhs) const {
    require_compatible(*this, rhs);
    const int n = order();
    const int vden = rhs.valuation();
    if (vden == n)
        throw PoleError("division by an identically zero series");
    int shift = 0;
    if (vden > 0) {
        const int vnum = valuation();
        if (vnum < vden)
            throw PoleError("series division has a pole: numerator valuation " +
                            std::to_string(vnum) + " < denominator valuation " +
                            std::to_string(vden));
        shift = vden;
    }
    // Long division on the shifted sequences; positions beyond n-1 read as 0.
    auto num_at = [&](int k) {
        int i = k + shift;
        return i < n ? c_[static_cast<std::size_t>(i)] : Complex(0.0, 0.0);
    };
    auto den_at = [&](int k) {
        int i = k + shift;
        return i < n ? rhs.c_[static_cast<std::size_t>(i)] : Complex(0.0, 0.0);
    };
    const Complex lead = den_at(0);
    std::vector<Complex> out(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    for (int k = 0; k < n; ++k) {
        Complex acc = num_at(k);
        for (int j = 0; j < k; ++j)
            acc -= out[static_cast<std::size_t>(j)] * den_at(k - j);
        out[static_cast<std::size_t>(k)] = acc / lead;
    }
    return Jet(std::move(out), center_);
}

Jet Jet::operator+(Complex s) const {
    Jet r = *this;
    r.c_[0] += s;
    return r;
}

Jet Jet::operator-(Complex s) const {
    Jet r = *this;
    r.c_[0] -= s;
    return r;
}

Jet Jet::operator*(Complex s) const {
    Jet r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
}

Jet exp(const Jet& x) {
    const int n = x.order();
    std::vector<Complex> b(static_cast<std::size_t>(n));
    b[0] = std::exp(x.coeff(0));
    for (int k = 1; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (int j = 1; j <= k; ++j)
            acc += static_cast<double>(j) * x.coeff(j) * b[static_cast<std::size_t>(k - j)];
        b[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
    }
    return Jet(std::move(b), x.center());
}

Jet log(const Jet& x) {
    if (x.coeff(0) == Complex(0.0, 0.0)) throw LogOfZeroSeriesError();
    const int n = x.order();
    std::vector<Complex> b(static_cast<std::size_t>(n));
    b[0] = std::log(x.coeff(0));
    for (int k = 1; k < n; ++k) {
        Complex acc = static_cast<double>(k) * x.coeff(k);
        for (int j = 1; j < k; ++j)
            acc -= static_cast<double>(j) * b[static_cast<std::size_t>(j)] * x.coeff(k - j);
        b[static_cast<std::size_t>(k)] = acc / (static_cast<double>(k) * x.coeff(0));
    }
    return Jet(std::move(b), x.center());
}

Jet sqrt(const Jet& x) {
    if (x.coeff(0) == Complex(0.0, 0.0)) throw SqrtOfZeroSeriesError();
    const int n = x.order();
    std::vector<Complex> b(static_cast<std::size_t>(n));
    b[0] = std::sqrt(x.coeff(0));
    for (int k = 1; k < n; ++k) {
        Complex acc = x.coeff(k);
        for (int j = 1; j < k; ++j)
            acc -= b[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
        b[static_cast<std::size_t>(k)] = acc / (2.0 * b[0]);
    }
    return Jet(std::move(b), x.center());
}

namespace {

// Coupled recurrence for (sin, cos) or (sinh, cosh): s' = x'·c, c' = ±x'·s.
void pair_recurrence(const Jet& x, bool hyperbolic, Jet& s_out, Jet& c_out) {
    const int n = x.order();
    std::vector<Complex> s(static_cast<std::size_t>(n)), c(static_cast<std::size_t>(n));
    if (hyperbolic) {
        s[0] = std::sinh(x.coeff(0));
        c[0] = std::cosh(x.coeff(0));
    } else {
        s[0] = std::sin(x.coeff(0));
        c[0] = std::cos(x.coeff(0));
    }
    const double sign = hyperbolic ? 1.0 : -1.0;
    for (int k = 1; k < n; ++k) {
        Complex accs(0.0, 0.0), accc(0.0, 0.0);
        for (int j = 1; j <= k; ++j) {
            const Complex t = static_cast<double>(j) * x.coeff(j);
            accs += t * c[static_cast<std::size_t>(k - j)];
            accc += t * s[static_cast<std::size_t>(k - j)];
        }
        s[static_cast<std::size_t>(k)] = accs / static_cast<double>(k);
        c[static_cast<std::size_t>(k)] = sign * accc / static_cast<double>(k);
    }
    s_out = Jet(std::move(s), x.center());
    c_out = Jet(std::move(c), x.center());
}

}  // namespace

Jet sin(const Jet& x) {
    Jet s = x, c = x;
    pair_recurrence(x, false, s, c);
    return s;
}

Jet cos(const Jet& x) {
    Jet s = x, c = x;
    pair_recurrence(x, false, s, c);
    return c;
}

Jet tan(const Jet& x) {
    Jet s = x, c = x;
    pair_recurrence(x, false, s, c);
    return s / c;
}

Jet sinh(const Jet& x) {
    Jet s = x, c = x;
    pair_recurrence(x, true, s, c);
    return s;
}

Jet cosh(const Jet& x) {
    Jet s = x, c = x;
    pair_recurrence(x, true, s, c);
    return c;
}

Jet tanh(const Jet& x) {
    Jet s = x, c = x;
    pair_recurrence(x, true, s, c);
    return s / c;
}

Jet sinc(const Jet& x) {
    if (x.valuation() == x.order())  // identically zero argument
        return Jet::constant(Complex(1.0, 0.0), x.order(), x.center());
    return sin(x) / x;
}

Jet pow(const Jet& x, double exponent) {
    if (integer_valued(exponent)) {
        long long n = static_cast<long long>(exponent);
        if (n < 0) return Jet::constant(Complex(1.0, 0.0), x.order(), x.center()) / pow(x, static_cast<double>(-n));
        Jet acc = Jet::constant(Complex(1.0, 0.0), x.order(), x.center());
        Jet base = x;
        while (n > 0) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }
    if (x.coeff(0) == Complex(0.0, 0.0)) throw SqrtOfZeroSeriesError();
    return exp(log(x) * Complex(exponent, 0.0));
}

Jet jet_call(Func fn, const Jet& x) {
    switch (fn) {
        case Func::Exp: return exp(x);
        case Func::Log: return log(x);
        case Func::Sqrt: return sqrt(x);
        case Func::Sin: return sin(x);
        case Func::Cos: return cos(x);
        case Func::Tan: return tan(x);
        case Func::Sinh: return sinh(x);
        case Func::Cosh: return cosh(x);
        case Func::Tanh: return tanh(x);
        case Func::Sinc: return sinc(x);
    }
    throw std::logic_error("jet_call: bad function tag");
}

namespace {

struct JetEval {
    Complex center;
    int order;

    Jet eval(const Expr& e) const {
        return std::visit(overloaded{
            [&](const Expr::Constant& c) { return Jet::constant(c.value, order, center); },
            [&](const Expr::Variable&) { return Jet::variable(order, center); },
            [&](const Expr::Negate& n) { return -descend(*n.operand, "neg"); },
            [&](const Expr::Binary& b) { return eval_binary(b); },
            [&](const Expr::Call& c) -> Jet {
                Jet arg = descend(*c.arg, func_name(c.fn));
                try {
                    return jet_call(c.fn, arg);
                } catch (PoleError& err) {
                    prepend_path(err, func_name(c.fn));
                    throw;
                }
            },
        }, e.node());
    }

    Jet descend(const Expr& e, const char* label) const {
        try {
            return eval(e);
        } catch (PoleError& err) {
            prepend_path(err, label);
            throw;
        }
    }

    static void prepend_path(PoleError& err, const char* label) {
        err.path = err.path.empty() ? label : std::string(label) + "/" + err.path;
    }

    Jet eval_binary(const Expr::Binary& b) const {
        const char* label = nullptr;
        switch (b.op) {
            case BinaryOp::Add: label = "add"; break;
            case BinaryOp::Sub: label = "sub"; break;
            case BinaryOp::Mul: label = "mul"; break;
            case BinaryOp::Div: label = "div"; break;
            case BinaryOp::Pow: label = "pow"; break;
        }
        switch (b.op) {
            case BinaryOp::Add: return descend(*b.lhs, label) + descend(*b.rhs, label);
            case BinaryOp::Sub: return descend(*b.lhs, label) - descend(*b.rhs, label);
            case BinaryOp::Mul: return eval_mul(b, label);
            case BinaryOp::Div: {
                Jet l = descend(*b.lhs, label);
                Jet r = descend(*b.rhs, label);
                try {
                    return l / r;
                } catch (PoleError& err) {
                    prepend_path(err, label);
                    throw;
                }
            }
            case BinaryOp::Pow: {
                Jet base = descend(*b.lhs, label);
                Complex expo = eval_point(*b.rhs, center);
                try {
                    return pow(base, expo.real());
                } catch (PoleError& err) {
                    prepend_path(err, label);
                    throw;
                }
            }
        }
        throw std::logic_error("jet_of_expr: bad binary op");
    }

    // A product with a quotient factor whose denominator vanishes at the
    // center is regrouped as (other * numerator) / denominator so that the
    // removable pole cancels, e.g. z*(f(z)/z). The top `valuation` quotient
    // coefficients then carry truncation inaccuracy, as in plain division.
    Jet eval_mul(const Expr::Binary& b, const char* label) const {
        auto regrouped = [&](const Expr& other, const Expr::Binary& divnode) -> std::optional<Jet> {
            Jet den = descend(*divnode.rhs, label);
            if (den.valuation() == 0) return std::nullopt;
            Jet scaled = eval_mul_pair(other, *divnode.lhs, label);
            try {
                return scaled / den;
            } catch (PoleError& err) {
                prepend_path(err, label);
                throw;
            }
        };
        if (const auto* rd = std::get_if<Expr::Binary>(&b.rhs->node());
            rd && rd->op == BinaryOp::Div) {
            if (auto j = regrouped(*b.lhs, *rd)) return *j;
        }
        if (const auto* ld = std::get_if<Expr::Binary>(&b.lhs->node());
            ld && ld->op == BinaryOp::Div) {
            if (auto j = regrouped(*b.rhs, *ld)) return *j;
        }
        return descend(*b.lhs, label) * descend(*b.rhs, label);
    }

    Jet eval_mul_pair(const Expr& a, const Expr& c, const char* label) const {
        // Reuse the Mul regrouping for nested quotients.
        Expr::Binary synth{BinaryOp::Mul,
                           std::make_shared<Expr>(a.node()),
                           std::make_shared<Expr>(c.node())};
        return eval_mul(synth, label);
    }
};

}  // namespace

Jet jet_of_expr(const Expr& e, Complex center, int order) {
    if (order < 1) throw std::invalid_argument("jet order must be >= 1");
    JetEval ev{center, order};
    return ev.eval(e);
}

Jet jet_of_expr(const ExprPtr& e, Complex center, int order) {
    return jet_of_expr(*e, center, order);
}

}  // namespace hwroots
