#ifndef HWROOTS_EXPR_HPP
#define HWROOTS_EXPR_HPP

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace hwroots {

using Complex = std::complex<double>;

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

enum class Func { Exp, Log, Sqrt, Sin, Cos, Tan, Sinh, Cosh, Tanh, Sinc };

const char* func_name(Func f);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable AST of a complex analytic expression in one free variable `z`.
// Nodes are shared freely; all operations on Expr are pure.
class Expr {
public:
    struct Constant { Complex value; };
    struct Variable {};
    struct Negate { ExprPtr operand; };
    struct Binary { BinaryOp op; ExprPtr lhs; ExprPtr rhs; };
    struct Call { Func fn; ExprPtr arg; };
    using Node = std::variant<Constant, Variable, Negate, Binary, Call>;

    explicit Expr(Node node) : node_(std::move(node)) {}

    const Node& node() const { return node_; }

    static ExprPtr constant(Complex value);
    static ExprPtr variable();
    static ExprPtr negate(ExprPtr operand);
    static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr call(Func fn, ExprPtr arg);

    static ExprPtr add(ExprPtr l, ExprPtr r) { return binary(BinaryOp::Add, std::move(l), std::move(r)); }
    static ExprPtr sub(ExprPtr l, ExprPtr r) { return binary(BinaryOp::Sub, std::move(l), std::move(r)); }
    static ExprPtr mul(ExprPtr l, ExprPtr r) { return binary(BinaryOp::Mul, std::move(l), std::move(r)); }
    static ExprPtr div(ExprPtr l, ExprPtr r) { return binary(BinaryOp::Div, std::move(l), std::move(r)); }

private:
    Node node_;
};

// Parses an infix expression over +,-,*,/,^, parentheses, numeric literals
// (reals like 2, 0.5, 1e-20; imaginary like 3i or i), the variable z, and
// the supported function names. Precedence: ^ (right-assoc) > unary minus
// > *,/ > +,-. Pow exponents must be constant (integer or rational).
// Throws SyntaxError / UnknownFunctionError.
ExprPtr parse(const std::string& text);

// Renders an expression back to parseable text. parse(to_string(e)) is
// structurally equal to e for every tree the parser can produce.
std::string to_string(const Expr& e);
std::string to_string(const ExprPtr& e);

// Evaluates at a point with principal branches of log/sqrt/pow;
// sinc(0) == 1. Throws EvalDomainError on division by zero or log(0).
Complex eval_point(const Expr& e, Complex z0);
Complex eval_point(const ExprPtr& e, Complex z0);

// Rewrites every exp(log(u)) subtree to u, to fixpoint. Nothing else is
// rewritten.
ExprPtr simplify_exp_log(const ExprPtr& e);

// Structural equality (same tree shape, bit-equal constants).
bool structurally_equal(const Expr& a, const Expr& b);

// True if the tree references the free variable z.
bool contains_variable(const Expr& e);

// Degree when the expression is a polynomial in z (constants, z, +, -, *,
// constant divisors, non-negative integer powers); std::nullopt otherwise.
// This is the structural degree; leading-coefficient cancellation is not
// detected.
std::optional<int> polynomial_degree(const Expr& e);

}  // namespace hwroots

#endif
