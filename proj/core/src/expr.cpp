#include "hwroots/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "hwroots/errors.hpp"

namespace hwroots {

const char* func_name(Func f) {
    switch (f) {
        case Func::Exp: return "exp";
        case Func::Log: return "log";
        case Func::Sqrt: return "sqrt";
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Sinh: return "sinh";
        case Func::Cosh: return "cosh";
        case Func::Tanh: return "tanh";
        case Func::Sinc: return "sinc";
    }
    return "?";
}

ExprPtr Expr::constant(Complex value) { return std::make_shared<Expr>(Constant{value}); }
ExprPtr Expr::variable() { return std::make_shared<Expr>(Variable{}); }
ExprPtr Expr::negate(ExprPtr operand) { return std::make_shared<Expr>(Negate{std::move(operand)}); }
ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<Expr>(Binary{op, std::move(lhs), std::move(rhs)});
}
ExprPtr Expr::call(Func fn, ExprPtr arg) { return std::make_shared<Expr>(Call{fn, std::move(arg)}); }

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------- parsing

struct Token {
    enum Kind { Number, Imag, Ident, Op, LParen, RParen, End } kind;
    double value = 0.0;      // Number / Imag
    std::string text;        // Ident / Op
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        Token t;
        t.pos = i_;
        if (i_ >= s_.size()) {
            t.kind = Token::End;
            return t;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i_ + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
            return lex_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            t.kind = Token::Ident;
            t.text = s_.substr(start, i_ - start);
            return t;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                t.kind = Token::Op;
                t.text = std::string(1, c);
                ++i_;
                return t;
            case '(': t.kind = Token::LParen; ++i_; return t;
            case ')': t.kind = Token::RParen; ++i_; return t;
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", i_);
        }
    }

private:
    Token lex_number() {
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ < s_.size() && s_[i_] == '.') {
            ++i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        }
        if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
            std::size_t mark = i_;
            ++i_;
            if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
            if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            } else {
                i_ = mark;  // the 'e' was not an exponent, leave it for the ident lexer
            }
        }
        Token t;
        t.pos = start;
        t.value = std::strtod(s_.c_str() + start, nullptr);
        // A literal immediately followed by a lone 'i' is imaginary: 3i, 2.5i.
        if (i_ < s_.size() && s_[i_] == 'i' &&
            !(i_ + 1 < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_ + 1])) || s_[i_ + 1] == '_'))) {
            ++i_;
            t.kind = Token::Imag;
        } else {
            t.kind = Token::Number;
        }
        return t;
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

constexpr int kMaxParseDepth = 200;

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) { advance(); }

    ExprPtr parse_all() {
        ExprPtr e = parse_expr();
        if (cur_.kind != Token::End)
            throw SyntaxError("unexpected trailing input", cur_.pos);
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    bool is_op(const char* s) const { return cur_.kind == Token::Op && cur_.text == s; }

    void enter() {
        if (++depth_ > kMaxParseDepth)
            throw SyntaxError("expression nested too deeply", cur_.pos);
    }
    void leave() { --depth_; }

    // expr := term (('+'|'-') term)*
    ExprPtr parse_expr() {
        enter();
        ExprPtr e = parse_term();
        while (is_op("+") || is_op("-")) {
            BinaryOp op = is_op("+") ? BinaryOp::Add : BinaryOp::Sub;
            advance();
            e = Expr::binary(op, e, parse_term());
        }
        leave();
        return e;
    }

    // term := factor (('*'|'/') factor)*
    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (is_op("*") || is_op("/")) {
            BinaryOp op = is_op("*") ? BinaryOp::Mul : BinaryOp::Div;
            advance();
            e = Expr::binary(op, e, parse_factor());
        }
        return e;
    }

    // factor := '-' factor | power.  A negated literal folds into the
    // constant so that printed constants like (-2) round-trip structurally.
    ExprPtr parse_factor() {
        enter();
        if (is_op("-")) {
            advance();
            ExprPtr inner = parse_factor();
            leave();
            if (auto* c = std::get_if<Expr::Constant>(&inner->node()))
                return Expr::constant(-c->value);
            return Expr::negate(inner);
        }
        ExprPtr e = parse_power();
        leave();
        return e;
    }

    // power := atom ('^' factor)?   (right-assoc via factor recursion)
    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (is_op("^")) {
            std::size_t op_pos = cur_.pos;
            advance();
            ExprPtr expo = parse_factor();
            validate_exponent(*expo, op_pos);
            return Expr::binary(BinaryOp::Pow, base, expo);
        }
        return base;
    }

    ExprPtr parse_atom() {
        switch (cur_.kind) {
            case Token::Number: {
                ExprPtr e = Expr::constant(Complex(cur_.value, 0.0));
                advance();
                return e;
            }
            case Token::Imag: {
                ExprPtr e = Expr::constant(Complex(0.0, cur_.value));
                advance();
                return e;
            }
            case Token::LParen: {
                advance();
                ExprPtr e = parse_expr();
                if (cur_.kind != Token::RParen)
                    throw SyntaxError("expected ')'", cur_.pos);
                advance();
                return e;
            }
            case Token::Ident:
                return parse_ident();
            case Token::Op:
                throw SyntaxError("unexpected operator '" + cur_.text + "'", cur_.pos);
            case Token::RParen:
                throw SyntaxError("unexpected ')'", cur_.pos);
            case Token::End:
                throw SyntaxError("unexpected end of input", cur_.pos);
        }
        throw SyntaxError("unexpected token", cur_.pos);
    }

    ExprPtr parse_ident() {
        const std::string name = cur_.text;
        std::size_t pos = cur_.pos;
        advance();
        if (name == "z") return Expr::variable();
        if (name == "i") return Expr::constant(Complex(0.0, 1.0));
        static const std::pair<const char*, Func> table[] = {
            {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt},
            {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
            {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"tanh", Func::Tanh},
            {"sinc", Func::Sinc},
        };
        for (const auto& [fname, fn] : table) {
            if (name == fname) {
                if (cur_.kind != Token::LParen)
                    throw SyntaxError("expected '(' after '" + name + "'", cur_.pos);
                advance();
                ExprPtr arg = parse_expr();
                if (cur_.kind != Token::RParen)
                    throw SyntaxError("expected ')'", cur_.pos);
                advance();
                return Expr::call(fn, arg);
            }
        }
        (void)pos;
        throw UnknownFunctionError(name);
    }

    // Pow exponents are restricted to constant integer/rational values.
    void validate_exponent(const Expr& expo, std::size_t op_pos) {
        if (contains_variable(expo))
            throw SyntaxError("'^' exponent must be a constant", op_pos);
        Complex v;
        try {
            v = eval_point(expo, Complex(0.0, 0.0));
        } catch (const EvalDomainError&) {
            throw SyntaxError("'^' exponent is not a finite constant", op_pos);
        }
        if (v.imag() != 0.0)
            throw SyntaxError("'^' exponent must be real", op_pos);
    }

    Lexer lex_;
    Token cur_;
    int depth_ = 0;
};

// --------------------------------------------------------------- printing

int precedence(const Expr& e) {
    return std::visit(overloaded{
        [](const Expr::Constant& c) {
            // Negative and full-complex constants print parenthesized.
            if (c.value.real() < 0.0 || (c.value.real() == 0.0 && c.value.imag() < 0.0)) return 0;
            if (c.value.real() != 0.0 && c.value.imag() != 0.0) return 0;
            return 5;
        },
        [](const Expr::Variable&) { return 5; },
        [](const Expr::Call&) { return 5; },
        [](const Expr::Negate&) { return 3; },
        [](const Expr::Binary& b) {
            switch (b.op) {
                case BinaryOp::Add: case BinaryOp::Sub: return 1;
                case BinaryOp::Mul: case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
            return 1;
        },
    }, e.node());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string print_constant(Complex v) {
    if (v.imag() == 0.0) return format_double(v.real());
    if (v.real() == 0.0) {
        if (v.imag() == 1.0) return "i";
        return format_double(v.imag()) + "i";
    }
    std::string im = v.imag() < 0.0 ? " - " + format_double(-v.imag()) : " + " + format_double(v.imag());
    return format_double(v.real()) + im + "i";
}

void print_expr(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
    bool parens = precedence(child) < min_prec;
    if (parens) out += '(';
    print_expr(child, out);
    if (parens) out += ')';
}

void print_expr(const Expr& e, std::string& out) {
    std::visit(overloaded{
        [&](const Expr::Constant& c) { out += print_constant(c.value); },
        [&](const Expr::Variable&) { out += 'z'; },
        [&](const Expr::Negate& n) {
            out += '-';
            print_child(*n.operand, 3, out);
        },
        [&](const Expr::Binary& b) {
            switch (b.op) {
                // Left-assoc ops parenthesize a same-precedence rhs so the
                // reparse keeps the tree shape.
                case BinaryOp::Add:
                    print_child(*b.lhs, 1, out); out += " + "; print_child(*b.rhs, 2, out); break;
                case BinaryOp::Sub:
                    print_child(*b.lhs, 1, out); out += " - "; print_child(*b.rhs, 2, out); break;
                case BinaryOp::Mul:
                    print_child(*b.lhs, 2, out); out += '*'; print_child(*b.rhs, 3, out); break;
                case BinaryOp::Div:
                    print_child(*b.lhs, 2, out); out += '/'; print_child(*b.rhs, 3, out); break;
                case BinaryOp::Pow:
                    // ^ is right-assoc: the base needs parens even at equal precedence.
                    print_child(*b.lhs, 5, out); out += '^'; print_child(*b.rhs, 4, out); break;
            }
        },
        [&](const Expr::Call& c) {
            out += func_name(c.fn);
            out += '(';
            print_expr(*c.arg, out);
            out += ')';
        },
    }, e.node());
}

// ------------------------------------------------------------- evaluation

bool integer_valued(double v) {
    return std::isfinite(v) && v == std::floor(v) && std::abs(v) <= 1e9;
}

Complex integer_pow(Complex base, long long n) {
    if (n < 0) {
        if (base == Complex(0.0, 0.0)) throw EvalDomainError("0 raised to a negative power");
        return 1.0 / integer_pow(base, -n);
    }
    Complex acc(1.0, 0.0);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_expr(e, out);
    return out;
}

std::string to_string(const ExprPtr& e) { return to_string(*e); }

ExprPtr parse(const std::string& text) { return Parser(text).parse_all(); }

Complex eval_point(const Expr& e, Complex z0) {
    return std::visit(overloaded{
        [](const Expr::Constant& c) { return c.value; },
        [&](const Expr::Variable&) { return z0; },
        [&](const Expr::Negate& n) { return -eval_point(*n.operand, z0); },
        [&](const Expr::Binary& b) -> Complex {
            if (b.op == BinaryOp::Pow) {
                Complex base = eval_point(*b.lhs, z0);
                Complex expo = eval_point(*b.rhs, z0);
                if (integer_valued(expo.real()) && expo.imag() == 0.0)
                    return integer_pow(base, static_cast<long long>(expo.real()));
                if (base == Complex(0.0, 0.0)) {
                    if (expo.real() > 0.0) return Complex(0.0, 0.0);
                    throw EvalDomainError("0 raised to a non-positive non-integer power");
                }
                return std::pow(base, expo);
            }
            Complex l = eval_point(*b.lhs, z0);
            Complex r = eval_point(*b.rhs, z0);
            switch (b.op) {
                case BinaryOp::Add: return l + r;
                case BinaryOp::Sub: return l - r;
                case BinaryOp::Mul: return l * r;
                case BinaryOp::Div:
                    if (r == Complex(0.0, 0.0)) throw EvalDomainError("division by zero");
                    return l / r;
                default: return l;  // unreachable
            }
        },
        [&](const Expr::Call& c) -> Complex {
            Complex a = eval_point(*c.arg, z0);
            switch (c.fn) {
                case Func::Exp: return std::exp(a);
                case Func::Log:
                    if (a == Complex(0.0, 0.0)) throw EvalDomainError("log(0)");
                    return std::log(a);
                case Func::Sqrt: return std::sqrt(a);
                case Func::Sin: return std::sin(a);
                case Func::Cos: return std::cos(a);
                case Func::Tan: return std::tan(a);
                case Func::Sinh: return std::sinh(a);
                case Func::Cosh: return std::cosh(a);
                case Func::Tanh: return std::tanh(a);
                case Func::Sinc:
                    if (a == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
                    return std::sin(a) / a;
            }
            return a;  // unreachable
        },
    }, e.node());
}

Complex eval_point(const ExprPtr& e, Complex z0) { return eval_point(*e, z0); }

ExprPtr simplify_exp_log(const ExprPtr& e) {
    return std::visit(overloaded{
        [&](const Expr::Constant&) { return e; },
        [&](const Expr::Variable&) { return e; },
        [&](const Expr::Negate& n) -> ExprPtr {
            ExprPtr op = simplify_exp_log(n.operand);
            return op == n.operand ? e : Expr::negate(op);
        },
        [&](const Expr::Binary& b) -> ExprPtr {
            ExprPtr l = simplify_exp_log(b.lhs);
            ExprPtr r = simplify_exp_log(b.rhs);
            return (l == b.lhs && r == b.rhs) ? e : Expr::binary(b.op, l, r);
        },
        [&](const Expr::Call& c) -> ExprPtr {
            ExprPtr arg = simplify_exp_log(c.arg);
            if (c.fn == Func::Exp) {
                if (auto* inner = std::get_if<Expr::Call>(&arg->node());
                    inner && inner->fn == Func::Log) {
                    return inner->arg;
                }
            }
            return arg == c.arg ? e : Expr::call(c.fn, arg);
        },
    }, e->node());
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node().index() != b.node().index()) return false;
    return std::visit(overloaded{
        [&](const Expr::Constant& c) {
            const auto& d = std::get<Expr::Constant>(b.node());
            return c.value.real() == d.value.real() && c.value.imag() == d.value.imag();
        },
        [&](const Expr::Variable&) { return true; },
        [&](const Expr::Negate& n) {
            return structurally_equal(*n.operand, *std::get<Expr::Negate>(b.node()).operand);
        },
        [&](const Expr::Binary& x) {
            const auto& y = std::get<Expr::Binary>(b.node());
            return x.op == y.op && structurally_equal(*x.lhs, *y.lhs) &&
                   structurally_equal(*x.rhs, *y.rhs);
        },
        [&](const Expr::Call& x) {
            const auto& y = std::get<Expr::Call>(b.node());
            return x.fn == y.fn && structurally_equal(*x.arg, *y.arg);
        },
    }, a.node());
}

bool contains_variable(const Expr& e) {
    return std::visit(overloaded{
        [](const Expr::Constant&) { return false; },
        [](const Expr::Variable&) { return true; },
        [](const Expr::Negate& n) { return contains_variable(*n.operand); },
        [](const Expr::Binary& b) {
            return contains_variable(*b.lhs) || contains_variable(*b.rhs);
        },
        [](const Expr::Call& c) { return contains_variable(*c.arg); },
    }, e.node());
}

std::optional<int> polynomial_degree(const Expr& e) {
    using R = std::optional<int>;
    return std::visit(overloaded{
        [](const Expr::Constant&) -> R { return 0; },
        [](const Expr::Variable&) -> R { return 1; },
        [](const Expr::Negate& n) -> R { return polynomial_degree(*n.operand); },
        [](const Expr::Binary& b) -> R {
            if (b.op == BinaryOp::Pow) {
                R base = polynomial_degree(*b.lhs);
                if (!base) return std::nullopt;
                Complex v = eval_point(*b.rhs, Complex(0.0, 0.0));
                if (v.imag() != 0.0 || !integer_valued(v.real()) || v.real() < 0.0)
                    return std::nullopt;
                return *base * static_cast<int>(v.real());
            }
            R l = polynomial_degree(*b.lhs);
            R r = polynomial_degree(*b.rhs);
            if (!l || !r) return std::nullopt;
            switch (b.op) {
                case BinaryOp::Add: case BinaryOp::Sub: return std::max(*l, *r);
                case BinaryOp::Mul: return *l + *r;
                case BinaryOp::Div: return *r == 0 ? l : R{};
                default: return std::nullopt;
            }
        },
        [](const Expr::Call&) -> R { return std::nullopt; },
    }, e.node());
}

}  // namespace hwroots
