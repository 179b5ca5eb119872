#include "refl/expr.hpp"

#include "refl/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <utility>

namespace refl::expr {

NodePtr make_number(double v) { return std::make_shared<const Node>(Node{Number{v}}); }
NodePtr make_variable() { return std::make_shared<const Node>(Node{Variable{}}); }
NodePtr make_constant(NamedConstant c) { return std::make_shared<const Node>(Node{Constant{c}}); }
NodePtr make_negate(NodePtr operand) {
    return std::make_shared<const Node>(Node{Negate{std::move(operand)}});
}
NodePtr make_binary(BinOp op, NodePtr lhs, NodePtr rhs) {
    return std::make_shared<const Node>(Node{Binary{op, std::move(lhs), std::move(rhs)}});
}
NodePtr make_apply(Func f, NodePtr arg) {
    return std::make_shared<const Node>(Node{Apply{f, std::move(arg)}});
}

Expr::Expr(NodePtr root) : root_(std::move(root)) {}

double Expr::operator()(double t) const { return eval(*root_, t); }

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 10> kFunctions{{
    {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan}, {"sinh", Func::Sinh},
    {"cosh", Func::Cosh}, {"tanh", Func::Tanh}, {"exp", Func::Exp}, {"ln", Func::Ln},
    {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
}};

std::optional<Func> lookup_function(std::string_view name) {
    for (const auto& [n, f] : kFunctions) {
        if (n == name) return f;
    }
    return std::nullopt;
}

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Tok::End, start, {}};
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            return {Tok::Ident, start, src_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (c) {
            case '+': return {Tok::Plus, start, src_.substr(start, 1)};
            case '-': return {Tok::Minus, start, src_.substr(start, 1)};
            case '*': return {Tok::Star, start, src_.substr(start, 1)};
            case '/': return {Tok::Slash, start, src_.substr(start, 1)};
            case '^': return {Tok::Caret, start, src_.substr(start, 1)};
            case '(': return {Tok::LParen, start, src_.substr(start, 1)};
            case ')': return {Tok::RParen, start, src_.substr(start, 1)};
            default: break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    bool digit_at(std::size_t i) const {
        return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]));
    }

    Token lex_number() {
        const std::size_t start = pos_;
        bool any_digits = false;
        while (digit_at(pos_)) { ++pos_; any_digits = true; }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (digit_at(pos_)) { ++pos_; any_digits = true; }
        }
        if (!any_digits) throw ParseError("malformed number", start);
        // An exponent only when digits follow; otherwise `e` is left for the next token
        // and the parser reports the juxtaposition.
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (digit_at(p)) {
                pos_ = p;
                while (digit_at(pos_)) ++pos_;
            }
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        // from_chars rejects a leading '.', so parse through a small buffer when needed.
        std::string buf = text.front() == '.' ? "0" + std::string(text) : std::string(text);
        const auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), value);
        if (ec != std::errc{} || ptr != buf.data() + buf.size() || !std::isfinite(value))
            throw ParseError("number out of range", start);
        return {Tok::Number, start, text, value};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { advance(); }

    NodePtr parse_all() {
        NodePtr root = parse_binary(0);
        if (cur_.kind != Tok::End) throw ParseError("unexpected token '" + std::string(cur_.text) + "'", cur_.offset);
        return root;
    }

private:
    static int precedence(Tok k) {
        switch (k) {
            case Tok::Plus:
            case Tok::Minus: return 1;
            case Tok::Star:
            case Tok::Slash: return 2;
            default: return -1;
        }
    }

    static BinOp to_op(Tok k) {
        switch (k) {
            case Tok::Plus: return BinOp::Add;
            case Tok::Minus: return BinOp::Sub;
            case Tok::Star: return BinOp::Mul;
            default: return BinOp::Div;
        }
    }

    void advance() { cur_ = lex_.next(); }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k) {
            const std::string got = cur_.kind == Tok::End ? "end of input" : "'" + std::string(cur_.text) + "'";
            throw ParseError(std::string("expected ") + what + ", found " + got, cur_.offset);
        }
        advance();
    }

    // Precedence climbing over the left-associative + - * / levels.
    NodePtr parse_binary(int min_prec) {
        NodePtr lhs = parse_unary();
        for (;;) {
            const int prec = precedence(cur_.kind);
            if (prec < 0 || prec < min_prec) return lhs;
            const BinOp op = to_op(cur_.kind);
            advance();
            NodePtr rhs = parse_binary(prec + 1);
            lhs = make_binary(op, std::move(lhs), std::move(rhs));
        }
    }

    NodePtr parse_unary() {
        if (cur_.kind == Tok::Minus) {
            advance();
            return make_negate(parse_unary());
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (cur_.kind == Tok::Caret) {
            advance();
            return make_binary(BinOp::Pow, std::move(base), parse_unary());
        }
        return base;
    }

    NodePtr parse_primary() {
        const Token tok = cur_;
        switch (tok.kind) {
            case Tok::Number:
                advance();
                return make_number(tok.number);
            case Tok::LParen: {
                advance();
                NodePtr inner = parse_binary(0);
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Ident: {
                advance();
                if (tok.text == "t") return make_variable();
                if (tok.text == "pi") return make_constant(NamedConstant::Pi);
                if (tok.text == "e") return make_constant(NamedConstant::E);
                if (auto f = lookup_function(tok.text)) {
                    expect(Tok::LParen, "'(' after function name");
                    NodePtr arg = parse_binary(0);
                    expect(Tok::RParen, "')'");
                    return make_apply(*f, std::move(arg));
                }
                throw UnknownIdentifierError(std::string(tok.text), tok.offset);
            }
            case Tok::End: throw ParseError("unexpected end of input", tok.offset);
            default: throw ParseError("unexpected token '" + std::string(tok.text) + "'", tok.offset);
        }
    }

    Lexer lex_;
    Token cur_{Tok::End, 0, {}};
};

double apply_func(Func f, double x) {
    switch (f) {
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Tan: return std::tan(x);
        case Func::Sinh: return std::sinh(x);
        case Func::Cosh: return std::cosh(x);
        case Func::Tanh: return std::tanh(x);
        case Func::Exp: return std::exp(x);
        case Func::Ln:
            if (!(x > 0.0)) throw DomainError("ln of non-positive value " + std::to_string(x));
            return std::log(x);
        case Func::Sqrt:
            if (x < 0.0) throw DomainError("sqrt of negative value " + std::to_string(x));
            return std::sqrt(x);
        case Func::Abs: return std::fabs(x);
    }
    return 0.0;
}

template <class... Ts>
struct Overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const char* op_symbol(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Pow: return "^";
    }
    return "?";
}

void print_into(const Node& n, std::string& out) {
    std::visit(Overloaded{
                   [&](const Number& v) {
                       char buf[32];
                       std::snprintf(buf, sizeof buf, "%.17g", v.value);
                       out += buf;
                   },
                   [&](const Variable&) { out += 't'; },
                   [&](const Constant& c) { out += c.which == NamedConstant::Pi ? "pi" : "e"; },
                   [&](const Negate& v) {
                       out += "(-";
                       print_into(*v.operand, out);
                       out += ')';
                   },
                   [&](const Binary& v) {
                       out += '(';
                       print_into(*v.lhs, out);
                       out += op_symbol(v.op);
                       print_into(*v.rhs, out);
                       out += ')';
                   },
                   [&](const Apply& v) {
                       out += func_name(v.func);
                       out += '(';
                       print_into(*v.arg, out);
                       out += ')';
                   },
               },
               n.data);
}

}  // namespace

std::string_view func_name(Func f) noexcept {
    for (const auto& [n, g] : kFunctions) {
        if (g == f) return n;
    }
    return "?";
}

Expr parse(std::string_view text) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
        throw ParseError("empty expression", 0);
    return Expr(Parser(text).parse_all());
}

double eval(const Node& n, double t) {
    return std::visit(
        Overloaded{
            [](const Number& v) { return v.value; },
            [t](const Variable&) { return t; },
            [](const Constant& c) {
                return c.which == NamedConstant::Pi ? std::numbers::pi : std::numbers::e;
            },
            [t](const Negate& v) { return -eval(*v.operand, t); },
            [t](const Binary& v) {
                const double l = eval(*v.lhs, t);
                const double r = eval(*v.rhs, t);
                switch (v.op) {
                    case BinOp::Add: return l + r;
                    case BinOp::Sub: return l - r;
                    case BinOp::Mul: return l * r;
                    case BinOp::Div:
                        if (r == 0.0) throw DomainError("division by zero");
                        return l / r;
                    case BinOp::Pow: {
                        const double p = std::pow(l, r);
                        if (std::isnan(p) && !std::isnan(l) && !std::isnan(r))
                            throw DomainError("power of negative base with non-integer exponent");
                        return p;
                    }
                }
                return 0.0;
            },
            [t](const Apply& v) { return apply_func(v.func, eval(*v.arg, t)); },
        },
        n.data);
}

double eval(const Expr& e, double t) { return eval(e.root(), t); }

std::string print(const Expr& e) {
    std::string out;
    print_into(e.root(), out);
    return out;
}

bool structurally_equal(const Node& lhs, const Node& rhs) {
    if (lhs.data.index() != rhs.data.index()) return false;
    return std::visit(
        Overloaded{
            [&](const Number& a) { return a.value == std::get<Number>(rhs.data).value; },
            [&](const Variable&) { return true; },
            [&](const Constant& a) { return a.which == std::get<Constant>(rhs.data).which; },
            [&](const Negate& a) {
                return structurally_equal(*a.operand, *std::get<Negate>(rhs.data).operand);
            },
            [&](const Binary& a) {
                const auto& b = std::get<Binary>(rhs.data);
                return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) &&
                       structurally_equal(*a.rhs, *b.rhs);
            },
            [&](const Apply& a) {
                const auto& b = std::get<Apply>(rhs.data);
                return a.func == b.func && structurally_equal(*a.arg, *b.arg);
            },
        },
        lhs.data);
}

}  // namespace refl::expr
