#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace refl::expr {

/// Coefficient expressions in the single variable `t`.
///
/// Grammar (EBNF, identifiers are case-sensitive and lowercase):
///
///     expr    = term { ("+" | "-") term } ;
///     term    = unary { ("*" | "/") unary } ;
///     unary   = "-" unary | power ;
///     power   = primary [ "^" unary ] ;            (* right-associative *)
///     primary = number | "t" | "pi" | "e"
///             | func "(" expr ")" | "(" expr ")" ;
///     func    = "sin" | "cos" | "tan" | "sinh" | "cosh" | "tanh"
///             | "exp" | "ln" | "sqrt" | "abs" ;
///     number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
///             | "." digits [ exponent ] ;
///
/// `^` binds tighter than unary minus, so `-t^2` is `-(t^2)`.

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt, Abs };
enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class NamedConstant { Pi, E };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number { double value; };
struct Variable {};
struct Constant { NamedConstant which; };
struct Negate { NodePtr operand; };
struct Binary { BinOp op; NodePtr lhs; NodePtr rhs; };
struct Apply { Func func; NodePtr arg; };

struct Node {
    std::variant<Number, Variable, Constant, Negate, Binary, Apply> data;
};

NodePtr make_number(double v);
NodePtr make_variable();
NodePtr make_constant(NamedConstant c);
NodePtr make_negate(NodePtr operand);
NodePtr make_binary(BinOp op, NodePtr lhs, NodePtr rhs);
NodePtr make_apply(Func f, NodePtr arg);

/// Immutable parsed expression. Cheap to copy; safe to share across threads.
class Expr {
public:
    explicit Expr(NodePtr root);

    const Node& root() const noexcept { return *root_; }
    const NodePtr& root_ptr() const noexcept { return root_; }

    double operator()(double t) const;

private:
    NodePtr root_;
};

/// Throws ParseError (with byte offset) or UnknownIdentifierError.
Expr parse(std::string_view text);

/// IEEE double evaluation; throws DomainError for ln(x<=0), sqrt(x<0) and x/0.
double eval(const Expr& e, double t);
double eval(const Node& n, double t);

/// Canonical fully-parenthesised form; parse(print(x)) reproduces the tree of x.
std::string print(const Expr& e);

bool structurally_equal(const Node& lhs, const Node& rhs);

std::string_view func_name(Func f) noexcept;

}  // namespace refl::expr
