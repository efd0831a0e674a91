#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "hmc/cjet.hpp"

namespace hmc {

/// Parse failure carrying the byte offset of the offending character.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " at byte " + std::to_string(off)), offset(off) {}
};

/// AST for the holomorphic expression language used to specify G and h.
///
/// Grammar (highest binding last):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := atom ('^' unary)?            (right associative)
///   atom    := number ['i'] | 'z' | 'i' | 'pi'
///            | ('exp'|'log'|'sqrt'|'sin'|'cos') '(' sum ')'
///            | '(' sum ')'
struct Expr {
    enum class Op {
        literal,   // value
        var_z,
        const_i,
        const_pi,
        add, sub, mul, div, pow,   // lhs, rhs
        neg,                       // lhs
        exp, log, sqrt, sin, cos,  // lhs
    };

    Op op = Op::literal;
    Complex value{};
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Parse `source` into an AST. Throws ParseError (with byte offset) on syntax
/// errors and unknown identifiers.
ExprPtr parse_expr(std::string_view source);

/// Render an AST back to source. parse_expr(print_expr(e)) is structurally
/// identical to e.
std::string print_expr(const Expr& e);

/// Structural equality (literal payloads compared exactly).
bool expr_equal(const Expr& a, const Expr& b);

/// Evaluate with order-3 jet arithmetic at z. Throws EvalError at poles and
/// branch points. Principal branches throughout.
ComplexJet eval_jet(const Expr& e, Complex z);

/// Value-only convenience wrapper.
Complex eval_value(const Expr& e, Complex z);

}  // namespace hmc
