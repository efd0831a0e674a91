#include <doctest.h>

#include <random>

#include "hmc/expr.hpp"
#include "hmc/rng.hpp"

using namespace hmc;

namespace {

ExprPtr random_ast(std::mt19937_64& gen, int depth) {
    auto e = std::make_shared<Expr>();
    const auto pick = [&](int n) { return static_cast<int>(gen() % n); };
    if (depth <= 0) {
        switch (pick(4)) {
            case 0: e->op = Expr::Op::var_z; break;
            case 1: e->op = Expr::Op::const_i; break;
            case 2: e->op = Expr::Op::const_pi; break;
            default:
                e->op = Expr::Op::literal;
                // Parsed literals are pure real or pure imaginary and never
                // negative (a leading '-' parses as a neg node).
                if (pick(2)) e->value = Complex(rng_uniform(gen, 0.0, 3.0), 0.0);
                else e->value = Complex(0.0, rng_uniform(gen, 0.0, 3.0));
        }
        return e;
    }
    switch (pick(11)) {
        case 0: e->op = Expr::Op::add; break;
        case 1: e->op = Expr::Op::sub; break;
        case 2: e->op = Expr::Op::mul; break;
        case 3: e->op = Expr::Op::div; break;
        case 4: e->op = Expr::Op::pow; break;
        case 5: e->op = Expr::Op::neg; break;
        case 6: e->op = Expr::Op::exp; break;
        case 7: e->op = Expr::Op::log; break;
        case 8: e->op = Expr::Op::sqrt; break;
        case 9: e->op = Expr::Op::sin; break;
        default: e->op = Expr::Op::cos; break;
    }
    e->lhs = random_ast(gen, depth - 1);
    if (e->op == Expr::Op::add || e->op == Expr::Op::sub || e->op == Expr::Op::mul ||
        e->op == Expr::Op::div || e->op == Expr::Op::pow)
        e->rhs = random_ast(gen, depth - 1);
    return e;
}

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("grammar shapes") {
    // z + 1/z parses as Add(z, Div(1, z)).
    {
        const auto e = parse_expr("z + 1/z");
        REQUIRE(e->op == Expr::Op::add);
        CHECK(e->lhs->op == Expr::Op::var_z);
        REQUIRE(e->rhs->op == Expr::Op::div);
        CHECK(e->rhs->lhs->op == Expr::Op::literal);
        CHECK(e->rhs->lhs->value == Complex(1.0, 0.0));
        CHECK(e->rhs->rhs->op == Expr::Op::var_z);
    }
    // exp((0+4i)*z) keeps the imaginary literal.
    {
        const auto e = parse_expr("exp((0+4i)*z)");
        REQUIRE(e->op == Expr::Op::exp);
        REQUIRE(e->lhs->op == Expr::Op::mul);
        const auto& sum = *e->lhs->lhs;
        REQUIRE(sum.op == Expr::Op::add);
        CHECK(sum.rhs->value == Complex(0.0, 4.0));
        CHECK(e->lhs->rhs->op == Expr::Op::var_z);
    }
    // z^0.5 is Pow(z, 0.5).
    {
        const auto e = parse_expr("z^0.5");
        REQUIRE(e->op == Expr::Op::pow);
        CHECK(e->lhs->op == Expr::Op::var_z);
        CHECK(e->rhs->value == Complex(0.5, 0.0));
    }
}

TEST_CASE("precedence and associativity") {
    // ^ binds tighter than unary minus: -z^2 = -(z^2).
    CHECK(eval_value(*parse_expr("-z^2"), Complex(2.0, 0.0)) == Complex(-4.0, 0.0));
    // Right associativity: 2^z^2 = 2^(z^2) = 2^9 at z=3.
    CHECK(std::abs(eval_value(*parse_expr("2^z^2"), Complex(3.0, 0.0)) - 512.0) < 1e-9);
    // Left associativity of subtraction and division.
    CHECK(eval_value(*parse_expr("8-4-2"), 0.0) == Complex(2.0, 0.0));
    CHECK(eval_value(*parse_expr("8/4/2"), 0.0) == Complex(1.0, 0.0));
    // Negative exponents parse.
    CHECK(std::abs(eval_value(*parse_expr("z^-2"), Complex(2.0, 0.0)) - 0.25) < 1e-15);
    // Named constants.
    CHECK(std::abs(eval_value(*parse_expr("exp(i*pi)"), 0.0) + 1.0) < 1e-15);
}

TEST_CASE("errors carry byte offsets") {
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    try {
        parse_expr("z + qux(z)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
    try {
        parse_expr("z + ");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
    CHECK_THROWS_AS(parse_expr("(z"), ParseError);
    CHECK_THROWS_AS(parse_expr("z)"), ParseError);
    CHECK_THROWS_AS(parse_expr("exp z"), ParseError);
}

TEST_CASE("print round-trips structurally") {
    std::mt19937_64 gen(2024);
    int checked = 0;
    for (int rep = 0; rep < 300; ++rep) {
        const ExprPtr ast = random_ast(gen, 1 + static_cast<int>(gen() % 3));
        const std::string text = print_expr(*ast);
        CAPTURE(text);
        const ExprPtr back = parse_expr(text);
        CHECK(expr_equal(*ast, *back));
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("print round-trips the gallery sources") {
    for (const char* src : {"z", "z+1/z", "exp(4*z)", "z^2", "z^0.5",
                            "exp((2.8284271247461903+0i)*z)", "-(z+1)^2/(1-z)"}) {
        const ExprPtr a = parse_expr(src);
        const ExprPtr b = parse_expr(print_expr(*a));
        CHECK(expr_equal(*a, *b));
    }
}

}  // TEST_SUITE
