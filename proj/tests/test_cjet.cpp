#include <doctest.h>

#include <random>

#include "hmc/expr.hpp"
#include "hmc/rng.hpp"

using namespace hmc;

namespace {

// Finite-difference oracle: c1 from values, c2 from the c1 field, c3 from the
// c2 field. Direct third-order differences of values drown in roundoff, so
// each derivative field is checked against differences of the field below it.
void check_jet_consistency(const Expr& e, Complex z, double step, double rel_tol) {
    const ComplexJet at = eval_jet(e, z);
    const ComplexJet xp = eval_jet(e, z + step);
    const ComplexJet xm = eval_jet(e, z - step);
    const Complex fd1 = (xp.c0 - xm.c0) / (2.0 * step);
    const Complex fd2 = (xp.c1 - xm.c1) / (2.0 * step);
    const Complex fd3 = (xp.c2 - xm.c2) / (2.0 * step);
    CHECK(std::abs(at.c1 - fd1) <= rel_tol * (std::abs(at.c1) + 1.0));
    CHECK(std::abs(at.c2 - fd2) <= rel_tol * (std::abs(at.c2) + 1.0));
    CHECK(std::abs(at.c3 - fd3) <= rel_tol * (std::abs(at.c3) + 1.0));
}

ComplexJet mobius(const ComplexJet& g, Complex a, Complex b, Complex c, Complex d) {
    return (ComplexJet::constant(a) * g + ComplexJet::constant(b)) /
           (ComplexJet::constant(c) * g + ComplexJet::constant(d));
}

}  // namespace

TEST_SUITE("cjet") {

TEST_CASE("polynomial jet") {
    const auto e = parse_expr("z^2");
    const ComplexJet j = eval_jet(*e, Complex(3.0, 0.0));
    CHECK(j.c0 == Complex(9.0, 0.0));
    CHECK(j.c1 == Complex(6.0, 0.0));
    CHECK(j.c2 == Complex(2.0, 0.0));
    CHECK(j.c3 == Complex(0.0, 0.0));
}

TEST_CASE("exponential jet") {
    const auto e = parse_expr("exp(4*z)");
    const ComplexJet j = eval_jet(*e, Complex(0.0, 0.0));
    CHECK(std::abs(j.c0 - 1.0) < 1e-14);
    CHECK(std::abs(j.c1 - 4.0) < 1e-14);
    CHECK(std::abs(j.c2 - 16.0) < 1e-13);
    CHECK(std::abs(j.c3 - 64.0) < 1e-13);
}

TEST_CASE("pole expression derivative") {
    const auto e = parse_expr("z+1/z");
    const ComplexJet j = eval_jet(*e, Complex(0.5, 0.0));
    // 1 - 1/z^2 at 0.5
    CHECK(std::abs(j.c1 - Complex(-3.0, 0.0)) < 1e-12);
    check_jet_consistency(*e, Complex(0.5, 0.0), 1e-5, 1e-6);
}

TEST_CASE("pole and branch errors") {
    CHECK_THROWS_AS(eval_jet(*parse_expr("1/z"), Complex(0.0, 0.0)), EvalError);
    CHECK_THROWS_AS(eval_jet(*parse_expr("log(z)"), Complex(0.0, 0.0)), EvalError);
    CHECK_THROWS_AS(eval_jet(*parse_expr("z^0.5"), Complex(0.0, 0.0)), EvalError);
    CHECK_NOTHROW(eval_jet(*parse_expr("z^2"), Complex(0.0, 0.0)));
}

TEST_CASE("finite differences across the expression library") {
    // Branch-cut-safe sampling boxes per expression.
    struct Case {
        const char* src;
        double re_lo, re_hi, im_lo, im_hi;
    };
    const Case cases[] = {
        {"z^2-3*z+1", -1.0, 1.0, -1.0, 1.0},
        {"z^3*(z-2)", -1.0, 1.0, -1.0, 1.0},
        {"1/(z+3)", -1.0, 1.0, -1.0, 1.0},
        {"z+1/z", 0.4, 1.4, -0.3, 0.3},
        {"exp(z)", -1.0, 1.0, -1.0, 1.0},
        {"exp((0+4i)*z)", -0.5, 0.5, -0.5, 0.5},
        {"log(z)", 0.5, 1.5, -0.3, 0.3},
        {"sqrt(z)", 0.5, 1.5, -0.3, 0.3},
        {"z^0.5", 0.5, 1.5, -0.3, 0.3},
        {"z^(1.5+0.25i)", 0.5, 1.5, -0.3, 0.3},
        {"sin(z)", -1.0, 1.0, -0.5, 0.5},
        {"cos(z)*sin(z)", -1.0, 1.0, -0.5, 0.5},
        {"sin(z)/cos(z)", -0.8, 0.8, -0.3, 0.3},
        {"exp(z^2)/(1+z^2)", -0.6, 0.6, -0.6, 0.6},
        {"(z+1)^3/(z-2)", -0.5, 0.5, -0.5, 0.5},
        {"sqrt(z^2+2)", -0.5, 0.5, -0.5, 0.5},
        {"log(2+sin(z))", -1.0, 1.0, -0.5, 0.5},
        {"exp(1/z)", 0.6, 1.4, -0.3, 0.3},
        {"z^-2", 0.5, 1.5, -0.3, 0.3},
        {"2^z", -1.0, 1.0, -0.5, 0.5},
        {"(1-z^2)^2", -0.6, 0.6, -0.6, 0.6},
        {"pi*z^2-i*z", -1.0, 1.0, -1.0, 1.0},
        {"cos(2*z)+exp(-z)", -0.8, 0.8, -0.5, 0.5},
        {"1/(z^2-4)", -1.0, 1.0, -0.6, 0.6},
        {"sqrt(3+z)*exp(z)", -0.8, 0.8, -0.5, 0.5},
    };
    std::mt19937_64 gen(12345);
    for (const Case& c : cases) {
        const auto e = parse_expr(c.src);
        for (int rep = 0; rep < 40; ++rep) {
            const Complex z(rng_uniform(gen, c.re_lo, c.re_hi),
                            rng_uniform(gen, c.im_lo, c.im_hi));
            check_jet_consistency(*e, z, 1e-5, 1e-6);
        }
    }
}

TEST_CASE("reparam identity when h is the coordinate") {
    const ComplexJet Gz{Complex(2.0, 1.0), Complex(0.5, -0.25), Complex(3.0, 0.0),
                        Complex(-1.0, 2.0)};
    const ComplexJet hz = ComplexJet::variable(Complex(0.7, 0.1));
    const ComplexJet out = reparam_in_h(Gz, hz);
    CHECK(out.c0 == Gz.c0);
    CHECK(out.c1 == Gz.c1);
    CHECK(out.c2 == Gz.c2);
    CHECK(out.c3 == Gz.c3);
}

TEST_CASE("reparam against hand-computed square root") {
    // G = z, h = z^2 away from the origin: G(h) = h^{1/2}, dG/dh = 1/(2 sqrt h).
    const Complex z(1.0, 0.0);
    const ComplexJet Gz = ComplexJet::variable(z);
    const ComplexJet hz = eval_jet(*parse_expr("z^2"), z);
    const ComplexJet out = reparam_in_h(Gz, hz);
    CHECK(std::abs(out.c1 - 0.5) < 1e-14);     // 1/(2*1)
    CHECK(std::abs(out.c2 + 0.25) < 1e-14);    // -1/4 h^{-3/2}
    CHECK(std::abs(out.c3 - 0.375) < 1e-14);   // 3/8 h^{-5/2}
}

TEST_CASE("reparam against a symbolic Mobius change of variable") {
    // h = (z-1)/(z+1) inverts to z = (1+h)/(1-h); with G = z^2,
    //   G(h)    = ((1+h)/(1-h))^2
    //   G_h     = 4(1+h)/(1-h)^3
    //   G_hh    = 8(2+h)/(1-h)^4
    //   G_hhh   = 24(3+h)/(1-h)^5
    const auto Ge = parse_expr("z^2");
    const auto he = parse_expr("(z-1)/(z+1)");
    std::mt19937_64 gen(99);
    for (int rep = 0; rep < 50; ++rep) {
        const Complex z(rng_uniform(gen, 0.2, 1.5), rng_uniform(gen, -0.5, 0.5));
        const ComplexJet out = reparam_in_h(eval_jet(*Ge, z), eval_jet(*he, z));
        const Complex h = (z - 1.0) / (z + 1.0);
        const Complex um = 1.0 - h, up = 1.0 + h;
        const Complex exp1 = 4.0 * up / (um * um * um);
        const Complex exp2 = 8.0 * (2.0 + h) / (um * um * um * um);
        const Complex exp3 = 24.0 * (3.0 + h) / (um * um * um * um * um);
        CHECK(std::abs(out.c1 - exp1) <= 1e-10 * (1.0 + std::abs(exp1)));
        CHECK(std::abs(out.c2 - exp2) <= 1e-10 * (1.0 + std::abs(exp2)));
        CHECK(std::abs(out.c3 - exp3) <= 1e-9 * (1.0 + std::abs(exp3)));
    }
}

TEST_CASE("reparam round-trips through composition") {
    const auto Ge = parse_expr("exp(z)+z^3");
    const auto he = parse_expr("z^2+0.5*z");
    std::mt19937_64 gen(7);
    for (int rep = 0; rep < 100; ++rep) {
        const Complex z(rng_uniform(gen, 0.2, 1.0), rng_uniform(gen, -0.5, 0.5));
        const ComplexJet Gz = eval_jet(*Ge, z);
        const ComplexJet hz = eval_jet(*he, z);
        const ComplexJet back = compose(reparam_in_h(Gz, hz), hz);
        CHECK(std::abs(back.c0 - Gz.c0) <= 1e-10 * (1.0 + std::abs(Gz.c0)));
        CHECK(std::abs(back.c1 - Gz.c1) <= 1e-10 * (1.0 + std::abs(Gz.c1)));
        CHECK(std::abs(back.c2 - Gz.c2) <= 1e-10 * (1.0 + std::abs(Gz.c2)));
        CHECK(std::abs(back.c3 - Gz.c3) <= 1e-10 * (1.0 + std::abs(Gz.c3)));
    }
}

TEST_CASE("reparam rejects critical points of h") {
    CHECK_THROWS_AS(reparam_in_h(ComplexJet::variable(0.0),
                                 eval_jet(*parse_expr("z^2"), Complex(0.0, 0.0))),
                    EvalError);
}

TEST_CASE("schwarzian of the identity and of Mobius images") {
    const ComplexJet identity = ComplexJet::variable(Complex(0.3, 0.2));
    CHECK(std::abs(schwarzian(identity)) == 0.0);

    // Post-composing with any Mobius map leaves the Schwarzian unchanged.
    std::mt19937_64 gen(4242);
    const auto Ge = parse_expr("exp(z)+z^2");
    for (int rep = 0; rep < 60; ++rep) {
        const Complex z(rng_uniform(gen, -0.5, 0.5), rng_uniform(gen, -0.5, 0.5));
        const ComplexJet g = eval_jet(*Ge, z);
        const Complex a(rng_uniform(gen, -2, 2), rng_uniform(gen, -2, 2));
        const Complex b(rng_uniform(gen, -2, 2), rng_uniform(gen, -2, 2));
        const Complex c(rng_uniform(gen, -2, 2), rng_uniform(gen, -2, 2));
        const Complex d(rng_uniform(gen, -2, 2), rng_uniform(gen, -2, 2));
        if (std::abs(a * d - b * c) < 0.1) continue;
        if (std::abs(c * g.c0 + d) < 0.1) continue;
        const Complex s0 = schwarzian(g);
        const Complex s1 = schwarzian(mobius(g, a, b, c, d));
        CHECK(std::abs(s0 - s1) <= 1e-9 * (1.0 + std::abs(s0)));
    }
}

TEST_CASE("schwarzian closed forms from the gallery") {
    // G = exp(k h): {G;h} = -k^2/2, independent of h.
    {
        const Complex k(4.0, 0.0);
        const auto Ge = parse_expr("exp(4*z)");
        const ComplexJet g = eval_jet(*Ge, Complex(0.37, -0.11));
        CHECK(std::abs(schwarzian(g) - (-k * k / 2.0)) < 1e-9 * std::norm(k));
    }
    // G = h + 1/h: {G;h} = -6/(h^2-1)^2.
    {
        const auto Ge = parse_expr("z+1/z");
        const Complex h(0.4, 0.3);
        const ComplexJet g = eval_jet(*Ge, h);
        const Complex expected = -6.0 / ((h * h - 1.0) * (h * h - 1.0));
        CHECK(std::abs(schwarzian(g) - expected) < 1e-12 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("schwarzian rejects critical points") {
    const ComplexJet flat{Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0),
                          Complex(0.0, 0.0)};
    CHECK_THROWS_AS(schwarzian(flat), EvalError);
}

}  // TEST_SUITE
