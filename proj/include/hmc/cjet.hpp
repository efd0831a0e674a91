#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hmc {

using Complex = std::complex<double>;

/// Evaluation failure at a concrete point: pole, branch point, bad domain.
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Value and first three z-derivatives of a holomorphic function at a point.
///
/// Jets propagate through arithmetic by truncated Taylor rules, so an
/// expression evaluated on jets carries the exact derivatives of the composed
/// function. Order 3 is the highest any downstream formula needs (the
/// Schwarzian derivative uses third derivatives).
struct ComplexJet {
    Complex c0{};  // value
    Complex c1{};  // d/dz
    Complex c2{};  // d^2/dz^2
    Complex c3{};  // d^3/dz^3

    static ComplexJet constant(Complex v) { return {v, 0.0, 0.0, 0.0}; }
    static ComplexJet variable(Complex z) { return {z, 1.0, 0.0, 0.0}; }
};

inline ComplexJet operator+(const ComplexJet& a, const ComplexJet& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3};
}

inline ComplexJet operator-(const ComplexJet& a, const ComplexJet& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2, a.c3 - b.c3};
}

inline ComplexJet operator-(const ComplexJet& a) {
    return {-a.c0, -a.c1, -a.c2, -a.c3};
}

// Leibniz rule through order 3.
inline ComplexJet operator*(const ComplexJet& a, const ComplexJet& b) {
    return {a.c0 * b.c0,
            a.c1 * b.c0 + a.c0 * b.c1,
            a.c2 * b.c0 + 2.0 * a.c1 * b.c1 + a.c0 * b.c2,
            a.c3 * b.c0 + 3.0 * a.c2 * b.c1 + 3.0 * a.c1 * b.c2 + a.c0 * b.c3};
}

// Solve q*b = a order by order.
inline ComplexJet operator/(const ComplexJet& a, const ComplexJet& b) {
    if (b.c0 == 0.0) throw EvalError("division by zero");
    const Complex q0 = a.c0 / b.c0;
    const Complex q1 = (a.c1 - q0 * b.c1) / b.c0;
    const Complex q2 = (a.c2 - q0 * b.c2 - 2.0 * q1 * b.c1) / b.c0;
    const Complex q3 = (a.c3 - q0 * b.c3 - 3.0 * q1 * b.c2 - 3.0 * q2 * b.c1) / b.c0;
    return {q0, q1, q2, q3};
}

/// Chain rule for outer(inner). `outer` holds the derivatives of the outer
/// function taken with respect to the inner value (Faa di Bruno, order 3).
inline ComplexJet compose(const ComplexJet& outer, const ComplexJet& inner) {
    const Complex u1 = inner.c1, u2 = inner.c2, u3 = inner.c3;
    return {outer.c0,
            outer.c1 * u1,
            outer.c2 * u1 * u1 + outer.c1 * u2,
            outer.c3 * u1 * u1 * u1 + 3.0 * outer.c2 * u1 * u2 + outer.c1 * u3};
}

inline ComplexJet exp(const ComplexJet& a) {
    const Complex e = std::exp(a.c0);
    return compose({e, e, e, e}, a);
}

inline ComplexJet log(const ComplexJet& a) {
    if (a.c0 == 0.0) throw EvalError("log of zero");
    const Complex inv = 1.0 / a.c0;
    return compose({std::log(a.c0), inv, -inv * inv, 2.0 * inv * inv * inv}, a);
}

inline ComplexJet sin(const ComplexJet& a) {
    const Complex s = std::sin(a.c0), c = std::cos(a.c0);
    return compose({s, c, -s, -c}, a);
}

inline ComplexJet cos(const ComplexJet& a) {
    const Complex s = std::sin(a.c0), c = std::cos(a.c0);
    return compose({c, -s, -c, s}, a);
}

namespace detail {
inline bool small_integer_exponent(Complex w, long& k) {
    if (w.imag() != 0.0) return false;
    const double r = w.real();
    if (r != std::floor(r) || std::abs(r) > 64.0) return false;
    k = static_cast<long>(r);
    return true;
}
}  // namespace detail

/// Principal-branch power. Exact integer exponents up to |k| <= 64 go through
/// repeated multiplication so they stay valid at the origin.
inline ComplexJet pow(const ComplexJet& a, Complex w) {
    long k = 0;
    if (detail::small_integer_exponent(w, k)) {
        ComplexJet acc = ComplexJet::constant(1.0);
        for (long i = 0; i < std::labs(k); ++i) acc = acc * a;
        if (k < 0) acc = ComplexJet::constant(1.0) / acc;
        return acc;
    }
    if (a.c0 == 0.0) throw EvalError("branch point: zero base with non-integer exponent");
    const Complex p0 = std::pow(a.c0, w);
    const Complex p1 = w * std::pow(a.c0, w - 1.0);
    const Complex p2 = w * (w - 1.0) * std::pow(a.c0, w - 2.0);
    const Complex p3 = w * (w - 1.0) * (w - 2.0) * std::pow(a.c0, w - 3.0);
    return compose({p0, p1, p2, p3}, a);
}

inline ComplexJet sqrt(const ComplexJet& a) { return pow(a, Complex(0.5, 0.0)); }

/// Convert z-jets of G and h into the jet of G as a function of h:
/// (G, dG/dh, d2G/dh2, d3G/dh3). Inverts the chain rule through order 3.
inline ComplexJet reparam_in_h(const ComplexJet& Gz, const ComplexJet& hz) {
    if (hz.c1 == 0.0) throw EvalError("critical point of h (dh/dz = 0)");
    const Complex h1 = hz.c1, h2 = hz.c2, h3 = hz.c3;
    const Complex g1 = Gz.c1, g2 = Gz.c2, g3 = Gz.c3;
    const Complex h1sq = h1 * h1;
    const Complex w = g2 * h1 - g1 * h2;  // numerator of d(G_h)/dz * h1^2
    const Complex G_h = g1 / h1;
    const Complex G_hh = w / (h1sq * h1);
    const Complex G_hhh = ((g3 * h1 - g1 * h3) * h1 - 3.0 * h2 * w) / (h1sq * h1sq * h1);
    return {Gz.c0, G_h, G_hh, G_hhh};
}

/// Schwarzian derivative {G; h} from a jet in the h-variable:
/// G_hhh/G_h - (3/2)(G_hh/G_h)^2.
inline Complex schwarzian(const ComplexJet& Gh) {
    if (Gh.c1 == 0.0) throw EvalError("Schwarzian undefined where dG/dh = 0");
    const Complex r = Gh.c2 / Gh.c1;
    return Gh.c3 / Gh.c1 - 1.5 * r * r;
}

}  // namespace hmc
