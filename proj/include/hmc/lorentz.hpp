#pragma once

#include <array>
#include <cmath>

#include "hmc/cjet.hpp"

namespace hmc {

/// Point of Minkowski 4-space with signature (-,+,+,+).
struct Vec4 {
    double x0 = 0.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;
};

/// Hermitian 2x2 matrix [[a, b], [conj(b), d]]. The diagonal is stored as two
/// reals so hermiticity is structural and cannot drift.
struct Herm2 {
    double a = 0.0;
    Complex b{};
    double d = 0.0;
};

/// General complex 2x2 matrix, row major.
struct Mat2C {
    Complex m00{}, m01{}, m10{}, m11{};
};

// ---- Vec4 <-> Herm2 ------------------------------------------------------

inline Herm2 herm_from_vec4(const Vec4& x) {
    return {x.x0 + x.x3, Complex(x.x1, x.x2), x.x0 - x.x3};
}

inline Vec4 vec4_from_herm(const Herm2& X) {
    return {0.5 * (X.a + X.d), X.b.real(), X.b.imag(), 0.5 * (X.a - X.d)};
}

inline double det(const Herm2& X) { return X.a * X.d - std::norm(X.b); }
inline double trace(const Herm2& X) { return X.a + X.d; }

inline Herm2 operator+(const Herm2& X, const Herm2& Y) {
    return {X.a + Y.a, X.b + Y.b, X.d + Y.d};
}

inline Herm2 operator-(const Herm2& X, const Herm2& Y) {
    return {X.a - Y.a, X.b - Y.b, X.d - Y.d};
}

inline Herm2 operator*(double s, const Herm2& X) { return {s * X.a, s * X.b, s * X.d}; }

// ---- Lorentzian inner product --------------------------------------------

inline double lorentz_inner(const Vec4& x, const Vec4& y) {
    return -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3;
}

/// Polarization of <x,x> = -det X in the matrix picture.
inline double lorentz_inner(const Herm2& X, const Herm2& Y) {
    return -0.5 * (det(X + Y) - det(X) - det(Y));
}

inline bool is_in_H3(const Herm2& X, double tol = 1e-9) {
    return std::abs(det(X) - 1.0) <= tol && trace(X) > 0.0;
}

// ---- Mat2C algebra --------------------------------------------------------

inline Mat2C operator*(const Mat2C& A, const Mat2C& B) {
    return {A.m00 * B.m00 + A.m01 * B.m10, A.m00 * B.m01 + A.m01 * B.m11,
            A.m10 * B.m00 + A.m11 * B.m10, A.m10 * B.m01 + A.m11 * B.m11};
}

inline Mat2C operator-(const Mat2C& A, const Mat2C& B) {
    return {A.m00 - B.m00, A.m01 - B.m01, A.m10 - B.m10, A.m11 - B.m11};
}

inline Mat2C operator*(Complex s, const Mat2C& A) {
    return {s * A.m00, s * A.m01, s * A.m10, s * A.m11};
}

inline Complex det(const Mat2C& A) { return A.m00 * A.m11 - A.m01 * A.m10; }

inline Mat2C conj_transpose(const Mat2C& A) {
    return {std::conj(A.m00), std::conj(A.m10), std::conj(A.m01), std::conj(A.m11)};
}

inline Mat2C adjugate(const Mat2C& A) { return {A.m11, -A.m01, -A.m10, A.m00}; }

inline Mat2C inverse(const Mat2C& A) {
    const Complex d = det(A);
    if (d == 0.0) throw EvalError("singular 2x2 matrix");
    return (1.0 / d) * adjugate(A);
}

inline double frobenius_norm(const Mat2C& A) {
    return std::sqrt(std::norm(A.m00) + std::norm(A.m01) + std::norm(A.m10) + std::norm(A.m11));
}

inline Mat2C mat_from_herm(const Herm2& X) {
    return {Complex(X.a, 0.0), X.b, std::conj(X.b), Complex(X.d, 0.0)};
}

// ---- Congruence action and ball projection --------------------------------

/// The action X -> a X a^*. Maps Hermitian to Hermitian; scales det by
/// |det a|^2, so SL(2,C) congruences preserve H^3.
inline Herm2 congruence(const Mat2C& a, const Herm2& X) {
    const Mat2C Y = a * mat_from_herm(X) * conj_transpose(a);
    return {Y.m00.real(), Y.m01, Y.m11.real()};
}

/// Projection of an H^3 point to the open unit ball: b_i = x_i / (1 + x_0).
inline std::array<double, 3> ball_model(const Herm2& X) {
    if (!is_in_H3(X, 1e-6)) throw EvalError("ball_model: point is not in H^3");
    const Vec4 x = vec4_from_herm(X);
    const double s = 1.0 / (1.0 + x.x0);
    return {x.x1 * s, x.x2 * s, x.x3 * s};
}

}  // namespace hmc
