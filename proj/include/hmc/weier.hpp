#pragma once

#include <array>
#include <string>

#include "hmc/domain.hpp"
#include "hmc/expr.hpp"
#include "hmc/lorentz.hpp"

namespace hmc {

/// Which frame precondition failed.
enum class FrameFault {
    h_out_of_disk,   // |h(z)| >= 1
    h_critical,      // dh/dz = 0
    g_branch_point,  // dG/dh = 0
    overflow,        // non-finite or out-of-range value
    eval_failure,    // pole or branch point inside an expression
};

/// A precondition of the frame construction failed at a concrete point.
struct FrameError : std::runtime_error {
    Complex at;
    FrameFault fault;
    FrameError(const std::string& what, Complex z, FrameFault fault);
};

/// Weierstrass-type input data: the hyperbolic Gauss map G (meromorphic) and
/// the disk map h (holomorphic into the unit disk), both as functions of z,
/// plus the sampling window.
struct SceneData {
    ExprPtr G;
    ExprPtr h;
    DomainSpec domain;
};

/// Per-point payload of the representation formula.
struct FrameData {
    Complex z;
    Complex h;          // h(z), |h| < 1
    Complex dh_dz;      // h'(z), nonzero
    Mat2C Gframe;       // the frame matrix; det = 1 up to rounding
    Complex theta_dz;   // theta / dz = -(1/2){G;h} h'
    double Lambda;      // 2 / (1 - |h|^2)
    // Jet data in the h-variable, cached for ab_pair and the cross-checks.
    Complex Gvalue, G_h, G_hh;
};

/// Build the frame at z. The -3/2 power takes its principal branch,
/// independently per sample; downstream surface quantities are invariant
/// under the resulting sign flip of the frame.
/// Throws FrameError naming the failed precondition: |h| >= 1, dh/dz = 0,
/// dG/dh = 0, or numeric overflow.
FrameData moving_frame(const SceneData& scene, Complex z);

/// Jet-level entry point used by both moving_frame and the tests.
FrameData moving_frame(const ComplexJet& Gz, const ComplexJet& hz, Complex z);

/// Interior matrices of the representation f = Gframe * H * Gframe^*,
/// nu = Gframe * Htilde * Gframe^*. Require |h| < 1.
Herm2 matrix_H(Complex h);       // det 1, positive trace
Herm2 matrix_Htilde(Complex h);  // det -1

struct ImmersedPoint {
    Herm2 f;   // point of H^3
    Herm2 nu;  // unit normal, <nu,nu> = 1, <f,nu> = 0
};

ImmersedPoint immerse(const FrameData& frame);

/// Frobenius norm of Gframe^{-1} dGframe/dz - [[0, theta/dz], [dh/dz, 0]],
/// with dGframe/dz estimated by central differences at `step`. Frame signs
/// across the stencil are aligned before differencing.
double check_structure(const SceneData& scene, Complex z, double step);

struct ABPair {
    Complex A, B;    // G = A/B, B^2 = -1/G_h (principal square root)
    Complex dB_dh;
};

ABPair ab_pair(const FrameData& frame);

/// theta/dz recomputed through the secondary route theta = (1/B) d(dB/dh),
/// with the outer derivative taken by central differences at `step`.
Complex theta_from_ab(const SceneData& scene, Complex z, double step);

/// Projective coordinates [p : q] of the ideal point [f + nu] on the boundary
/// sphere CP^1. Equals the value of G as a projective point.
std::array<Complex, 2> ideal_boundary_point(const ImmersedPoint& pt);

/// Chordal distance between two points of CP^1 given as projective pairs.
double chordal_distance(const std::array<Complex, 2>& u, const std::array<Complex, 2>& v);

}  // namespace hmc
