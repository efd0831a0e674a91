#pragma once

#include <optional>

#include "hmc/weier.hpp"

namespace hmc {

/// Relative tolerance below which the two densities are considered equal and
/// the point is flagged singular (curvatures blow up like 1/(pi2 - eta2)).
inline constexpr double kSingularTol = 1e-9;

/// Front criterion threshold: eta2 + pi2 must exceed this for (f, nu) to be
/// an immersion at the point.
inline constexpr double kFrontTol = 1e-12;

/// Conformal densities with respect to |dz|^2:
///   eta2 = 4|h'|^2/(1-|h|^2)^2   (pullback of the disk metric under h)
///   pi2  = (1-|h|^2)^2 |theta/dz|^2   (third fundamental form)
struct Densities {
    double eta2 = 0.0;
    double pi2 = 0.0;
};

Densities densities(const FrameData& frame);

struct Curvatures {
    double K = 0.0;
    double H = 0.0;
    bool singular = false;  // densities equal within kSingularTol; K,H are NaN
};

/// K = eta2/(pi2 - eta2), H = pi2/(pi2 - eta2). At a singular point both are
/// set to quiet NaN and the flag is raised instead of returning huge values.
Curvatures curvatures(double eta2, double pi2);

/// Real quadratic form  E dx^2 + 2F dx dy + G dy^2  in the chart z = x + iy.
struct QuadForm {
    double E = 0.0, F = 0.0, G = 0.0;
    double det() const { return E * G - F * F; }
};

struct FundamentalForms {
    QuadForm I, II, III;
};

FundamentalForms fundamental_forms(const FrameData& frame);

struct PrincipalCurvatures {
    double k1 = 0.0, k2 = 0.0;
};

/// Eigenvalues of the shape operator I^{-1} II. Requires I positive definite.
PrincipalCurvatures principal_curvatures(const QuadForm& I, const QuadForm& II);

/// Density of the holomorphic quadratic differential Q with respect to dz^2:
/// Q/dz^2 = 2 (theta/dz) h'. |Q|^2 = eta2 * pi2.
Complex hopf_Q(const FrameData& frame);

inline bool is_front(double eta2, double pi2, double tol = kFrontTol) {
    return eta2 + pi2 > tol;
}

/// Signed residual whose zero set is the singular locus.
inline double singular_residual(double eta2, double pi2) { return eta2 - pi2; }

/// Full per-point record. Invalid points (failed frame preconditions) come
/// back with valid = false rather than throwing.
struct SurfaceSample {
    Complex z{};
    Herm2 f{}, nu{};
    double eta2 = 0.0, pi2 = 0.0;
    double K = 0.0, H = 0.0;
    Complex Q_dz2{};
    bool is_front_ok = false;
    bool is_singular = false;
    bool valid = false;
    std::string invalid_reason;
    std::optional<FrameFault> fault;
};

SurfaceSample surface_sample(const SceneData& scene, Complex z);

/// Densities only (no matrix work); used by grid scans and locus tracing.
/// Returns valid = false instead of throwing.
struct DensityPoint {
    double eta2 = 0.0, pi2 = 0.0;
    bool valid = false;
};

DensityPoint densities_at(const SceneData& scene, Complex z);

/// Five-point finite-difference Laplacian of trace(f + nu) at z. Equals
/// 4 * eta2 * x0 where x0 is the height of f; in particular it is
/// nonnegative, so trace(f + nu) is subharmonic.
double subharmonicity_check(const SceneData& scene, Complex z, double step);

enum class PseudometricKind { eta, pi };

/// Gauss curvature of the chosen density metric lambda |dz|^2 via
/// -(1/(2 lambda)) Laplace(log lambda), finite differences at `step`.
/// The eta metric has curvature -1; the pi metric has curvature K/(K+1).
double pseudometric_curvature(const SceneData& scene, Complex z, double step,
                              PseudometricKind which);

}  // namespace hmc
