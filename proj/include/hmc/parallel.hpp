#pragma once

#include <cstdint>

#include "hmc/geom.hpp"

namespace hmc {

/// The four parallel-invariant families of linear Weingarten surfaces
/// H - 1 = lambda K: W0 is the flat class (ratio [0:1]), the others are
/// lambda < 1/2, = 1/2, > 1/2.
enum class WeingartenClass { W0, W1, W2, W3 };

struct WeingartenTag {
    double lambda = 1.0;
    WeingartenClass cls = WeingartenClass::W3;
};

/// Classify finite lambda (the [1:lambda] ratios).
WeingartenTag classify_lambda(double lambda);

struct ParallelSample {
    double t = 0.0;
    Herm2 f_t, nu_t;
    double K_t = 0.0, H_t = 0.0;
    double lambda_t = 0.0;
};

struct ParallelPoint {
    Herm2 f_t, nu_t;
};

/// Equidistant point at hyperbolic distance t:
///   f_t = cosh t f + sinh t nu,  nu_t = sinh t f + cosh t nu.
/// Satisfies the group law parallel(parallel(., s), t) = parallel(., s + t).
ParallelPoint parallel_point(const Herm2& f, const Herm2& nu, double t);

struct ParallelCurvatures {
    double K_t = 0.0, H_t = 0.0;
    bool singular_at_t = false;  // denominator vanished: f_t not an immersion here
};

/// Curvatures of the parallel surface:
///   K_t = K / D,  H_t = (H(cosh^2+sinh^2) - (2+K) cosh sinh) / D,
///   D = K sinh^2 - 2H cosh sinh + cosh^2 + sinh^2.
ParallelCurvatures parallel_curvatures(double K, double H, double t);

/// Transport of the Weingarten constant: lambda_t = ((2 lambda - 1)e^{2t} + 1)/2.
double lambda_t(double lambda, double t);

enum class DistinguishedKind { CMC1, HMC1 };

struct Distinguished {
    double t_star = 0.0;
    DistinguishedKind kind = DistinguishedKind::HMC1;
};

/// The unique parallel distance at which the family crosses its
/// representative member: lambda_t = 0 (constant mean curvature one) for
/// lambda < 1/2, lambda_t = 1 (constant harmonic-mean curvature one) for
/// lambda > 1/2. Throws for lambda = 1/2, which has no such member.
Distinguished solve_distinguished(double lambda);

struct FamilyReport {
    double t = 0.0;
    double lambda_t = 0.0;
    int samples_used = 0;
    int singular_skipped = 0;
    int invalid_skipped = 0;
    double max_residual = 0.0;       // |(H_t - 1) - lambda_t * K_t|
    int curvature_bound_violations = 0;  // K_t outside {<= (1-2l)/l^2} U {>= 0}
};

/// Check that the transported curvatures of `scene` stay inside the
/// Weingarten family law at distance t, over seeded random samples.
FamilyReport verify_weingarten_family(const SceneData& scene, double t, int n_samples,
                                      std::uint64_t seed = 42);

}  // namespace hmc
