#include "hmc/parallel.hpp"

#include <cmath>
#include <random>

#include "hmc/rng.hpp"

namespace hmc {

WeingartenTag classify_lambda(double lambda) {
    WeingartenTag tag;
    tag.lambda = lambda;
    if (lambda < 0.5) tag.cls = WeingartenClass::W1;
    else if (lambda == 0.5) tag.cls = WeingartenClass::W2;
    else tag.cls = WeingartenClass::W3;
    return tag;
}

ParallelPoint parallel_point(const Herm2& f, const Herm2& nu, double t) {
    const double c = std::cosh(t), s = std::sinh(t);
    return {c * f + s * nu, s * f + c * nu};
}

ParallelCurvatures parallel_curvatures(double K, double H, double t) {
    const double c = std::cosh(t), s = std::sinh(t);
    const double denom = K * s * s - 2.0 * H * c * s + c * c + s * s;
    ParallelCurvatures out;
    if (std::abs(denom) < 1e-10 * (1.0 + std::abs(K) + std::abs(H))) {
        out.singular_at_t = true;
        out.K_t = out.H_t = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.K_t = K / denom;
    out.H_t = (H * (c * c + s * s) - (2.0 + K) * c * s) / denom;
    return out;
}

double lambda_t(double lambda, double t) {
    return 0.5 * ((2.0 * lambda - 1.0) * std::exp(2.0 * t) + 1.0);
}

Distinguished solve_distinguished(double lambda) {
    if (lambda == 0.5)
        throw EvalError("lambda = 1/2 is parallel-invariant with no distinguished member");
    Distinguished out;
    if (lambda < 0.5) {
        out.t_star = 0.5 * std::log(1.0 / (1.0 - 2.0 * lambda));
        out.kind = DistinguishedKind::CMC1;
    } else {
        out.t_star = 0.5 * std::log(1.0 / (2.0 * lambda - 1.0));
        out.kind = DistinguishedKind::HMC1;
    }
    return out;
}

FamilyReport verify_weingarten_family(const SceneData& scene, double t, int n_samples,
                                      std::uint64_t seed) {
    FamilyReport rep;
    rep.t = t;
    rep.lambda_t = lambda_t(1.0, t);
    const double bound = (1.0 - 2.0 * rep.lambda_t) / (rep.lambda_t * rep.lambda_t);

    std::mt19937_64 gen(seed);
    const DomainSpec& d = scene.domain;
    const double r_lo = d.r_inner + d.margin, r_hi = d.r_outer - d.margin;

    for (int i = 0; i < n_samples; ++i) {
        const double r = rng_uniform(gen, r_lo, r_hi);
        const double th = rng_uniform(gen, d.theta_min, d.theta_max);
        const Complex z = std::polar(r, th);
        const DensityPoint dp = densities_at(scene, z);
        if (!dp.valid) {
            ++rep.invalid_skipped;
            continue;
        }
        const Curvatures c = curvatures(dp.eta2, dp.pi2);
        if (c.singular) {
            ++rep.singular_skipped;
            continue;
        }
        const ParallelCurvatures pc = parallel_curvatures(c.K, c.H, t);
        if (pc.singular_at_t) {
            ++rep.singular_skipped;
            continue;
        }
        ++rep.samples_used;
        rep.max_residual =
            std::max(rep.max_residual, std::abs((pc.H_t - 1.0) - rep.lambda_t * pc.K_t));
        const double tol = 1e-9 * (1.0 + std::abs(pc.K_t));
        if (!(pc.K_t >= -tol || pc.K_t <= bound + tol)) ++rep.curvature_bound_violations;
    }
    return rep;
}

}  // namespace hmc
