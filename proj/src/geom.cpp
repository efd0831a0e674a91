#include "hmc/geom.hpp"

#include <cmath>
#include <limits>

namespace hmc {

Densities densities(const FrameData& frame) {
    const double onem = 1.0 - std::norm(frame.h);
    return {4.0 * std::norm(frame.dh_dz) / (onem * onem),
            onem * onem * std::norm(frame.theta_dz)};
}

Curvatures curvatures(double eta2, double pi2) {
    Curvatures out;
    const double d = pi2 - eta2;
    if (std::abs(d) <= kSingularTol * (pi2 + eta2)) {
        out.singular = true;
        out.K = out.H = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.K = eta2 / d;
    out.H = pi2 / d;
    return out;
}

namespace {

// |P dz + Q dzbar|^2 as a real quadratic form: the (1,1) part is
// (|P|^2+|Q|^2)|dz|^2 and the (2,0) part is P conj(Q) dz^2.
QuadForm form_from_coeffs(double diag, Complex off) {
    return {diag + 2.0 * off.real(), -2.0 * off.imag(), diag - 2.0 * off.real()};
}

}  // namespace

FundamentalForms fundamental_forms(const FrameData& frame) {
    const double onem = 1.0 - std::norm(frame.h);
    const Complex P = 2.0 * frame.dh_dz / onem;
    const Complex Q = onem * std::conj(frame.theta_dz);
    const double eta2 = std::norm(P);
    const double pi2 = std::norm(Q);
    const Complex s = frame.theta_dz * frame.dh_dz;  // II^{2,0}/dz^2

    FundamentalForms out;
    out.I = form_from_coeffs(eta2 + pi2, 2.0 * s);
    out.II = form_from_coeffs(pi2, s);
    out.III = {pi2, 0.0, pi2};
    return out;
}

PrincipalCurvatures principal_curvatures(const QuadForm& I, const QuadForm& II) {
    const double d = I.det();
    if (d <= 0.0 || I.E <= 0.0) throw EvalError("principal_curvatures: first form not positive definite");
    const double mean = (I.E * II.G - 2.0 * I.F * II.F + I.G * II.E) / (2.0 * d);
    const double prod = II.det() / d;
    const double disc = std::max(0.0, mean * mean - prod);
    const double root = std::sqrt(disc);
    return {mean + root, mean - root};
}

Complex hopf_Q(const FrameData& frame) { return 2.0 * frame.theta_dz * frame.dh_dz; }

SurfaceSample surface_sample(const SceneData& scene, Complex z) {
    SurfaceSample s;
    s.z = z;
    FrameData frame;
    try {
        frame = moving_frame(scene, z);
    } catch (const FrameError& e) {
        s.invalid_reason = e.what();
        s.fault = e.fault;
        return s;
    }
    const ImmersedPoint pt = immerse(frame);
    const Densities d = densities(frame);
    const Curvatures c = curvatures(d.eta2, d.pi2);
    s.f = pt.f;
    s.nu = pt.nu;
    s.eta2 = d.eta2;
    s.pi2 = d.pi2;
    s.K = c.K;
    s.H = c.H;
    s.Q_dz2 = hopf_Q(frame);
    s.is_front_ok = is_front(d.eta2, d.pi2);
    s.is_singular = c.singular;
    s.valid = true;
    return s;
}

DensityPoint densities_at(const SceneData& scene, Complex z) {
    try {
        const Densities d = densities(moving_frame(scene, z));
        if (!std::isfinite(d.eta2) || !std::isfinite(d.pi2)) return {};
        return {d.eta2, d.pi2, true};
    } catch (const FrameError&) {
        return {};
    }
}

double subharmonicity_check(const SceneData& scene, Complex z, double step) {
    auto tr_sum = [&](Complex zz) {
        const ImmersedPoint pt = immerse(moving_frame(scene, zz));
        return trace(pt.f) + trace(pt.nu);
    };
    const double center = tr_sum(z);
    const double sum = tr_sum(z + step) + tr_sum(z - step) +
                       tr_sum(z + Complex(0.0, step)) + tr_sum(z - Complex(0.0, step));
    return (sum - 4.0 * center) / (step * step);
}

double pseudometric_curvature(const SceneData& scene, Complex z, double step,
                              PseudometricKind which) {
    auto lam = [&](Complex zz) {
        const Densities d = densities(moving_frame(scene, zz));
        const double v = which == PseudometricKind::eta ? d.eta2 : d.pi2;
        if (v <= 0.0)
            throw FrameError("pseudometric density vanishes on stencil", zz,
                             FrameFault::eval_failure);
        return v;
    };
    const double lc = lam(z);
    const double lap_log = (std::log(lam(z + step)) + std::log(lam(z - step)) +
                            std::log(lam(z + Complex(0.0, step))) +
                            std::log(lam(z - Complex(0.0, step))) - 4.0 * std::log(lc)) /
                           (step * step);
    return -lap_log / (2.0 * lc);
}

}  // namespace hmc
