#include "hmc/weier.hpp"

#include <cmath>
#include <sstream>

namespace hmc {

namespace {

constexpr double kOverflowLimit = 1e120;

std::string point_str(Complex z) {
    std::ostringstream os;
    os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    return os.str();
}

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

bool frame_finite(const FrameData& fr) {
    const Mat2C& g = fr.Gframe;
    for (Complex v : {g.m00, g.m01, g.m10, g.m11, fr.theta_dz})
        if (!finite(v) || std::abs(v) > kOverflowLimit) return false;
    return std::isfinite(fr.Lambda);
}

}  // namespace

FrameError::FrameError(const std::string& what, Complex z, FrameFault f)
    : std::runtime_error(what + " at z = " + point_str(z)), at(z), fault(f) {}

FrameData moving_frame(const ComplexJet& Gz, const ComplexJet& hz, Complex z) {
    const Complex h = hz.c0;
    if (std::norm(h) >= 1.0) throw FrameError("|h| >= 1 (h must map into the unit disk)", z, FrameFault::h_out_of_disk);
    if (hz.c1 == 0.0) throw FrameError("critical point of h (dh/dz = 0)", z, FrameFault::h_critical);

    const ComplexJet Gh = reparam_in_h(Gz, hz);
    if (Gh.c1 == 0.0) throw FrameError("branch point of G (dG/dh = 0)", z, FrameFault::g_branch_point);

    const Complex pref = std::pow(-Gh.c1, Complex(-1.5, 0.0));
    FrameData fr;
    fr.z = z;
    fr.h = h;
    fr.dh_dz = hz.c1;
    fr.Gframe = pref * Mat2C{-Gh.c0 * Gh.c1, 0.5 * Gh.c0 * Gh.c2 - Gh.c1 * Gh.c1,
                             -Gh.c1, 0.5 * Gh.c2};
    fr.theta_dz = -0.5 * schwarzian(Gh) * hz.c1;
    fr.Lambda = 2.0 / (1.0 - std::norm(h));
    fr.Gvalue = Gh.c0;
    fr.G_h = Gh.c1;
    fr.G_hh = Gh.c2;
    if (!frame_finite(fr)) throw FrameError("numeric overflow in frame", z, FrameFault::overflow);
    return fr;
}

FrameData moving_frame(const SceneData& scene, Complex z) {
    ComplexJet Gz, hz;
    try {
        Gz = eval_jet(*scene.G, z);
        hz = eval_jet(*scene.h, z);
    } catch (const EvalError& e) {
        throw FrameError(std::string("expression evaluation failed: ") + e.what(), z, FrameFault::eval_failure);
    }
    if (!finite(Gz.c0) || std::abs(Gz.c0) > kOverflowLimit)
        throw FrameError("numeric overflow in G", z, FrameFault::overflow);
    return moving_frame(Gz, hz, z);
}

Herm2 matrix_H(Complex h) {
    const double hh = std::norm(h);
    if (hh >= 1.0) throw EvalError("matrix_H requires |h| < 1");
    return {(1.0 + hh) / (1.0 - hh), std::conj(h), 1.0 - hh};
}

Herm2 matrix_Htilde(Complex h) {
    const double hh = std::norm(h);
    if (hh >= 1.0) throw EvalError("matrix_Htilde requires |h| < 1");
    return {1.0, -std::conj(h), hh - 1.0};
}

ImmersedPoint immerse(const FrameData& frame) {
    return {congruence(frame.Gframe, matrix_H(frame.h)),
            congruence(frame.Gframe, matrix_Htilde(frame.h))};
}

namespace {

// The principal branch may flip sign across a stencil; pick the sign of the
// neighbor frame closest to the center one.
Mat2C align_sign(const Mat2C& reference, const Mat2C& candidate) {
    const double keep = frobenius_norm(candidate - reference);
    const Mat2C flipped = Complex(-1.0, 0.0) * candidate;
    const double flip = frobenius_norm(flipped - reference);
    return flip < keep ? flipped : candidate;
}

}  // namespace

double check_structure(const SceneData& scene, Complex z, double step) {
    const FrameData center = moving_frame(scene, z);
    const Mat2C plus = align_sign(center.Gframe, moving_frame(scene, z + step).Gframe);
    const Mat2C minus = align_sign(center.Gframe, moving_frame(scene, z - step).Gframe);
    const Mat2C dG = (1.0 / (2.0 * step)) * (plus - minus);
    const Mat2C expected{0.0, center.theta_dz, center.dh_dz, 0.0};
    return frobenius_norm(inverse(center.Gframe) * dG - expected);
}

ABPair ab_pair(const FrameData& frame) {
    if (frame.G_h == 0.0) throw FrameError("branch point of G (dG/dh = 0)", frame.z, FrameFault::g_branch_point);
    ABPair p;
    p.B = std::sqrt(-1.0 / frame.G_h);
    p.A = frame.Gvalue * p.B;
    p.dB_dh = 0.5 * frame.G_hh / (p.B * frame.G_h * frame.G_h);
    return p;
}

Complex theta_from_ab(const SceneData& scene, Complex z, double step) {
    const FrameData center = moving_frame(scene, z);
    const ABPair b0 = ab_pair(center);

    auto aligned_dBdh = [&](Complex zz) {
        const FrameData fr = moving_frame(scene, zz);
        ABPair p = ab_pair(fr);
        // B is defined up to sign; keep the branch continuous across the
        // stencil (dB/dh carries B's sign).
        if (std::abs(p.B - b0.B) > std::abs(p.B + b0.B)) {
            p.B = -p.B;
            p.dB_dh = -p.dB_dh;
        }
        return p;
    };

    const FrameData fp = moving_frame(scene, z + step);
    const FrameData fm = moving_frame(scene, z - step);
    const ABPair bp = aligned_dBdh(z + step);
    const ABPair bm = aligned_dBdh(z - step);
    const Complex dh = fp.h - fm.h;
    if (dh == 0.0) throw FrameError("degenerate stencil (h constant)", z, FrameFault::h_critical);
    const Complex B_hh = (bp.dB_dh - bm.dB_dh) / dh;
    return B_hh / b0.B * center.dh_dz;
}

std::array<Complex, 2> ideal_boundary_point(const ImmersedPoint& pt) {
    const Herm2 s = pt.f + pt.nu;  // rank-one: Lambda (A1,A2)(A1,A2)^*
    // [A1 : A2] = [b : d] = [a : conj(b)]; use the better-conditioned pair.
    if (s.d >= s.a) return {s.b, Complex(s.d, 0.0)};
    return {Complex(s.a, 0.0), std::conj(s.b)};
}

double chordal_distance(const std::array<Complex, 2>& u, const std::array<Complex, 2>& v) {
    const double nu = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
    const double nv = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    if (nu == 0.0 || nv == 0.0) throw EvalError("chordal_distance: zero representative");
    return 2.0 * std::abs(u[0] * v[1] - u[1] * v[0]) / (nu * nv);
}

}  // namespace hmc
