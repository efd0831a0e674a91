#include "hmc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include <json.hpp>

#include "hmc/geom.hpp"
#include "hmc/rng.hpp"
#include "hmc/sampler.hpp"

namespace hmc {

namespace {

constexpr double kFirstOrderStep = 1e-5;   // central differences of first derivatives
constexpr double kLaplacianStep = 1e-4;    // five-point second-derivative stencils

struct SamplePoint {
    Complex z;
    FrameData fr;
    ImmersedPoint pt;
    Densities den;
    Curvatures cur;
};

/// Interior sampling window: inset from the domain edges so every
/// finite-difference stencil stays strictly inside the scene's window.
struct SampleBox {
    double r_lo, r_hi, th_lo, th_hi;
};

SampleBox sample_box(const DomainSpec& d) {
    const double r_lo = std::max(d.r_inner, 0.0) + d.margin;
    const double r_hi = d.r_outer - d.margin;
    const double span = r_hi - r_lo;
    SampleBox box;
    box.r_lo = r_lo + 0.1 * span;
    box.r_hi = r_hi - 0.1 * span;
    if (d.kind == DomainKind::sector) {
        const double tspan = d.theta_max - d.theta_min;
        box.th_lo = d.theta_min + 0.02 * tspan;
        box.th_hi = d.theta_max - 0.02 * tspan;
    } else {
        box.th_lo = -std::numbers::pi;
        box.th_hi = std::numbers::pi;
    }
    return box;
}

class Suite {
public:
    explicit Suite(VerifyReport& rep) : rep_(rep) {}

    /// Record a residual-style check: pass iff max residual <= threshold
    /// (vacuous pass when no sample qualified).
    template <typename Fn>
    void residual_check(const std::string& name, double threshold, Fn&& per_sample_residual,
                        const std::vector<SamplePoint>& pts) {
        CheckResult cr;
        cr.name = name;
        cr.threshold = threshold;
        for (const SamplePoint& p : pts) {
            const auto r = per_sample_residual(p);  // std::optional<double>
            if (!r) continue;
            if (!std::isfinite(*r)) {
                cr.max_residual = std::numeric_limits<double>::max();
                ++cr.samples;
                continue;
            }
            ++cr.samples;
            cr.max_residual = std::max(cr.max_residual, *r);
        }
        cr.pass = cr.max_residual <= threshold;
        rep_.checks.push_back(cr);
    }

private:
    VerifyReport& rep_;
};

double herm_distance(const Herm2& X, const Herm2& Y) {
    return std::max({std::abs(X.a - Y.a), std::abs(X.b - Y.b), std::abs(X.d - Y.d)});
}

}  // namespace

VerifyReport run_verification(const SceneFile& sf, int n_samples, std::uint64_t seed) {
    const SceneData& scene = sf.data;
    VerifyReport rep;
    rep.G_source = sf.G_source;
    rep.h_source = sf.h_source;
    rep.seed = seed;
    rep.samples_requested = n_samples;

    const SampleBox box = sample_box(scene.domain);
    std::mt19937_64 gen(seed);

    std::vector<SamplePoint> pts;
    pts.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const Complex z = std::polar(rng_uniform(gen, box.r_lo, box.r_hi),
                                     rng_uniform(gen, box.th_lo, box.th_hi));
        SamplePoint p;
        p.z = z;
        try {
            p.fr = moving_frame(scene, z);
        } catch (const FrameError&) {
            ++rep.invalid;
            continue;
        }
        p.pt = immerse(p.fr);
        p.den = densities(p.fr);
        p.cur = curvatures(p.den.eta2, p.den.pi2);
        if (p.cur.singular) ++rep.singular;
        ++rep.valid;
        pts.push_back(p);
    }

    Suite suite(rep);
    using Maybe = std::optional<double>;

    suite.residual_check(
        "weingarten_identity", sf.tolerances.weingarten,
        [](const SamplePoint& p) -> Maybe {
            if (p.cur.singular) return std::nullopt;
            return std::abs((p.cur.H - 1.0) - p.cur.K);
        },
        pts);

    suite.residual_check(
        "frame_determinant", 1e-9,
        [](const SamplePoint& p) -> Maybe { return std::abs(det(p.fr.Gframe) - 1.0); }, pts);

    suite.residual_check(
        "point_on_hyperboloid", 1e-8,
        [](const SamplePoint& p) -> Maybe {
            if (trace(p.pt.f) <= 0.0) return std::numeric_limits<double>::max();
            return std::abs(det(p.pt.f) - 1.0);
        },
        pts);

    suite.residual_check(
        "normal_unit", 1e-8,
        [](const SamplePoint& p) -> Maybe {
            return std::abs(lorentz_inner(p.pt.nu, p.pt.nu) - 1.0);
        },
        pts);

    suite.residual_check(
        "normal_orthogonal", 1e-8,
        [](const SamplePoint& p) -> Maybe { return std::abs(lorentz_inner(p.pt.f, p.pt.nu)); },
        pts);

    suite.residual_check(
        "lambda_identity", 1e-12,
        [](const SamplePoint& p) -> Maybe {
            return std::abs(p.fr.Lambda * (1.0 - std::norm(p.fr.h)) - 2.0);
        },
        pts);

    suite.residual_check(
        "branch_flip_invariance", 1e-10,
        [](const SamplePoint& p) -> Maybe {
            FrameData flipped = p.fr;
            flipped.Gframe = Complex(-1.0, 0.0) * p.fr.Gframe;
            const ImmersedPoint other = immerse(flipped);
            return std::max(herm_distance(other.f, p.pt.f), herm_distance(other.nu, p.pt.nu));
        },
        pts);

    suite.residual_check(
        "structure_equation", sf.tolerances.structure,
        [&](const SamplePoint& p) -> Maybe {
            try {
                return check_structure(scene, p.z, kFirstOrderStep);
            } catch (const FrameError&) {
                return std::nullopt;
            }
        },
        pts);

    suite.residual_check(
        "theta_cross_check", 1e-6,
        [&](const SamplePoint& p) -> Maybe {
            try {
                return std::abs(theta_from_ab(scene, p.z, kFirstOrderStep) - p.fr.theta_dz);
            } catch (const FrameError&) {
                return std::nullopt;
            }
        },
        pts);

    suite.residual_check(
        "gauss_map", 1e-7,
        [&](const SamplePoint& p) -> Maybe {
            Complex g;
            try {
                g = eval_value(*scene.G, p.z);
            } catch (const EvalError&) {
                return std::nullopt;
            }
            return chordal_distance(ideal_boundary_point(p.pt), {g, Complex(1.0, 0.0)});
        },
        pts);

    // dbar Q by central differences; the threshold scales with |Q|.
    suite.residual_check(
        "hopf_holomorphy", 1.0,
        [&](const SamplePoint& p) -> Maybe {
            const double s = kFirstOrderStep;
            Complex qp, qm, qip, qim;
            try {
                qp = hopf_Q(moving_frame(scene, p.z + s));
                qm = hopf_Q(moving_frame(scene, p.z - s));
                qip = hopf_Q(moving_frame(scene, p.z + Complex(0.0, s)));
                qim = hopf_Q(moving_frame(scene, p.z - Complex(0.0, s)));
            } catch (const FrameError&) {
                return std::nullopt;
            }
            const Complex dbar = 0.5 * ((qp - qm) / (2.0 * s) +
                                        Complex(0.0, 1.0) * (qip - qim) / (2.0 * s));
            const Complex q0 = hopf_Q(p.fr);
            return std::abs(dbar) / (1e-5 * std::abs(q0) + 1e-9);
        },
        pts);

    suite.residual_check(
        "density_compatibility", 1e-9,
        [](const SamplePoint& p) -> Maybe {
            if (p.cur.singular) return std::nullopt;
            const double lhs = p.den.eta2 * p.cur.H;
            const double rhs = p.den.pi2 * p.cur.K;
            return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
        },
        pts);

    suite.residual_check(
        "sign_dichotomy", 0.5,
        [](const SamplePoint& p) -> Maybe {
            if (p.cur.singular) return std::nullopt;
            bool ok;
            if (p.den.pi2 < p.den.eta2) ok = p.cur.K <= -1.0 + 1e-9;
            else ok = p.cur.K >= -1e-9;
            return ok ? 0.0 : 1.0;
        },
        pts);

    suite.residual_check(
        "closed_form_K", 1e-9,
        [](const SamplePoint& p) -> Maybe {
            if (p.cur.singular) return std::nullopt;
            const double onem = 1.0 - std::norm(p.fr.h);
            const double a = 4.0 * std::norm(p.fr.dh_dz);
            const double b = onem * onem * onem * onem * std::norm(p.fr.theta_dz);
            if (b - a == 0.0) return std::nullopt;
            const double K_alt = a / (b - a);
            return std::abs(p.cur.K - K_alt) / std::max(1.0, std::abs(p.cur.K));
        },
        pts);

    suite.residual_check(
        "harmonic_mean_identity", 1e-7,
        [](const SamplePoint& p) -> Maybe {
            const FundamentalForms ff = fundamental_forms(p.fr);
            if (ff.I.det() <= 0.0 || ff.I.E <= 0.0) return std::nullopt;
            const PrincipalCurvatures pc = principal_curvatures(ff.I, ff.II);
            if (std::abs(pc.k1) <= 1e-6 || std::abs(pc.k2) <= 1e-6) return std::nullopt;
            return std::abs(1.0 / pc.k1 + 1.0 / pc.k2 - 2.0);
        },
        pts);

    suite.residual_check(
        "form_relation", 1e-8,
        [](const SamplePoint& p) -> Maybe {
            if (p.cur.singular) return std::nullopt;
            const FundamentalForms ff = fundamental_forms(p.fr);
            const double c1 = 2.0 * p.cur.H, c0 = p.cur.K + 1.0;
            double worst = 0.0, scale = 1.0;
            const double lhs[3] = {ff.III.E, ff.III.F, ff.III.G};
            const double rhs[3] = {c1 * ff.II.E - c0 * ff.I.E, c1 * ff.II.F - c0 * ff.I.F,
                                   c1 * ff.II.G - c0 * ff.I.G};
            for (int i = 0; i < 3; ++i) {
                worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
                scale = std::max({scale, std::abs(lhs[i]), std::abs(rhs[i])});
            }
            return worst / scale;
        },
        pts);

    int first_form_budget = 100;
    suite.residual_check(
        "first_form_fd", 1e-6,
        [&](const SamplePoint& p) -> Maybe {
            if (first_form_budget <= 0) return std::nullopt;
            const double s = kFirstOrderStep;
            // Richardson-extrapolated central differences: the plain s^2
            // truncation term is visible once the point sits far from the
            // ball origin and the Lorentzian products cancel large entries.
            Herm2 fx, fy, nx, ny;
            try {
                auto richardson = [&](Complex dir, bool normal) {
                    auto diff = [&](double sc) {
                        const ImmersedPoint a = immerse(moving_frame(scene, p.z + sc * s * dir));
                        const ImmersedPoint b = immerse(moving_frame(scene, p.z - sc * s * dir));
                        return (1.0 / (2.0 * sc * s)) *
                               ((normal ? a.nu : a.f) - (normal ? b.nu : b.f));
                    };
                    const Herm2 d1 = diff(1.0), d2 = diff(2.0);
                    return (1.0 / 3.0) * (4.0 * d1 - d2);
                };
                fx = richardson(Complex(1.0, 0.0), false);
                fy = richardson(Complex(0.0, 1.0), false);
                nx = richardson(Complex(1.0, 0.0), true);
                ny = richardson(Complex(0.0, 1.0), true);
            } catch (const FrameError&) {
                return std::nullopt;
            }
            --first_form_budget;
            const FundamentalForms ff = fundamental_forms(p.fr);
            const double rI = std::max({std::abs(lorentz_inner(fx, fx) - ff.I.E),
                                        std::abs(lorentz_inner(fx, fy) - ff.I.F),
                                        std::abs(lorentz_inner(fy, fy) - ff.I.G)});
            const double rIII = std::max({std::abs(lorentz_inner(nx, nx) - ff.III.E),
                                          std::abs(lorentz_inner(nx, ny) - ff.III.F),
                                          std::abs(lorentz_inner(ny, ny) - ff.III.G)});
            return std::max(rI, rIII);
        },
        pts);

    int subharmonic_budget = 100;
    suite.residual_check(
        "subharmonicity", 1e-4,
        [&](const SamplePoint& p) -> Maybe {
            if (subharmonic_budget <= 0) return std::nullopt;
            double lap;
            try {
                lap = subharmonicity_check(scene, p.z, kLaplacianStep);
            } catch (const FrameError&) {
                return std::nullopt;
            }
            --subharmonic_budget;
            const double expected = 4.0 * p.den.eta2 * (0.5 * trace(p.pt.f));
            const double scale = 1.0 + expected;
            if (lap < -1e-6 * scale) return std::numeric_limits<double>::max();
            return std::abs(lap - expected) / expected;
        },
        pts);

    int eta_budget = 50;
    suite.residual_check(
        "pseudometric_eta_curvature", 1e-3,
        [&](const SamplePoint& p) -> Maybe {
            if (eta_budget <= 0) return std::nullopt;
            double curv;
            try {
                curv = pseudometric_curvature(scene, p.z, kLaplacianStep, PseudometricKind::eta);
            } catch (const FrameError&) {
                return std::nullopt;
            }
            --eta_budget;
            return std::abs(curv + 1.0);
        },
        pts);

    int pi_budget = 50;
    suite.residual_check(
        "pseudometric_pi_curvature", 1e-3,
        [&](const SamplePoint& p) -> Maybe {
            if (pi_budget <= 0) return std::nullopt;
            if (p.den.pi2 <= 1e-6 || p.den.eta2 > 100.0 * p.den.pi2) return std::nullopt;
            double curv;
            try {
                curv = pseudometric_curvature(scene, p.z, kLaplacianStep, PseudometricKind::pi);
            } catch (const FrameError&) {
                return std::nullopt;
            }
            --pi_budget;
            return std::abs(curv - p.den.eta2 / p.den.pi2);
        },
        pts);

    bool all_pass = true;
    for (const CheckResult& c : rep.checks) all_pass = all_pass && c.pass;
    rep.pass = all_pass && 2 * rep.valid >= rep.samples_requested;
    return rep;
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["scene"]["G"] = G_source;
    j["scene"]["h"] = h_source;
    j["seed"] = seed;
    j["samples_requested"] = samples_requested;
    j["valid"] = valid;
    j["invalid"] = invalid;
    j["singular"] = singular;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["samples"] = c.samples;
        jc["max_residual"] = c.max_residual;
        jc["threshold"] = c.threshold;
        jc["pass"] = c.pass;
        arr.push_back(std::move(jc));
    }
    j["checks"] = std::move(arr);
    j["pass"] = pass;
    return j.dump(2) + "\n";
}

}  // namespace hmc
