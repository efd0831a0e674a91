#include "hmc/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "hmc/parallel.hpp"

namespace hmc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool full_circle(const DomainSpec& spec) { return spec.kind != DomainKind::sector; }

void run_rows(int n_rows, const std::function<void(int)>& row_fn) {
    unsigned workers = std::thread::hardware_concurrency();
    workers = std::min(workers == 0 ? 1u : workers, 8u);
    if (workers <= 1 || n_rows < 16) {
        for (int i = 0; i < n_rows; ++i) row_fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = static_cast<int>(w); i < n_rows; i += static_cast<int>(workers))
                row_fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::vector<double> radial_stations(const DomainSpec& spec) {
    if (spec.n_r < 2) throw EvalError("degenerate domain: n_r < 2");
    const double lo = std::max(spec.r_inner, 0.0) + spec.margin;
    const double hi = spec.r_outer - spec.margin;
    if (!(lo < hi)) throw EvalError("degenerate domain: empty radial range after margin");

    // Interval weights grow geometrically toward the middle, so both ends of
    // the window are sampled more finely than the bulk.
    const int n_iv = spec.n_r - 1;
    std::vector<double> weight(n_iv);
    double total = 0.0;
    for (int i = 0; i < n_iv; ++i) {
        weight[i] = std::pow(spec.r_ratio, std::min(i, n_iv - 1 - i));
        total += weight[i];
    }
    std::vector<double> out(spec.n_r);
    out[0] = lo;
    double acc = 0.0;
    for (int i = 1; i < spec.n_r; ++i) {
        acc += weight[i - 1];
        out[i] = lo + (hi - lo) * (acc / total);
    }
    out.back() = hi;
    return out;
}

std::vector<double> angular_stations(const DomainSpec& spec) {
    if (spec.n_theta < 1) throw EvalError("degenerate domain: n_theta < 1");
    std::vector<double> out(spec.n_theta);
    if (full_circle(spec)) {
        // Midpoint stations: nothing lands on the seam at -pi (also the
        // principal branch cut of fractional powers).
        const double step = kTwoPi / spec.n_theta;
        for (int j = 0; j < spec.n_theta; ++j)
            out[j] = -std::numbers::pi + (j + 0.5) * step;
        return out;
    }
    if (spec.n_theta < 2) throw EvalError("degenerate domain: sector needs n_theta >= 2");
    if (!(spec.theta_min < spec.theta_max))
        throw EvalError("degenerate domain: empty angular range");
    const double step = (spec.theta_max - spec.theta_min) / (spec.n_theta - 1);
    for (int j = 0; j < spec.n_theta; ++j) out[j] = spec.theta_min + j * step;
    return out;
}

std::vector<Complex> sample_domain(const DomainSpec& spec) {
    const auto radii = radial_stations(spec);
    const auto angles = angular_stations(spec);
    std::vector<Complex> out;
    out.reserve(radii.size() * angles.size());
    for (double r : radii)
        for (double th : angles) out.push_back(std::polar(r, th));
    return out;
}

namespace {

void check_cut_consistency(const SceneData& scene, const DomainSpec& spec,
                           std::vector<std::string>& warnings) {
    if (spec.kind != DomainKind::sector) return;
    if (spec.theta_max - spec.theta_min < kTwoPi - 0.5) return;  // no near-closed cut
    const auto radii = radial_stations(spec);
    const double delta = 1e-6;
    for (int k = 0; k < 5; ++k) {
        const double r = radii[(radii.size() - 1) * k / 4];
        const DensityPoint a = densities_at(scene, std::polar(r, spec.theta_min + delta));
        const DensityPoint b = densities_at(scene, std::polar(r, spec.theta_max - delta));
        if (!a.valid || !b.valid) continue;
        if (std::abs(a.eta2 - b.eta2) > 1e-3 * (a.eta2 + b.eta2)) {
            warnings.push_back("pullback metric is not single-valued across the sector cut near r = " +
                               fmt_double(r));
            return;
        }
    }
}

}  // namespace

FrontMesh build_mesh(const SceneData& scene, const DomainSpec& spec, double parallel_t) {
    const auto radii = radial_stations(spec);
    const auto angles = angular_stations(spec);
    const int n_r = static_cast<int>(radii.size());
    const int n_th = static_cast<int>(angles.size());

    std::vector<SurfaceSample> samples(static_cast<std::size_t>(n_r) * n_th);
    run_rows(n_r, [&](int i) {
        for (int j = 0; j < n_th; ++j)
            samples[static_cast<std::size_t>(i) * n_th + j] =
                surface_sample(scene, std::polar(radii[i], angles[j]));
    });

    FrontMesh mesh;
    mesh.stats.total = n_r * n_th;
    std::vector<int> vertex_of(samples.size(), -1);

    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
        const SurfaceSample& s = samples[idx];
        if (!s.valid) {
            switch (s.fault.value_or(FrameFault::overflow)) {
                case FrameFault::h_out_of_disk: ++mesh.stats.invalid_h_domain; break;
                case FrameFault::h_critical: ++mesh.stats.invalid_h_critical; break;
                case FrameFault::g_branch_point: ++mesh.stats.invalid_branch; break;
                default: ++mesh.stats.invalid_overflow; break;
            }
            continue;
        }
        MeshVertex v;
        v.eta2 = s.eta2;
        v.pi2 = s.pi2;
        if (parallel_t != 0.0) {
            const ParallelPoint pp = parallel_point(s.f, s.nu, parallel_t);
            const ParallelCurvatures pc = parallel_curvatures(s.K, s.H, parallel_t);
            v.K = pc.K_t;
            v.H = pc.H_t;
            v.singular = s.is_singular || pc.singular_at_t;
            try {
                v.ball = ball_model(pp.f_t);
            } catch (const EvalError&) {
                ++mesh.stats.invalid_overflow;
                continue;
            }
        } else {
            v.K = s.K;
            v.H = s.H;
            v.singular = s.is_singular;
            try {
                v.ball = ball_model(s.f);
            } catch (const EvalError&) {
                ++mesh.stats.invalid_overflow;
                continue;
            }
        }
        ++mesh.stats.valid;
        if (v.singular) ++mesh.stats.singular;
        vertex_of[idx] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(v);
    }

    if (2 * mesh.stats.valid < mesh.stats.total)
        throw DomainMismatchError("domain mismatch: " +
                                  std::to_string(mesh.stats.total - mesh.stats.valid) + " of " +
                                  std::to_string(mesh.stats.total) + " samples are invalid");

    const int j_count = full_circle(spec) ? n_th : n_th - 1;
    for (int i = 0; i + 1 < n_r; ++i) {
        for (int j = 0; j < j_count; ++j) {
            const int jp = (j + 1) % n_th;
            const int q[4] = {vertex_of[static_cast<std::size_t>(i) * n_th + j],
                              vertex_of[static_cast<std::size_t>(i + 1) * n_th + j],
                              vertex_of[static_cast<std::size_t>(i + 1) * n_th + jp],
                              vertex_of[static_cast<std::size_t>(i) * n_th + jp]};
            if (q[0] < 0 || q[1] < 0 || q[2] < 0 || q[3] < 0) continue;
            mesh.faces.push_back({q[0], q[1], q[2], q[3]});
        }
    }

    check_cut_consistency(scene, spec, mesh.warnings);
    return mesh;
}

// ---- Singular locus tracing ------------------------------------------------

namespace {

struct EdgeCrossing {
    Complex z;
    double residual;
};

// Edge identifiers: radial edge (i, j) joins ring i to ring i+1 at angle j;
// angular edge (i, j) joins angle j to j+1 (mod) on ring i.
std::int64_t edge_key(int type, int i, int j) {
    return (static_cast<std::int64_t>(type) << 42) | (static_cast<std::int64_t>(i) << 21) | j;
}

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

}  // namespace

std::vector<LocusPolyline> trace_locus(const SceneData& scene, const DomainSpec& spec) {
    const auto radii = radial_stations(spec);
    const auto angles = angular_stations(spec);
    const int n_r = static_cast<int>(radii.size());
    const int n_th = static_cast<int>(angles.size());

    std::vector<double> res(static_cast<std::size_t>(n_r) * n_th);
    std::vector<char> ok(res.size());
    run_rows(n_r, [&](int i) {
        for (int j = 0; j < n_th; ++j) {
            const DensityPoint d = densities_at(scene, std::polar(radii[i], angles[j]));
            ok[static_cast<std::size_t>(i) * n_th + j] = d.valid ? 1 : 0;
            res[static_cast<std::size_t>(i) * n_th + j] = d.valid ? d.eta2 - d.pi2 : 0.0;
        }
    });

    auto residual_at = [&](Complex z) -> DensityPoint { return densities_at(scene, z); };

    // Bisect along the z-segment between a and b until the residual is small
    // relative to the densities' scale.
    auto refine = [&](Complex za, double ra, Complex zb, double rb) -> EdgeCrossing {
        int sa = sign_of(ra);
        Complex best = std::abs(ra) < std::abs(rb) ? za : zb;
        double best_res = std::abs(ra) < std::abs(rb) ? ra : rb;
        for (int it = 0; it < 200; ++it) {
            const Complex mid = 0.5 * (za + zb);
            const DensityPoint d = residual_at(mid);
            if (!d.valid) break;
            const double rm = d.eta2 - d.pi2;
            if (std::abs(rm) <= std::abs(best_res)) {
                best = mid;
                best_res = rm;
            }
            if (std::abs(rm) <= 1e-9 * (d.eta2 + d.pi2)) break;
            if (sign_of(rm) == sa) za = mid; else zb = mid;
        }
        return {best, best_res};
    };

    std::map<std::int64_t, int> point_of_edge;
    std::vector<EdgeCrossing> points;
    std::vector<std::array<int, 2>> segments;

    auto grid_z = [&](int i, int j) { return std::polar(radii[i], angles[j]); };
    auto crossing_point = [&](int type, int i, int j) -> int {
        const std::int64_t key = edge_key(type, i, j);
        auto it = point_of_edge.find(key);
        if (it != point_of_edge.end()) return it->second;
        Complex za, zb;
        double ra, rb;
        if (type == 0) {  // radial edge
            za = grid_z(i, j); zb = grid_z(i + 1, j);
            ra = res[static_cast<std::size_t>(i) * n_th + j];
            rb = res[static_cast<std::size_t>(i + 1) * n_th + j];
        } else {  // angular edge
            const int jp = (j + 1) % n_th;
            za = grid_z(i, j); zb = grid_z(i, jp);
            ra = res[static_cast<std::size_t>(i) * n_th + j];
            rb = res[static_cast<std::size_t>(i) * n_th + jp];
        }
        const int idx = static_cast<int>(points.size());
        points.push_back(refine(za, ra, zb, rb));
        point_of_edge.emplace(key, idx);
        return idx;
    };

    const int j_count = full_circle(spec) ? n_th : n_th - 1;
    for (int i = 0; i + 1 < n_r; ++i) {
        for (int j = 0; j < j_count; ++j) {
            const int jp = (j + 1) % n_th;
            const std::size_t i00 = static_cast<std::size_t>(i) * n_th + j;
            const std::size_t i10 = static_cast<std::size_t>(i + 1) * n_th + j;
            const std::size_t i11 = static_cast<std::size_t>(i + 1) * n_th + jp;
            const std::size_t i01 = static_cast<std::size_t>(i) * n_th + jp;
            if (!(ok[i00] && ok[i10] && ok[i11] && ok[i01])) continue;
            const int s0 = sign_of(res[i00]), s1 = sign_of(res[i10]);
            const int s2 = sign_of(res[i11]), s3 = sign_of(res[i01]);

            // Cyclic edge list: bottom (s0,s1), right (s1,s2), top (s2,s3),
            // left (s3,s0).
            struct CellEdge { int type, ei, ej; bool crossed; };
            const CellEdge edges[4] = {{0, i, j, s0 != s1},
                                       {1, i + 1, j, s1 != s2},
                                       {0, i, jp, s2 != s3},
                                       {1, i, j, s3 != s0}};
            int crossed[4], n_crossed = 0;
            for (int e = 0; e < 4; ++e)
                if (edges[e].crossed) crossed[n_crossed++] = e;

            if (n_crossed == 2) {
                const int a = crossing_point(edges[crossed[0]].type, edges[crossed[0]].ei,
                                             edges[crossed[0]].ej);
                const int b = crossing_point(edges[crossed[1]].type, edges[crossed[1]].ei,
                                             edges[crossed[1]].ej);
                segments.push_back({a, b});
            } else if (n_crossed == 4) {
                // Saddle cell: resolve the pairing with the center sample.
                const double rmid = 0.5 * (radii[i] + radii[i + 1]);
                const double tj = angles[j];
                double tjp = angles[jp];
                if (jp == 0) tjp += kTwoPi;
                const DensityPoint c = residual_at(std::polar(rmid, 0.5 * (tj + tjp)));
                const int sc = c.valid ? sign_of(c.eta2 - c.pi2) : s0;
                int pairs[2][2];
                if (sc == s0) {
                    pairs[0][0] = 0; pairs[0][1] = 1;  // isolate corner s1
                    pairs[1][0] = 2; pairs[1][1] = 3;  // isolate corner s3
                } else {
                    pairs[0][0] = 3; pairs[0][1] = 0;  // isolate corner s0
                    pairs[1][0] = 1; pairs[1][1] = 2;  // isolate corner s2
                }
                for (auto& pr : pairs) {
                    const int a = crossing_point(edges[pr[0]].type, edges[pr[0]].ei, edges[pr[0]].ej);
                    const int b = crossing_point(edges[pr[1]].type, edges[pr[1]].ei, edges[pr[1]].ej);
                    segments.push_back({a, b});
                }
            }
        }
    }

    // Chain segments into polylines.
    std::vector<std::vector<int>> segs_at(points.size());
    for (int sidx = 0; sidx < static_cast<int>(segments.size()); ++sidx) {
        segs_at[segments[sidx][0]].push_back(sidx);
        segs_at[segments[sidx][1]].push_back(sidx);
    }
    std::vector<char> used(segments.size(), 0);

    auto walk = [&](int start_seg, int start_pt) {
        std::vector<int> chain{start_pt};
        int seg = start_seg, pt = start_pt;
        for (;;) {
            used[seg] = 1;
            pt = segments[seg][0] == pt ? segments[seg][1] : segments[seg][0];
            chain.push_back(pt);
            int next = -1;
            for (int cand : segs_at[pt])
                if (!used[cand]) { next = cand; break; }
            if (next < 0) break;
            seg = next;
        }
        return chain;
    };

    std::vector<LocusPolyline> out;
    std::vector<int> degree(points.size());
    for (std::size_t p = 0; p < points.size(); ++p)
        degree[p] = static_cast<int>(segs_at[p].size());

    auto emit_chain = [&](const std::vector<int>& chain) {
        LocusPolyline poly;
        poly.closed = chain.size() > 2 && chain.front() == chain.back();
        for (int p : chain) {
            poly.z.push_back(points[p].z);
            poly.residual.push_back(points[p].residual);
            std::array<double, 3> b{0.0, 0.0, 0.0};
            try {
                b = ball_model(immerse(moving_frame(scene, points[p].z)).f);
            } catch (const std::exception&) {
                // keep the z-plane point; ball image unavailable
            }
            poly.ball.push_back(b);
        }
        out.push_back(std::move(poly));
    };

    // Open chains first (start at degree-1 points), then remaining loops.
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (degree[p] != 1) continue;
        for (int sidx : segs_at[p])
            if (!used[sidx]) emit_chain(walk(sidx, static_cast<int>(p)));
    }
    for (int sidx = 0; sidx < static_cast<int>(segments.size()); ++sidx)
        if (!used[sidx]) emit_chain(walk(sidx, segments[sidx][0]));

    return out;
}

// ---- Export ----------------------------------------------------------------

std::string mesh_to_obj(const FrontMesh& mesh) {
    std::string out;
    out += "# front mesh\n";
    out += "# vertices " + std::to_string(mesh.vertices.size()) + " faces " +
           std::to_string(mesh.faces.size()) + "\n";
    for (const MeshVertex& v : mesh.vertices) {
        out += "v " + fmt_double(v.ball[0]) + " " + fmt_double(v.ball[1]) + " " +
               fmt_double(v.ball[2]) + "\n";
        out += "# attr " + fmt_double(v.K) + " " + fmt_double(v.H) + " " +
               (v.singular ? std::string("1") : std::string("0")) + "\n";
    }
    for (const auto& f : mesh.faces) {
        out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " +
               std::to_string(f[2] + 1) + " " + std::to_string(f[3] + 1) + "\n";
    }
    return out;
}

std::string mesh_to_ply(const FrontMesh& mesh) {
    std::string out;
    out += "ply\nformat ascii 1.0\n";
    out += "element vertex " + std::to_string(mesh.vertices.size()) + "\n";
    out += "property double x\nproperty double y\nproperty double z\n";
    out += "property double K\nproperty double H\nproperty uchar singular\n";
    out += "element face " + std::to_string(mesh.faces.size()) + "\n";
    out += "property list uchar int vertex_indices\nend_header\n";
    for (const MeshVertex& v : mesh.vertices) {
        out += fmt_double(v.ball[0]) + " " + fmt_double(v.ball[1]) + " " + fmt_double(v.ball[2]) +
               " " + fmt_double(v.K) + " " + fmt_double(v.H) + " " + (v.singular ? "1" : "0") +
               "\n";
    }
    for (const auto& f : mesh.faces) {
        out += "4 " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " +
               std::to_string(f[2]) + " " + std::to_string(f[3]) + "\n";
    }
    return out;
}

std::string locus_to_json(const std::vector<LocusPolyline>& loci) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const LocusPolyline& poly : loci) {
        nlohmann::ordered_json obj;
        obj["closed"] = poly.closed;
        nlohmann::ordered_json zs = nlohmann::ordered_json::array();
        for (Complex z : poly.z) zs.push_back({z.real(), z.imag()});
        obj["z"] = std::move(zs);
        nlohmann::ordered_json balls = nlohmann::ordered_json::array();
        for (const auto& b : poly.ball) balls.push_back({b[0], b[1], b[2]});
        obj["ball"] = std::move(balls);
        obj["residual"] = poly.residual;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    os.flush();
    if (!os.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void export_mesh(const FrontMesh& mesh, const std::string& path, MeshFormat format) {
    if (mesh.vertices.empty()) throw EvalError("refusing to export an empty mesh");
    write_file(path, format == MeshFormat::obj ? mesh_to_obj(mesh) : mesh_to_ply(mesh));
}

void export_locus(const std::vector<LocusPolyline>& loci, const std::string& path) {
    write_file(path, locus_to_json(loci));
}

}  // namespace hmc
