#include "hmc/cli_commands.hpp"

#include <fstream>
#include <iostream>

#include "hmc/sampler.hpp"
#include "hmc/scene.hpp"
#include "hmc/verify.hpp"

namespace hmc {

namespace {

int diagnose(int code, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return code;
}

/// Read + parse a scene, mapping failures onto the exit-code contract.
int load_scene(const std::string& path, SceneFile& out) {
    try {
        out = load_scene_file(path);
        return kExitOk;
    } catch (const SceneError& e) {
        return diagnose(kExitSceneError, e.what());
    } catch (const std::exception& e) {
        return diagnose(kExitIoError, e.what());
    }
}

int write_mesh_file(const FrontMesh& mesh, const std::string& path, const std::string& format) {
    const MeshFormat fmt = format == "ply" ? MeshFormat::ply : MeshFormat::obj;
    try {
        export_mesh(mesh, path, fmt);
        return kExitOk;
    } catch (const std::exception& e) {
        return diagnose(kExitIoError, e.what());
    }
}

int build_and_export(const SceneFile& scene, const std::string& out_path,
                     const std::string& format_override, double t) {
    FrontMesh mesh;
    try {
        mesh = build_mesh(scene.data, scene.data.domain, t);
    } catch (const DomainMismatchError& e) {
        return diagnose(kExitSceneError, e.what());
    } catch (const std::exception& e) {
        return diagnose(kExitSceneError, e.what());
    }
    for (const std::string& w : mesh.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "mesh: " << mesh.vertices.size() << " vertices, " << mesh.faces.size()
              << " faces (" << mesh.stats.total - mesh.stats.valid << " samples excluded, "
              << mesh.stats.singular << " singular)\n";
    const std::string format =
        !format_override.empty() ? format_override : scene.output_format;
    return write_mesh_file(mesh, out_path, format);
}

}  // namespace

int cmd_generate(const GenerateOptions& opt) {
    SceneFile scene;
    if (int rc = load_scene(opt.scene_path, scene); rc != kExitOk) return rc;
    const std::string out = !opt.out_path.empty() ? opt.out_path : scene.output_path;
    if (out.empty())
        return diagnose(kExitSceneError, "no output path (give --out or set [output] path)");
    return build_and_export(scene, out, opt.format, 0.0);
}

int cmd_verify(const VerifyOptions& opt) {
    SceneFile scene;
    if (int rc = load_scene(opt.scene_path, scene); rc != kExitOk) return rc;
    if (opt.tol >= 0.0) scene.tolerances.weingarten = opt.tol;
    VerifyReport report;
    try {
        report = run_verification(scene, opt.samples, opt.seed);
    } catch (const std::exception& e) {
        return diagnose(kExitSceneError, e.what());
    }
    const std::string text = report.to_json();
    std::cout << text;
    if (!opt.report_path.empty()) {
        std::ofstream os(opt.report_path, std::ios::binary);
        os << text;
        if (!os.good()) return diagnose(kExitIoError, "cannot write report: " + opt.report_path);
    }
    return report.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_locus(const LocusOptions& opt) {
    SceneFile scene;
    if (int rc = load_scene(opt.scene_path, scene); rc != kExitOk) return rc;
    std::vector<LocusPolyline> loci;
    try {
        loci = trace_locus(scene.data, scene.data.domain);
    } catch (const std::exception& e) {
        return diagnose(kExitSceneError, e.what());
    }
    std::cerr << "locus: " << loci.size() << " polyline(s)\n";
    try {
        export_locus(loci, opt.out_path);
    } catch (const std::exception& e) {
        return diagnose(kExitIoError, e.what());
    }
    return kExitOk;
}

int cmd_parallel(const ParallelOptions& opt) {
    SceneFile scene;
    if (int rc = load_scene(opt.scene_path, scene); rc != kExitOk) return rc;
    return build_and_export(scene, opt.out_path, opt.format, opt.t);
}

int cmd_example(const ExampleOptions& opt) {
    SceneFile scene;
    try {
        scene = make_example_scene(opt.name, opt.alpha, opt.k);
    } catch (const SceneError& e) {
        return diagnose(kExitSceneError, e.what());
    }
    std::ofstream os(opt.out_path, std::ios::binary);
    if (!os) return diagnose(kExitIoError, "cannot open for writing: " + opt.out_path);
    os << scene_to_toml(scene);
    if (!os.good()) return diagnose(kExitIoError, "write failed: " + opt.out_path);
    return kExitOk;
}

}  // namespace hmc
