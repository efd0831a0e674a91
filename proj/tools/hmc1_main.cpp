#include <iostream>

#include <CLI11.hpp>

#include "hmc/cli_commands.hpp"

namespace {

bool parse_complex_pair(const std::string& text, hmc::Complex& out) {
    const std::size_t comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            out = hmc::Complex(std::stod(text), 0.0);
        } else {
            out = hmc::Complex(std::stod(text.substr(0, comma)),
                               std::stod(text.substr(comma + 1)));
        }
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "hmc1 - surfaces of constant harmonic-mean curvature one in hyperbolic 3-space.\n"
        "Builds fronts from scene files (G, h), verifies their invariants, traces\n"
        "singular loci, and exports meshes in the Poincare ball model.\n\n"
        "Exit codes: 0 success, 1 scene error, 2 verification failure, 3 I/O error,\n"
        "4 usage error."};
    app.require_subcommand(1);

    hmc::GenerateOptions gen_opt;
    CLI::App* gen = app.add_subcommand("generate", "Build a mesh from a scene file");
    gen->add_option("--scene", gen_opt.scene_path, "Scene file (TOML)")->required();
    gen->add_option("--out", gen_opt.out_path, "Output mesh path");
    gen->add_option("--format", gen_opt.format, "Mesh format: obj or ply")
        ->check(CLI::IsMember({"obj", "ply"}));

    hmc::VerifyOptions ver_opt;
    CLI::App* ver = app.add_subcommand("verify", "Run the invariant suite on a scene");
    ver->add_option("--scene", ver_opt.scene_path, "Scene file (TOML)")->required();
    ver->add_option("--samples", ver_opt.samples, "Number of random samples (default 500)");
    ver->add_option("--seed", ver_opt.seed, "RNG seed (default 42)");
    ver->add_option("--tol", ver_opt.tol, "Override the weingarten identity threshold");
    ver->add_option("--report", ver_opt.report_path, "Also write the report to this file");

    hmc::LocusOptions loc_opt;
    CLI::App* loc = app.add_subcommand("locus", "Trace the singular locus of a scene");
    loc->add_option("--scene", loc_opt.scene_path, "Scene file (TOML)")->required();
    loc->add_option("--out", loc_opt.out_path, "Output JSON path")->required();

    hmc::ParallelOptions par_opt;
    CLI::App* par = app.add_subcommand("parallel", "Export the parallel front at distance t");
    par->add_option("--scene", par_opt.scene_path, "Scene file (TOML)")->required();
    par->add_option("--t", par_opt.t, "Hyperbolic distance")->required();
    par->add_option("--out", par_opt.out_path, "Output mesh path")->required();
    par->add_option("--format", par_opt.format, "Mesh format: obj or ply")
        ->check(CLI::IsMember({"obj", "ply"}));

    hmc::ExampleOptions ex_opt;
    std::string k_text;
    CLI::App* ex = app.add_subcommand("example", "Write a gallery scene file");
    ex->add_option("--name", ex_opt.name, "zalpha | expk | joukowski")->required();
    ex->add_option("--alpha", ex_opt.alpha, "Exponent for zalpha (default 2)");
    ex->add_option("--k", k_text, "Coefficient for expk as RE,IM (default 4,0)");
    ex->add_option("--out", ex_opt.out_path, "Output scene path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : hmc::kExitUsage;
    }

    if (gen->parsed()) return hmc::cmd_generate(gen_opt);
    if (ver->parsed()) return hmc::cmd_verify(ver_opt);
    if (loc->parsed()) return hmc::cmd_locus(loc_opt);
    if (par->parsed()) return hmc::cmd_parallel(par_opt);
    if (ex->parsed()) {
        if (!k_text.empty() && !parse_complex_pair(k_text, ex_opt.k)) {
            std::cerr << "error: --k expects RE or RE,IM\n";
            return hmc::kExitUsage;
        }
        return hmc::cmd_example(ex_opt);
    }
    return hmc::kExitUsage;
}
