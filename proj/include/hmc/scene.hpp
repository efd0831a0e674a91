#pragma once

#include <string>

#include "hmc/weier.hpp"

namespace hmc {

/// Malformed or out-of-contract scene file.
struct SceneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double weingarten = 1e-8;
    double structure = 1e-6;
    double locus = 1e-3;
};

/// In-memory form of a scene file:
///
///   [functions]            # required
///   G = "z+1/z"
///   h = "z"
///   [domain]               # optional, defaults below
///   kind = "annulus"       # disk | punctured_disk | annulus | sector
///   r_inner = 0.05
///   r_outer = 0.98
///   n_r = 128
///   n_theta = 128
///   theta_min = -3.14
///   theta_max = 3.14
///   margin = 0.001
///   [output]               # optional
///   format = "obj"         # obj | ply
///   path = "front.obj"
///   [tolerances]           # optional
///   weingarten = 1e-8
///   structure = 1e-6
///   locus = 1e-3
///
/// Unknown tables and keys are rejected.
struct SceneFile {
    SceneData data;
    std::string G_source, h_source;
    std::string output_format = "obj";
    std::string output_path;
    Tolerances tolerances;
};

SceneFile parse_scene_text(const std::string& text);

/// Throws SceneError for malformed content; std::runtime_error when the file
/// cannot be read at all.
SceneFile load_scene_file(const std::string& path);

std::string scene_to_toml(const SceneFile& scene);

/// Gallery scenes:
///   zalpha    -> (G, h) = (z, z^alpha) on the disk (punctured / one sector
///                sheet when alpha requires it)
///   expk      -> (G, h) = (exp(k z), z) on the disk
///   joukowski -> (G, h) = (z + 1/z, z) on an annulus avoiding the pole
/// Throws SceneError for an unknown name.
SceneFile make_example_scene(const std::string& name, double alpha = 2.0,
                             Complex k = Complex(4.0, 0.0));

}  // namespace hmc
