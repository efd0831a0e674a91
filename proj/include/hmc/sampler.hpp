#pragma once

#include <string>
#include <vector>

#include "hmc/geom.hpp"

namespace hmc {

/// More than half of the sampled points failed the frame preconditions: the
/// scene's functions do not fit the requested window.
struct DomainMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Radial stations in [r_inner + margin, r_outer - margin]; steps grow
/// geometrically away from both ends by spec.r_ratio.
std::vector<double> radial_stations(const DomainSpec& spec);

/// Angular stations: cell midpoints over the full circle for non-sector
/// kinds, inclusive endpoints for sectors.
std::vector<double> angular_stations(const DomainSpec& spec);

/// Row-major polar grid: index i * n_theta + j is ring i, angle j.
/// Throws EvalError on a degenerate spec.
std::vector<Complex> sample_domain(const DomainSpec& spec);

struct MeshVertex {
    std::array<double, 3> ball{};
    double K = 0.0, H = 0.0;
    double eta2 = 0.0, pi2 = 0.0;
    bool singular = false;
};

struct MeshStats {
    int total = 0;
    int valid = 0;
    int singular = 0;
    int invalid_h_domain = 0;   // |h| >= 1
    int invalid_h_critical = 0; // dh/dz = 0
    int invalid_branch = 0;     // dG/dh = 0
    int invalid_overflow = 0;   // overflow / pole / eval failure
};

/// Exportable mesh. Only valid samples become vertices; faces are the grid
/// quads whose four corners are all valid. Faces touching singular vertices
/// are kept (marked per vertex) so a renderer can color the front's creases.
struct FrontMesh {
    std::vector<MeshVertex> vertices;
    std::vector<std::array<int, 4>> faces;
    MeshStats stats;
    std::vector<std::string> warnings;
};

/// Evaluate the scene over the grid and assemble the mesh. With t != 0 the
/// vertices are the parallel points f_t and the K/H attributes are the
/// transported curvatures (eta2/pi2 stay the base-surface densities).
/// Throws DomainMismatchError if more than half the samples are invalid.
FrontMesh build_mesh(const SceneData& scene, const DomainSpec& spec, double parallel_t = 0.0);

/// Connected component of the singular set eta2 = pi2, traced on the grid by
/// marching squares and refined by bisection along cell edges.
struct LocusPolyline {
    std::vector<Complex> z;
    std::vector<std::array<double, 3>> ball;
    std::vector<double> residual;  // eta2 - pi2 at the refined points
    bool closed = false;
};

std::vector<LocusPolyline> trace_locus(const SceneData& scene, const DomainSpec& spec);

enum class MeshFormat { obj, ply };

std::string mesh_to_obj(const FrontMesh& mesh);
std::string mesh_to_ply(const FrontMesh& mesh);
std::string locus_to_json(const std::vector<LocusPolyline>& loci);

/// Throws EvalError on an empty mesh, std::runtime_error on I/O failure.
void export_mesh(const FrontMesh& mesh, const std::string& path, MeshFormat format);
void export_locus(const std::vector<LocusPolyline>& loci, const std::string& path);

/// Shortest round-trip decimal form of v (deterministic across runs).
std::string fmt_double(double v);

}  // namespace hmc
