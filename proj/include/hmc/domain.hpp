#pragma once

#include <numbers>

namespace hmc {

enum class DomainKind { disk, punctured_disk, annulus, sector };

/// Polar sampling window.
///
/// Full-circle kinds place angles at cell midpoints, so no sample lands on the
/// seam or on the principal branch cut of fractional powers along the negative
/// real axis. Sector kinds honor [theta_min, theta_max] inclusively; the cut
/// for multivalued h is the caller's responsibility. Radii are clamped to
/// [r_inner + margin, r_outer - margin], with radial steps growing
/// geometrically away from both ends (ratio r_ratio) so the ends are resolved
/// more finely.
struct DomainSpec {
    DomainKind kind = DomainKind::disk;
    double r_inner = 0.0;
    double r_outer = 1.0;
    int n_r = 128;
    int n_theta = 128;
    double theta_min = -std::numbers::pi;
    double theta_max = std::numbers::pi;
    double margin = 1e-3;
    double r_ratio = 1.05;
};

}  // namespace hmc
