#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmc/scene.hpp"

namespace hmc {

struct CheckResult {
    std::string name;
    int samples = 0;          // samples the check actually used
    double max_residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string G_source, h_source;
    std::uint64_t seed = 0;
    int samples_requested = 0;
    int valid = 0;
    int invalid = 0;
    int singular = 0;
    std::vector<CheckResult> checks;
    bool pass = false;  // all checks pass and at least half the samples valid

    /// Deterministic structured-text rendering (byte-stable per seed).
    std::string to_json() const;
};

/// Run the whole identity suite on seeded random samples of the scene's
/// domain interior. Thresholds come from the scene tolerances where the
/// scene defines them (weingarten, structure) and are fixed otherwise.
VerifyReport run_verification(const SceneFile& scene, int n_samples, std::uint64_t seed);

}  // namespace hmc
