#pragma once

#include <cstdint>
#include <random>

namespace hmc {

/// Uniform double in [lo, hi) from raw 64-bit output, so sampled sequences do
/// not depend on the standard library's distribution implementation.
inline double rng_uniform(std::mt19937_64& gen, double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace hmc
