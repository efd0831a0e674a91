#pragma once

#include <cstdint>
#include <string>

#include "hmc/cjet.hpp"

namespace hmc {

// Exit codes shared by every subcommand:
//   0  success
//   1  scene error (malformed scene, unknown example, domain mismatch)
//   2  verification failure
//   3  I/O error (unreadable input, unwritable output)
//   4  usage error (bad flags; produced by the CLI front end)
inline constexpr int kExitOk = 0;
inline constexpr int kExitSceneError = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitIoError = 3;
inline constexpr int kExitUsage = 4;

struct GenerateOptions {
    std::string scene_path;
    std::string out_path;
    std::string format;  // "obj" | "ply" | "" (use the scene's)
};

struct VerifyOptions {
    std::string scene_path;
    int samples = 500;
    std::uint64_t seed = 42;
    double tol = -1.0;  // when >= 0, overrides the weingarten threshold
    std::string report_path;  // optional copy of the report
};

struct LocusOptions {
    std::string scene_path;
    std::string out_path;
};

struct ParallelOptions {
    std::string scene_path;
    double t = 0.0;
    std::string out_path;
    std::string format;
};

struct ExampleOptions {
    std::string name;
    double alpha = 2.0;
    Complex k = Complex(4.0, 0.0);
    std::string out_path;
};

int cmd_generate(const GenerateOptions& opt);
int cmd_verify(const VerifyOptions& opt);
int cmd_locus(const LocusOptions& opt);
int cmd_parallel(const ParallelOptions& opt);
int cmd_example(const ExampleOptions& opt);

}  // namespace hmc
