// Batch front door: table ingestion, parameter scans, reports. All commands
// write <out>/<command>.csv plus a JSON sidecar with the config hash, seed
// and tool version; identical config and seed reproduce the bytes exactly.
#ifndef LBT_CLI_HPP
#define LBT_CLI_HPP

#include <cstdint>
#include <string>

namespace lbt::cli {

inline constexpr const char* kVersion = "lbt 0.1.0";

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    bool empty() const { return n <= 0; }
};

struct RunConfig {
    std::string command;
    std::string table_json; // raw table document
    std::string out_dir = ".";
    double tol = 1e-10;
    std::uint64_t seed = 1;
    GridSpec k1, k2, k;
    int bounces = 100;
    int degree = 8;
    int p = 3, q = 4, denom = 9;
    int starts = 200;
    std::string kernel = "trig";
    int threads = 0; // 0: LBT_THREADS env or hardware
};

/// Exit status: 0 success, 2 config error, 3 numerical failure (the failing
/// grid point is recorded in the sidecar).
int run(const RunConfig& cfg);

/// FNV-1a hash of the canonical config rendering (stable across runs).
std::uint64_t config_hash(const RunConfig& cfg);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

} // namespace lbt::cli

#endif
