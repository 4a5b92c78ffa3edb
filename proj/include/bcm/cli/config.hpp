#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "bcm/core.hpp"

namespace bcm::cli {

/// Resolved run configuration. Defaults are the reference grid with N = 10.
struct RunConfig {
    int experiment = 1;  // 1, 2 or 3
    double noise = 0.0;
    std::uint64_t seed = 0;
    int N = 10;
    double dx = 1.0 / 250;
    double dt = 1.0 / 2500;
    double T = 5.0;
    double eps_linearization = 1e-3;  // experiment 3 only
    unsigned threads = 0;             // 0: hardware concurrency
    std::filesystem::path out_dir;

    /// Grid on [-1, 1]; throws ConfigError naming the violated invariant.
    GridSpec grid() const;

    /// Checks every field, including the grid and CFL invariants.
    void validate() const;
};

using KeyValues = std::map<std::string, std::string>;

/// Parses flat `key = value` lines. `#` starts a comment; blank lines are
/// ignored. Throws ConfigError (with `source` and line number) on malformed
/// lines or repeated keys.
KeyValues parse_key_values(std::istream& in, const std::string& source = "config");

KeyValues read_config_file(const std::filesystem::path& path);

/// Applies values onto cfg. Keys: experiment, noise, seed, N, dx, dt, T,
/// eps_linearization, threads. Reals also accept a fraction `p/q`.
/// Unknown keys and unparsable values throw ConfigError.
void apply(RunConfig& cfg, const KeyValues& values);

/// The config-file form of cfg (all keys), so any run can be repeated from it.
KeyValues to_key_values(const RunConfig& cfg);

/// Shortest decimal text that reads back to the same double.
std::string format_real(double v);

}  // namespace bcm::cli
