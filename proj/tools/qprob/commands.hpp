#pragma once

#include <cstdint>
#include <string>

namespace qprob::cli {

struct Options {
    std::string config_path;
    std::string out_path;  // empty = stdout
    std::string format;    // "json" | "csv" | "" (per-kind default)
    std::uint64_t seed = 1;
    bool seed_set = false;
    bool timing = false;
};

// Executes one system-kind subcommand. Returns the process exit code:
// 0 success, 1 computation/cross-check failure, 2 config error.
int run_command(const std::string& kind, const Options& opt);

}
