#pragma once

#include <cstdint>
#include <string>

namespace qprob::cli {

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t max_dim = 16;   // cap for randomized discrete dimensions
    std::size_t grid_n = 1024;  // grid size for continuum checks
    std::string only;           // substring filter on invariant names
    // Test hook: adds this to one amplitude after normalization so the
    // normalization invariant must trip.
    double inject_perturbation = 0.0;
};

// Runs every module's invariant suite at randomized desk scale and prints a
// per-invariant pass/fail table. Returns 0 iff all pass.
int run_verify(const VerifyOptions& opt);

}
