#pragma once

#include <string>

#include "qprob/grid.hpp"

namespace qprob {

/// Loads a sampled 1D wavefunction from a text file and renormalizes it on
/// the grid. Format: optional '#' comment lines, three header lines
/// ("x0 <value>", "dx <value>", "n <count>" in any order), then n data rows
/// "index re im" with indices 0..n-1 in order.
GridState1D load_grid_state_1d(const std::string& path);

/// Writes a state in the same format, full precision.
void save_grid_state_1d(const std::string& path, const GridState1D& s);

}
