#pragma once

#include "qprob/discrete.hpp"
#include "qprob/evolution.hpp"
#include "qprob/grid.hpp"

namespace qprob {

/// Gaussian wavepacket: |psi|^2 is the normal density N(center, sigma^2),
/// modulated by a plane-wave phase e^{i k0 x}.
struct Gaussian1D {
    double center = 0.0;
    double sigma = 1.0;
    double k0 = 0.0;
};

cplx gaussian_wavefunction(const Gaussian1D& g, double x);

/// Samples on a cell-centered grid spanning center +- halfwidth (interval
/// endpoints commensurate with the span land on cell edges) and
/// renormalizes on the grid.
GridState1D sample_gaussian_1d(const Gaussian1D& g, double halfwidth, std::size_t n);

/// Separable 2D product of two Gaussian wavepackets on node-aligned grids.
GridState2D sample_product_gaussian(const Gaussian1D& gx, const Gaussian1D& gy,
                                    double halfwidth, std::size_t nx, std::size_t ny);

/// Real square root of the bivariate normal density (zero means); a valid
/// wavefunction whose joint density is the correlated normal law.
struct BivariateNormal {
    double sigma_x = 1.0;
    double sigma_y = 1.0;
    double correlation = 0.0;  // in (-1, 1)
};

GridState2D sample_bivariate_normal(const BivariateNormal& b, double halfwidth,
                                    std::size_t nx, std::size_t ny);

/// Particle-in-a-box eigenstate on [0,lx] x [0,ly]; separable by
/// construction.
struct Box2D {
    int nx_quantum = 1;
    int ny_quantum = 1;
    double lx = 1.0;
    double ly = 1.0;
};

GridState2D sample_box2d(const Box2D& b, std::size_t nx, std::size_t ny);

enum class OscillatorRecipe { ground, thermal, coherent };

/// Harmonic-oscillator spectrum eps_i = (i + 1/2) hbar_omega with one of
/// three amplitude recipes: ground state; thermal weights |c_i|^2 ~
/// e^{-beta eps_i} (param = beta); coherent amplitudes c_i = alpha^i
/// e^{-alpha^2/2}/sqrt(i!) truncated and renormalized (param = alpha).
DiscreteState harmonic_oscillator_state(std::size_t levels, double hbar_omega,
                                        OscillatorRecipe recipe, double param = 0.0);

/// Two-level system with off-diagonal coupling; initial state is the ground
/// basis vector and the default observable is the excited-state indicator.
struct RabiSystem {
    HamiltonianMatrix hamiltonian;
    Eigen::VectorXcd initial;
    std::vector<double> excited_indicator;
};

RabiSystem rabi_preset(double coupling = 1.0);

}
