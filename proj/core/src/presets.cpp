#include "qprob/presets.hpp"

#include <cmath>
#include <numbers>

namespace qprob {

cplx gaussian_wavefunction(const Gaussian1D& g, double x) {
    const double d = x - g.center;
    const double amp = std::pow(2.0 * std::numbers::pi * g.sigma * g.sigma, -0.25) *
                       std::exp(-d * d / (4.0 * g.sigma * g.sigma));
    const double arg = g.k0 * x;
    return amp * cplx(std::cos(arg), std::sin(arg));
}

GridState1D sample_gaussian_1d(const Gaussian1D& g, double halfwidth, std::size_t n) {
    if (!(g.sigma > 0.0)) throw Error("gaussian sigma must be positive");
    const UniformGrid grid = UniformGrid::cell_centered(g.center, halfwidth, n);
    std::vector<cplx> psi(n);
    for (std::size_t j = 0; j < n; ++j) psi[j] = gaussian_wavefunction(g, grid.point(j));
    return GridState1D(grid, std::move(psi));
}

GridState2D sample_product_gaussian(const Gaussian1D& gx, const Gaussian1D& gy,
                                    double halfwidth, std::size_t nx, std::size_t ny) {
    const UniformGrid grid_x = UniformGrid::node_aligned(gx.center, halfwidth, nx);
    const UniformGrid grid_y = UniformGrid::node_aligned(gy.center, halfwidth, ny);
    std::vector<cplx> psi(nx * ny);
    for (std::size_t j = 0; j < nx; ++j) {
        const cplx vx = gaussian_wavefunction(gx, grid_x.point(j));
        for (std::size_t k = 0; k < ny; ++k) {
            psi[j * ny + k] = vx * gaussian_wavefunction(gy, grid_y.point(k));
        }
    }
    return GridState2D(grid_x, grid_y, std::move(psi));
}

GridState2D sample_bivariate_normal(const BivariateNormal& b, double halfwidth,
                                    std::size_t nx, std::size_t ny) {
    if (!(b.sigma_x > 0.0) || !(b.sigma_y > 0.0)) throw Error("sigmas must be positive");
    if (!(std::abs(b.correlation) < 1.0)) throw Error("correlation must lie in (-1, 1)");
    const double rho = b.correlation;
    const double one_minus = 1.0 - rho * rho;
    const double norm =
        1.0 / (2.0 * std::numbers::pi * b.sigma_x * b.sigma_y * std::sqrt(one_minus));

    const UniformGrid grid_x = UniformGrid::node_aligned(0.0, halfwidth, nx);
    const UniformGrid grid_y = UniformGrid::node_aligned(0.0, halfwidth, ny);
    std::vector<cplx> psi(nx * ny);
    for (std::size_t j = 0; j < nx; ++j) {
        const double u = grid_x.point(j) / b.sigma_x;
        for (std::size_t k = 0; k < ny; ++k) {
            const double v = grid_y.point(k) / b.sigma_y;
            const double q = (u * u - 2.0 * rho * u * v + v * v) / one_minus;
            psi[j * ny + k] = std::sqrt(norm * std::exp(-0.5 * q));
        }
    }
    return GridState2D(grid_x, grid_y, std::move(psi));
}

GridState2D sample_box2d(const Box2D& b, std::size_t nx, std::size_t ny) {
    if (b.nx_quantum < 1 || b.ny_quantum < 1) throw Error("box quantum numbers must be >= 1");
    if (!(b.lx > 0.0) || !(b.ly > 0.0)) throw Error("box dimensions must be positive");
    const UniformGrid grid_x = UniformGrid::cell_centered(0.5 * b.lx, 0.5 * b.lx, nx);
    const UniformGrid grid_y = UniformGrid::cell_centered(0.5 * b.ly, 0.5 * b.ly, ny);
    std::vector<cplx> psi(nx * ny);
    for (std::size_t j = 0; j < nx; ++j) {
        const double sx = std::sin(double(b.nx_quantum) * std::numbers::pi *
                                   grid_x.point(j) / b.lx);
        for (std::size_t k = 0; k < ny; ++k) {
            const double sy = std::sin(double(b.ny_quantum) * std::numbers::pi *
                                       grid_y.point(k) / b.ly);
            psi[j * ny + k] = sx * sy;
        }
    }
    return GridState2D(grid_x, grid_y, std::move(psi));
}

DiscreteState harmonic_oscillator_state(std::size_t levels, double hbar_omega,
                                        OscillatorRecipe recipe, double param) {
    if (levels < 1) throw Error("oscillator requires at least one level");
    if (!(hbar_omega > 0.0)) throw Error("hbar_omega must be positive");
    std::vector<double> eps(levels);
    for (std::size_t i = 0; i < levels; ++i) eps[i] = (double(i) + 0.5) * hbar_omega;

    std::vector<cplx> amps(levels, cplx(0.0));
    switch (recipe) {
        case OscillatorRecipe::ground:
            amps[0] = 1.0;
            break;
        case OscillatorRecipe::thermal: {
            if (!(param > 0.0)) throw Error("thermal recipe requires beta > 0");
            for (std::size_t i = 0; i < levels; ++i) {
                amps[i] = std::exp(-0.5 * param * eps[i]);
            }
            break;
        }
        case OscillatorRecipe::coherent: {
            // c_i = alpha^i / sqrt(i!), truncated; construction renormalizes
            double log_term = 0.0;  // log(alpha^i / sqrt(i!))
            for (std::size_t i = 0; i < levels; ++i) {
                if (i > 0) log_term += std::log(std::abs(param)) - 0.5 * std::log(double(i));
                const double sign = (param < 0.0 && i % 2 == 1) ? -1.0 : 1.0;
                amps[i] = sign * std::exp(log_term);
            }
            if (param == 0.0) {
                amps.assign(levels, cplx(0.0));
                amps[0] = 1.0;
            }
            break;
        }
    }
    return DiscreteState(std::move(eps), std::move(amps));
}

RabiSystem rabi_preset(double coupling) {
    Eigen::MatrixXcd h(2, 2);
    h << 0.0, coupling, coupling, 0.0;
    Eigen::VectorXcd initial(2);
    initial << 1.0, 0.0;
    return RabiSystem{HamiltonianMatrix(std::move(h)), std::move(initial), {0.0, 1.0}};
}

}
