#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qprob/errors.hpp"
#include "qprob/numeric.hpp"

namespace qprob {

/// Uniform 1D grid. Point j sits at x0 + j*dx and carries midpoint
/// quadrature weight dx.
struct UniformGrid {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n = 2;

    UniformGrid() = default;
    UniformGrid(double x0_, double dx_, std::size_t n_);

    double point(std::size_t j) const { return x0 + double(j) * dx; }
    double left_edge() const { return x0 - 0.5 * dx; }
    double right_edge() const { return point(n - 1) + 0.5 * dx; }
    double span() const { return double(n) * dx; }

    /// n cells tiling [center-halfwidth, center+halfwidth]; points are cell
    /// centers, so interval endpoints commensurate with dx land on cell edges.
    static UniformGrid cell_centered(double center, double halfwidth, std::size_t n);

    /// n points from center-halfwidth to center+halfwidth inclusive; for odd
    /// n the center itself is a grid point.
    static UniformGrid node_aligned(double center, double halfwidth, std::size_t n);

    /// Index of the grid point nearest to x, clamped to [0, n).
    std::size_t nearest_index(double x) const;

    bool operator==(const UniformGrid&) const = default;
};

/// Sampled wavefunction on a uniform grid, renormalized on construction so
/// that sum |psi_j|^2 dx = 1.
class GridState1D {
public:
    GridState1D(UniformGrid grid, std::vector<cplx> psi);

    const UniformGrid& grid() const { return grid_; }
    std::size_t size() const { return psi_.size(); }
    std::span<const cplx> psi() const { return psi_; }
    cplx psi(std::size_t j) const { return psi_[j]; }

    /// Born probability density |psi_j|^2 at grid point j.
    double density(std::size_t j) const;
    /// Cell probability |psi_j|^2 dx.
    double cell_weight(std::size_t j) const;
    /// sum |psi_j|^2 dx (1 up to rounding).
    double norm_check() const;

private:
    UniformGrid grid_;
    std::vector<cplx> psi_;
};

/// Sampled 2D wavefunction, row-major over x: psi(j,k) = data[j*ny + k].
class GridState2D {
public:
    GridState2D(UniformGrid grid_x, UniformGrid grid_y, std::vector<cplx> psi);

    const UniformGrid& grid_x() const { return gx_; }
    const UniformGrid& grid_y() const { return gy_; }
    std::size_t nx() const { return gx_.n; }
    std::size_t ny() const { return gy_.n; }
    std::span<const cplx> psi() const { return psi_; }
    cplx psi(std::size_t j, std::size_t k) const { return psi_[j * gy_.n + k]; }

    double density(std::size_t j, std::size_t k) const;
    double cell_weight(std::size_t j, std::size_t k) const;
    double cell_area() const { return gx_.dx * gy_.dx; }
    double norm_check() const;

private:
    UniformGrid gx_, gy_;
    std::vector<cplx> psi_;
};

}
