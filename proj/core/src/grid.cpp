#include "qprob/grid.hpp"

#include <cmath>

namespace qprob {

UniformGrid::UniformGrid(double x0_, double dx_, std::size_t n_)
    : x0(x0_), dx(dx_), n(n_) {
    if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0)) {
        throw Error("grid requires finite x0 and dx > 0");
    }
    if (n < 2) throw GridTooSmall("grid requires at least 2 points");
}

UniformGrid UniformGrid::cell_centered(double center, double halfwidth, std::size_t n) {
    if (!(halfwidth > 0.0)) throw Error("grid halfwidth must be positive");
    const double dx = 2.0 * halfwidth / double(n);
    return UniformGrid(center - halfwidth + 0.5 * dx, dx, n);
}

UniformGrid UniformGrid::node_aligned(double center, double halfwidth, std::size_t n) {
    if (!(halfwidth > 0.0)) throw Error("grid halfwidth must be positive");
    if (n < 2) throw GridTooSmall("node-aligned grid requires at least 2 points");
    const double dx = 2.0 * halfwidth / double(n - 1);
    return UniformGrid(center - halfwidth, dx, n);
}

std::size_t UniformGrid::nearest_index(double x) const {
    const double r = (x - x0) / dx;
    if (r <= 0.0) return 0;
    const auto j = std::size_t(std::llround(r));
    return j >= n ? n - 1 : j;
}

GridState1D::GridState1D(UniformGrid grid, std::vector<cplx> psi)
    : grid_(grid), psi_(std::move(psi)) {
    if (psi_.size() != grid_.n) {
        throw DimensionMismatch("wavefunction length does not match grid");
    }
    normalize_amplitudes(psi_, grid_.dx);
}

double GridState1D::density(std::size_t j) const { return std::norm(psi_[j]); }

double GridState1D::cell_weight(std::size_t j) const {
    return std::norm(psi_[j]) * grid_.dx;
}

double GridState1D::norm_check() const { return norm_squared(psi_, grid_.dx); }

GridState2D::GridState2D(UniformGrid grid_x, UniformGrid grid_y, std::vector<cplx> psi)
    : gx_(grid_x), gy_(grid_y), psi_(std::move(psi)) {
    if (psi_.size() != gx_.n * gy_.n) {
        throw DimensionMismatch("wavefunction size does not match 2D grid");
    }
    normalize_amplitudes(psi_, gx_.dx * gy_.dx);
}

double GridState2D::density(std::size_t j, std::size_t k) const {
    return std::norm(psi_[j * gy_.n + k]);
}

double GridState2D::cell_weight(std::size_t j, std::size_t k) const {
    return std::norm(psi_[j * gy_.n + k]) * gx_.dx * gy_.dx;
}

double GridState2D::norm_check() const { return norm_squared(psi_, gx_.dx * gy_.dx); }

}
