#pragma once

#include <Eigen/Dense>

#include "qprob/event.hpp"
#include "qprob/report.hpp"

namespace qprob {

/// Hermitian Hamiltonian in the measurement basis (the basis in which
/// events and diagonal observables are specified).
class HamiltonianMatrix {
public:
    explicit HamiltonianMatrix(Eigen::MatrixXcd h, double hermiticity_tol = 1e-12);

    const Eigen::MatrixXcd& matrix() const { return h_; }
    std::size_t dim() const { return std::size_t(h_.rows()); }

private:
    Eigen::MatrixXcd h_;
};

/// Spectral propagator: U(t) = V exp(-i lambda t / hbar) V^dagger from the
/// eigendecomposition of a time-independent Hamiltonian. Exact to rounding,
/// so unitarity and composition hold to machine precision.
class Propagator {
public:
    Propagator(Eigen::VectorXd eigenvalues, Eigen::MatrixXcd eigenvectors, double t,
               double hbar);

    Eigen::MatrixXcd matrix() const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& state) const;
    /// Same spectral data at a different time (no re-decomposition).
    Propagator at(double t) const;

    double time() const { return t_; }
    double hbar() const { return hbar_; }
    std::size_t dim() const { return std::size_t(eigenvalues_.size()); }

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
    double t_, hbar_;
};

/// Dense eigendecomposition; dimension capped at 4096.
Propagator build_propagator(const HamiltonianMatrix& h, double t, double hbar = 1.0);

/// |psi(t)> = U(t) |psi(0)>; norm preserved.
Eigen::VectorXcd evolve(const Eigen::VectorXcd& state, const Propagator& u);

// Static conditional quantities read from a state vector's populations in
// the measurement basis.
double ce_static(const Eigen::VectorXcd& state, std::span<const double> obs, const Event& a);
double ap_static(const Eigen::VectorXcd& state, const Event& a);
double cp_static(const Eigen::VectorXcd& state, const Event& a, const Event& b);

// Time-indexed quantities from the evolved state.
double ce_t(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h,
            std::span<const double> obs, const Event& a, double t, double hbar = 1.0);
double ap_t(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h, const Event& a,
            double t, double hbar = 1.0);
double cp_t(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h, const Event& a,
            const Event& b, double t, double hbar = 1.0);

/// Population route cross-checked against the dense matrix-trace route
/// (observable times evolved density times indicator).
ConditionedReport ce_t_report(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h,
                              std::span<const double> obs, const Event& a, double t,
                              double hbar = 1.0);

struct TimePoint {
    double t = 0.0;
    double ce = 0.0;  // NaN where the conditioning event has no mass
    double ap = 0.0;
    double cp = 0.0;
};

/// Evaluates CE/AP/CP on an even time mesh with a single eigendecomposition.
/// `given` may be null (conditioning on the full space, so cp == ap).
std::vector<TimePoint> time_series(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h,
                                   std::span<const double> obs, const Event& a,
                                   const Event* given, double t0, double t1,
                                   std::size_t steps, double hbar = 1.0);

}
