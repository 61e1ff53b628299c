#include "qprob/evolution.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace qprob {

namespace {
constexpr double k_route_tol_evolution = 1e-10;
constexpr std::size_t k_dense_dim_cap = 4096;

Eigen::VectorXcd phases(const Eigen::VectorXd& eigenvalues, double t, double hbar) {
    Eigen::VectorXcd p(eigenvalues.size());
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
        const double arg = -eigenvalues[k] * t / hbar;
        p[k] = cplx(std::cos(arg), std::sin(arg));
    }
    return p;
}

}  // namespace

HamiltonianMatrix::HamiltonianMatrix(Eigen::MatrixXcd h, double hermiticity_tol)
    : h_(std::move(h)) {
    if (h_.rows() != h_.cols() || h_.rows() < 1) {
        throw DimensionMismatch("Hamiltonian must be a square matrix");
    }
    const double asym = (h_ - h_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > hermiticity_tol * tolerance_scale()) {
        throw NonHermitian("Hamiltonian asymmetry " + std::to_string(asym) +
                           " exceeds tolerance");
    }
}

Propagator::Propagator(Eigen::VectorXd eigenvalues, Eigen::MatrixXcd eigenvectors,
                       double t, double hbar)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)),
      t_(t), hbar_(hbar) {
    if (!(hbar_ > 0.0)) throw Error("hbar must be positive");
}

Eigen::MatrixXcd Propagator::matrix() const {
    const Eigen::VectorXcd p = phases(eigenvalues_, t_, hbar_);
    return eigenvectors_ * p.asDiagonal() * eigenvectors_.adjoint();
}

Eigen::VectorXcd Propagator::apply(const Eigen::VectorXcd& state) const {
    if (state.size() != eigenvalues_.size()) {
        throw DimensionMismatch("state dimension does not match propagator");
    }
    const Eigen::VectorXcd p = phases(eigenvalues_, t_, hbar_);
    return eigenvectors_ * p.cwiseProduct(eigenvectors_.adjoint() * state);
}

Propagator Propagator::at(double t) const {
    return Propagator(eigenvalues_, eigenvectors_, t, hbar_);
}

Propagator build_propagator(const HamiltonianMatrix& h, double t, double hbar) {
    if (h.dim() > k_dense_dim_cap) {
        throw Error("dense eigendecomposition capped at dimension 4096");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
    if (es.info() != Eigen::Success) {
        throw EigenDecompositionFailure("eigendecomposition did not converge");
    }
    return Propagator(es.eigenvalues(), es.eigenvectors(), t, hbar);
}

Eigen::VectorXcd evolve(const Eigen::VectorXcd& state, const Propagator& u) {
    return u.apply(state);
}

namespace {

std::vector<std::uint8_t> event_mask(const Event& a, std::size_t dim) { return a.mask(dim); }

double population_sum(const Eigen::VectorXcd& state, const std::vector<std::uint8_t>& mask) {
    KahanSum sum;
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        if (mask[std::size_t(i)]) sum.add(std::norm(state[i]));
    }
    return sum.value();
}

double weighted_population_sum(const Eigen::VectorXcd& state, std::span<const double> obs,
                               const std::vector<std::uint8_t>& mask) {
    KahanSum sum;
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        if (mask[std::size_t(i)]) sum.add(obs[std::size_t(i)] * std::norm(state[i]));
    }
    return sum.value();
}

// Dense route: Tr(diag(obs) rho I_A) / Tr(rho I_A) with rho built as the
// full outer product of the evolved state.
double ce_matrix_route(const Eigen::VectorXcd& state, std::span<const double> obs,
                       const Event& a) {
    const auto mask = event_mask(a, std::size_t(state.size()));
    const Eigen::MatrixXcd rho = state * state.adjoint();
    Eigen::MatrixXcd obs_m = Eigen::MatrixXcd::Zero(state.size(), state.size());
    Eigen::MatrixXcd ind = Eigen::MatrixXcd::Zero(state.size(), state.size());
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        obs_m(i, i) = obs[std::size_t(i)];
        ind(i, i) = mask[std::size_t(i)] ? 1.0 : 0.0;
    }
    const cplx num = (obs_m * rho * ind).trace();
    const cplx den = (rho * ind).trace();
    if (den.real() <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + a.describe());
    }
    return num.real() / den.real();
}

}  // namespace

double ce_static(const Eigen::VectorXcd& state, std::span<const double> obs, const Event& a) {
    if (obs.size() != std::size_t(state.size())) {
        throw DimensionMismatch("observable length does not match state dimension");
    }
    const auto mask = event_mask(a, std::size_t(state.size()));
    const double den = population_sum(state, mask);
    if (den <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + a.describe());
    }
    return weighted_population_sum(state, obs, mask) / den;
}

double ap_static(const Eigen::VectorXcd& state, const Event& a) {
    return population_sum(state, event_mask(a, std::size_t(state.size())));
}

double cp_static(const Eigen::VectorXcd& state, const Event& a, const Event& b) {
    const double pb = ap_static(state, b);
    if (pb <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + b.describe());
    }
    return ap_static(state, event_intersect(a, b)) / pb;
}

double ce_t(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h,
            std::span<const double> obs, const Event& a, double t, double hbar) {
    const Eigen::VectorXcd st = build_propagator(h, t, hbar).apply(s0);
    const double value = ce_static(st, obs, a);
#ifndef NDEBUG
    assert(std::abs(value - ce_matrix_route(st, obs, a)) <
           k_route_tol_evolution * tolerance_scale());
#endif
    return value;
}

double ap_t(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h, const Event& a,
            double t, double hbar) {
    return ap_static(build_propagator(h, t, hbar).apply(s0), a);
}

double cp_t(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h, const Event& a,
            const Event& b, double t, double hbar) {
    return cp_static(build_propagator(h, t, hbar).apply(s0), a, b);
}

ConditionedReport ce_t_report(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h,
                              std::span<const double> obs, const Event& a, double t,
                              double hbar) {
    const Eigen::VectorXcd st = build_propagator(h, t, hbar).apply(s0);
    return make_report(Quantity::ce, ce_static(st, obs, a), ce_matrix_route(st, obs, a),
                       k_route_tol_evolution, a.describe());
}

std::vector<TimePoint> time_series(const Eigen::VectorXcd& s0, const HamiltonianMatrix& h,
                                   std::span<const double> obs, const Event& a,
                                   const Event* given, double t0, double t1,
                                   std::size_t steps, double hbar) {
    if (steps < 1) throw Error("time series requires at least one sample");
    const Propagator base = build_propagator(h, 0.0, hbar);
    std::vector<TimePoint> out;
    out.reserve(steps);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < steps; ++i) {
        const double t =
            steps == 1 ? t0 : t0 + (t1 - t0) * double(i) / double(steps - 1);
        const Eigen::VectorXcd st = base.at(t).apply(s0);
        TimePoint p;
        p.t = t;
        p.ap = ap_static(st, a);
        try {
            p.ce = ce_static(st, obs, a);
        } catch (const ZeroConditionEvent&) {
            p.ce = nan;
        }
        if (given != nullptr) {
            try {
                p.cp = cp_static(st, a, *given);
            } catch (const ZeroConditionEvent&) {
                p.cp = nan;
            }
        } else {
            p.cp = p.ap;  // conditioning on the full space
        }
        out.push_back(p);
    }
    return out;
}

}
