#include "qprob/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qprob {

namespace {

constexpr double k_point_amplitude_tol = 1e-12;

// Unnormalized lattice transform F_m = sum_j v_j e^{-2 pi i m j / n}.
std::vector<cplx> lattice_dft(std::span<const cplx> v, int sign) {
    const std::size_t n = v.size();
    std::vector<cplx> out(n);
    const double w = double(sign) * 2.0 * std::numbers::pi / double(n);
    for (std::size_t m = 0; m < n; ++m) {
        KahanSumCplx sum;
        for (std::size_t j = 0; j < n; ++j) {
            const double arg = w * double(m) * double(j);
            sum.add(v[j] * cplx(std::cos(arg), std::sin(arg)));
        }
        out[m] = sum.value();
    }
    return out;
}

}  // namespace

MomentumOperator::MomentumOperator(UniformGrid grid, double hbar, Boundary boundary,
                                   DerivativeScheme scheme)
    : grid_(grid), hbar_(hbar), boundary_(boundary), scheme_(scheme) {
    if (grid_.n < 3) throw GridTooSmall("momentum stencil requires at least 3 points");
    if (!(hbar_ > 0.0)) throw Error("hbar must be positive");
}

MomentumOperator build_momentum(const UniformGrid& grid, double hbar, Boundary boundary,
                                DerivativeScheme scheme) {
    return MomentumOperator(grid, hbar, boundary, scheme);
}

std::vector<cplx> MomentumOperator::apply(std::span<const cplx> psi) const {
    if (psi.size() != grid_.n) {
        throw DimensionMismatch("state length does not match operator grid");
    }
    const std::size_t n = grid_.n;
    std::vector<cplx> out(n);

    if (scheme_ == DerivativeScheme::spectral) {
        // differentiate on the Fourier lattice: multiply by hbar k with the
        // standard wrapped frequencies
        auto phi = lattice_dft(psi, -1);
        const double base = 2.0 * std::numbers::pi / (double(n) * grid_.dx);
        for (std::size_t m = 0; m < n; ++m) {
            const double k =
                (m <= n / 2 ? double(m) : double(m) - double(n)) * base;
            phi[m] *= hbar_ * k;
        }
        out = lattice_dft(phi, +1);
        const double inv_n = 1.0 / double(n);
        for (auto& v : out) v *= inv_n;
        return out;
    }

    // (p psi)_j = (hbar / i) (psi_{j+1} - psi_{j-1}) / (2 dx)
    const cplx factor = cplx(0.0, -hbar_ / (2.0 * grid_.dx));
    for (std::size_t j = 0; j < n; ++j) {
        cplx next, prev;
        if (boundary_ == Boundary::periodic) {
            next = psi[(j + 1) % n];
            prev = psi[(j + n - 1) % n];
        } else {
            next = j + 1 < n ? psi[j + 1] : cplx(0.0);
            prev = j > 0 ? psi[j - 1] : cplx(0.0);
        }
        out[j] = factor * (next - prev);
    }
    return out;
}

Eigen::MatrixXcd MomentumOperator::dense() const {
    const std::size_t n = grid_.n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
    if (scheme_ == DerivativeScheme::spectral) {
        // columns are the operator applied to basis vectors
        std::vector<cplx> e(n, cplx(0.0));
        for (std::size_t k = 0; k < n; ++k) {
            e[k] = cplx(1.0);
            const auto col = apply(e);
            for (std::size_t j = 0; j < n; ++j) m(Eigen::Index(j), Eigen::Index(k)) = col[j];
            e[k] = cplx(0.0);
        }
        return m;
    }
    const cplx up = cplx(0.0, -hbar_ / (2.0 * grid_.dx));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        m(Eigen::Index(j), Eigen::Index(j + 1)) = up;
        m(Eigen::Index(j + 1), Eigen::Index(j)) = -up;
    }
    if (boundary_ == Boundary::periodic) {
        m(Eigen::Index(n - 1), Eigen::Index(0)) = up;
        m(Eigen::Index(0), Eigen::Index(n - 1)) = -up;
    }
    return m;
}

cplx momentum_expectation(const MomentumOperator& p, const GridState1D& s) {
    if (!(s.grid() == p.grid())) {
        throw DimensionMismatch("state grid does not match operator grid");
    }
    const auto pv = p.apply(s.psi());
    KahanSumCplx sum;
    for (std::size_t j = 0; j < s.size(); ++j) {
        sum.add(std::conj(s.psi(j)) * pv[j] * s.grid().dx);
    }
    return sum.value();
}

cplx position_momentum_commutator_expectation(const MomentumOperator& p,
                                              const GridState1D& s) {
    if (!(s.grid() == p.grid())) {
        throw DimensionMismatch("state grid does not match operator grid");
    }
    const std::size_t n = s.size();
    std::vector<cplx> x_psi(n);
    for (std::size_t j = 0; j < n; ++j) x_psi[j] = s.grid().point(j) * s.psi(j);
    const auto p_psi = p.apply(s.psi());
    const auto p_x_psi = p.apply(x_psi);
    KahanSumCplx sum;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx commutator_j = s.grid().point(j) * p_psi[j] - p_x_psi[j];
        sum.add(std::conj(s.psi(j)) * commutator_j * s.grid().dx);
    }
    return sum.value();
}

MomentumGrid conjugate_momentum_grid(const UniformGrid& g, double hbar) {
    MomentumGrid mg;
    mg.n = g.n;
    mg.dp = 2.0 * std::numbers::pi * hbar / (double(g.n) * g.dx);
    mg.p0 = -double(g.n / 2) * mg.dp;
    return mg;
}

std::vector<cplx> momentum_amplitudes(const GridState1D& s, double hbar) {
    const UniformGrid& g = s.grid();
    const MomentumGrid mg = conjugate_momentum_grid(g, hbar);
    const double norm = g.dx / std::sqrt(2.0 * std::numbers::pi * hbar);
    std::vector<cplx> phi(mg.n);
    for (std::size_t m = 0; m < mg.n; ++m) {
        const double pm = mg.point(m);
        KahanSumCplx sum;
        for (std::size_t j = 0; j < g.n; ++j) {
            const double arg = -pm * g.point(j) / hbar;
            sum.add(s.psi(j) * cplx(std::cos(arg), std::sin(arg)));
        }
        phi[m] = sum.value() * norm;
    }
    return phi;
}

QuasiConditionalMomentum quasi_cp_momentum_given_position(const GridState1D& s, double x,
                                                          double hbar) {
    const UniformGrid& g = s.grid();
    const std::size_t jx = g.nearest_index(x);
    const cplx psi_x = s.psi(jx);
    if (std::abs(psi_x) <= k_point_amplitude_tol) {
        throw ZeroAmplitudeAtX("wavefunction amplitude vanishes at the conditioning point");
    }

    QuasiConditionalMomentum out;
    out.grid = conjugate_momentum_grid(g, hbar);
    out.snapped_x = g.point(jx);
    const auto phi = momentum_amplitudes(s, hbar);
    const double plane_norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * hbar);
    const cplx inv_psi_conj = 1.0 / std::conj(psi_x);

    out.values.resize(out.grid.n);
    KahanSumCplx integral;
    for (std::size_t m = 0; m < out.grid.n; ++m) {
        const double arg = -out.grid.point(m) * out.snapped_x / hbar;
        const cplx bra_p_x = plane_norm * cplx(std::cos(arg), std::sin(arg));
        out.values[m] = std::conj(phi[m]) * bra_p_x * inv_psi_conj;
        integral.add(out.values[m] * out.grid.dp);
    }
    out.unit_integral = integral.value();
    return out;
}

const char* to_string(DivergenceVerdict v) {
    switch (v) {
        case DivergenceVerdict::divergent: return "divergent";
        case DivergenceVerdict::conditionally_zero: return "conditionally-zero";
        case DivergenceVerdict::converged: return "converged";
    }
    return "?";
}

namespace {

constexpr double k_conditionally_zero_tol = 1e-8;
constexpr double k_growth_factor = 1.2;

}  // namespace

DivergenceReport ce_momentum_given_position(const std::function<cplx(double)>& psi,
                                            double halfwidth, std::size_t base_n,
                                            double x, std::size_t refinements,
                                            double hbar) {
    if (base_n < 3) throw GridTooSmall("refinement base grid requires at least 3 points");
    if (!(halfwidth > 0.0)) throw Error("halfwidth must be positive");

    DivergenceReport report;
    report.x = x;

    for (std::size_t level = 0; level <= refinements; ++level) {
        const std::size_t n = ((base_n - 1) << level) + 1;  // keeps 0 a node
        const UniformGrid grid = UniformGrid::node_aligned(0.0, halfwidth, n);
        std::vector<cplx> samples(n);
        for (std::size_t j = 0; j < n; ++j) samples[j] = psi(grid.point(j));
        const GridState1D state(grid, std::move(samples));

        const std::size_t jx = grid.nearest_index(x);
        if (jx == 0 || jx + 1 >= n) {
            throw Error("conditioning point too close to the grid edge");
        }
        const double density = state.density(jx);
        if (density <= k_zero_condition_tol) {
            throw ZeroConditionEvent("wavefunction density vanishes at the conditioning point");
        }

        // Numerator: derivative-of-delta kernel (entries hbar/(2 dx^2))
        // contracted with rho and the single-point indicator. The point
        // indicator contributes its density weight 1/dx only once, so one
        // grid-delta factor survives and the ratio scales like 1/dx.
        const double dx = grid.dx;
        const cplx stencil = cplx(0.0, -hbar / (2.0 * dx * dx)) *
                             (state.psi(jx + 1) - state.psi(jx - 1));
        const cplx numerator = stencil * std::conj(state.psi(jx));
        const cplx value = numerator / density;

        RefinementSample sample;
        sample.n = n;
        sample.dx = dx;
        sample.snapped_x = grid.point(jx);
        sample.value = value;
        sample.magnitude = std::abs(value);
        sample.finite_part = value * dx;
        report.samples.push_back(sample);
    }

    for (std::size_t i = 0; i + 1 < report.samples.size(); ++i) {
        const double prev = report.samples[i].magnitude;
        const double next = report.samples[i + 1].magnitude;
        report.growth.push_back(prev > 0.0 ? next / prev : 0.0);
    }

    const bool all_zero = std::all_of(
        report.samples.begin(), report.samples.end(),
        [](const RefinementSample& s) { return s.magnitude < k_conditionally_zero_tol; });
    if (all_zero) {
        report.verdict = DivergenceVerdict::conditionally_zero;
    } else {
        const bool growing =
            !report.growth.empty() &&
            std::all_of(report.growth.begin(), report.growth.end(),
                        [](double r) { return r >= k_growth_factor; });
        report.verdict =
            growing ? DivergenceVerdict::divergent : DivergenceVerdict::converged;
    }
    return report;
}

cplx ce_momentum_given_window(const GridState1D& s, const Event& window, double hbar) {
    const auto mask = window.mask(s.grid());
    const MomentumOperator p(s.grid(), hbar, Boundary::zero);
    const auto pv = p.apply(s.psi());
    KahanSumCplx num;
    KahanSum den;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (!mask[j]) continue;
        num.add(std::conj(s.psi(j)) * pv[j] * s.grid().dx);
        den.add(s.cell_weight(j));
    }
    if (den.value() <= k_zero_condition_tol) {
        throw ZeroConditionEvent("window event has probability <= 1e-14: " + window.describe());
    }
    return num.value() / den.value();
}

}
