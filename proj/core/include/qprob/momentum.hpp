#pragma once

#include <Eigen/Dense>
#include <functional>

#include "qprob/event.hpp"

namespace qprob {

enum class Boundary { periodic, zero };
enum class DerivativeScheme { central, spectral };

/// Discretized momentum operator on a uniform grid. The default realization
/// is the second-order central-difference stencil, whose derivative part is
/// exactly antisymmetric under both boundary choices, making the operator
/// Hermitian. A spectral (lattice Fourier) differentiation is available
/// behind the scheme flag.
class MomentumOperator {
public:
    MomentumOperator(UniformGrid grid, double hbar, Boundary boundary,
                     DerivativeScheme scheme = DerivativeScheme::central);

    const UniformGrid& grid() const { return grid_; }
    double hbar() const { return hbar_; }
    Boundary boundary() const { return boundary_; }
    DerivativeScheme scheme() const { return scheme_; }

    std::vector<cplx> apply(std::span<const cplx> psi) const;

    /// Dense matrix with +-hbar/(2i dx) on the off-diagonals (central
    /// scheme); intended for moderate n.
    Eigen::MatrixXcd dense() const;

private:
    UniformGrid grid_;
    double hbar_;
    Boundary boundary_;
    DerivativeScheme scheme_;
};

MomentumOperator build_momentum(const UniformGrid& grid, double hbar, Boundary boundary,
                                DerivativeScheme scheme = DerivativeScheme::central);

/// <psi| p |psi> under the grid quadrature (real up to rounding for the
/// Hermitian stencil).
cplx momentum_expectation(const MomentumOperator& p, const GridState1D& s);

/// <psi| [X, p] |psi>; converges to i hbar on smooth states as dx -> 0.
cplx position_momentum_commutator_expectation(const MomentumOperator& p,
                                              const GridState1D& s);

/// Conjugate momentum lattice of a position grid: spacing
/// dp = 2 pi hbar / (n dx), symmetric (shifted) ordering.
struct MomentumGrid {
    double p0 = 0.0;
    double dp = 1.0;
    std::size_t n = 0;
    double point(std::size_t m) const { return p0 + double(m) * dp; }
};

MomentumGrid conjugate_momentum_grid(const UniformGrid& g, double hbar);

/// Momentum-space amplitudes phi(p_m) = sum_j dx psi_j e^{-i p_m x_j /
/// hbar} / sqrt(2 pi hbar); sum |phi_m|^2 dp = 1 exactly on the lattice.
std::vector<cplx> momentum_amplitudes(const GridState1D& s, double hbar);

/// Complex quasi conditional "probability" of momentum given position:
/// P(p|x) = <Psi|p><p|x> / Psi*(x) on the conjugate lattice. Not a real
/// quantity, but its lattice integral telescopes to exactly 1.
struct QuasiConditionalMomentum {
    MomentumGrid grid;
    std::vector<cplx> values;
    cplx unit_integral;  // sum values * dp; 1 + 0i up to rounding
    double snapped_x = 0.0;
};

/// Throws ZeroAmplitudeAtX when |psi| <= 1e-12 at the snapped position.
QuasiConditionalMomentum quasi_cp_momentum_given_position(const GridState1D& s, double x,
                                                          double hbar = 1.0);

enum class DivergenceVerdict { divergent, conditionally_zero, converged };

const char* to_string(DivergenceVerdict v);

struct RefinementSample {
    std::size_t n = 0;
    double dx = 0.0;
    double snapped_x = 0.0;
    cplx value;        // point-conditioned trace ratio; scales like 1/dx
    double magnitude = 0.0;
    cplx finite_part;  // value * dx; the local-momentum part, finite as dx -> 0
};

struct DivergenceReport {
    double x = 0.0;
    std::vector<RefinementSample> samples;
    std::vector<double> growth;  // |value| ratio per dx halving
    DivergenceVerdict verdict = DivergenceVerdict::converged;
};

/// Point-conditioned momentum average Tr(p rho I_x) / Tr(rho I_x) evaluated
/// on successive dx halvings. The grid surrogate of the derivative-of-delta
/// kernel has entries of size hbar/(2 dx^2); conditioning on a single point
/// leaves one grid-delta factor uncompensated, so away from symmetry points
/// the magnitude grows like 1/dx and the quantity has no limit. The report
/// returns the whole refinement sequence and a verdict, never a bare
/// number. `value * dx` is also recorded: it converges to the local
/// momentum (hbar/i) psi'(x) / psi(x), the finite part of the expression.
///
/// The wavefunction is passed as a callable because each refinement
/// resamples it on a symmetric node-aligned grid over [-halfwidth,
/// halfwidth] (base_n points, doubled per level, keeping 0 a node).
DivergenceReport ce_momentum_given_position(const std::function<cplx(double)>& psi,
                                            double halfwidth, std::size_t base_n,
                                            double x, std::size_t refinements,
                                            double hbar = 1.0);

/// Window-smeared variant: Tr(p rho I_A) / Tr(rho I_A) over a
/// positive-measure interval event, with the folded central-difference
/// stencil. Converges as dx -> 0; exposed as an experiment only — no
/// particular limit is asserted for the point-conditioning case.
cplx ce_momentum_given_window(const GridState1D& s, const Event& window,
                              double hbar = 1.0);

}
