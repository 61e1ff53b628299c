#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "qprob/continuum.hpp"
#include "qprob/discrete.hpp"
#include "qprob/evolution.hpp"
#include "qprob/fock.hpp"
#include "qprob/momentum.hpp"
#include "qprob/presets.hpp"
#include "qprob/rng.hpp"

namespace qprob::cli {

namespace {

using CheckFn = std::function<std::optional<std::string>(const VerifyOptions&, SplitMix64&)>;

struct Check {
    const char* name;
    CheckFn fn;
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

double tol(double base) { return base * tolerance_scale(); }

std::vector<cplx> random_amplitudes(SplitMix64& rng, std::size_t dim) {
    std::vector<cplx> amps(dim);
    for (auto& a : amps) a = rng.amplitude();
    return amps;
}

DiscreteState random_discrete(SplitMix64& rng, std::size_t dim) {
    std::vector<double> eps(dim);
    for (auto& e : eps) e = rng.uniform(-4.0, 4.0);
    return DiscreteState(std::move(eps), random_amplitudes(rng, dim));
}

Event random_event(SplitMix64& rng, std::size_t dim, bool nonempty) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < dim; ++i) {
        if (rng.coin()) idx.push_back(i);
    }
    if (nonempty && idx.empty()) idx.push_back(rng.index(dim));
    return Event::discrete(std::move(idx));
}

// ----------------------------------------------------------- probability_core

std::optional<std::string> check_amplitude_normalization(const VerifyOptions& opt,
                                                         SplitMix64& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        auto amps = random_amplitudes(rng, 2 + rng.index(opt.max_dim - 1));
        normalize_amplitudes(amps);
        if (opt.inject_perturbation != 0.0) {
            amps[0] += opt.inject_perturbation;  // sabotage hook
        }
        const double n2 = norm_squared(amps);
        if (std::abs(n2 - 1.0) > tol(1e-12)) {
            return fmt("norm^2 = %.17g after normalization", n2);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_projector_idempotence(const VerifyOptions& opt,
                                                       SplitMix64& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + rng.index(opt.max_dim - 1);
        const auto mask = indicator(random_event(rng, dim, false), dim);
        auto v = random_amplitudes(rng, dim);
        auto once = v;
        mask.apply(once);
        auto twice = once;
        mask.apply(twice);
        if (once != twice) return std::string("projector changed a vector it had fixed");
    }
    return std::nullopt;
}

std::optional<std::string> check_intersection_homomorphism(const VerifyOptions& opt,
                                                           SplitMix64& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + rng.index(opt.max_dim - 1);
        const Event a = random_event(rng, dim, false);
        const Event b = random_event(rng, dim, false);
        if (event_intersect(a, b).mask(dim) != indicator(a, dim).compose(indicator(b, dim)).flags) {
            return std::string("indicator(A∩B) != indicator(A)*indicator(B)");
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_trace_monotonicity(const VerifyOptions& opt,
                                                    SplitMix64& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + rng.index(opt.max_dim - 1);
        const DensityOperator rho(random_amplitudes(rng, dim));
        const Event a = random_event(rng, dim, false);
        auto superset = a.mask(dim);
        std::vector<std::size_t> extended;
        for (std::size_t i = 0; i < dim; ++i) {
            if (superset[i] || rng.coin()) extended.push_back(i);
        }
        const double pa = indicator_trace(rho, a);
        const double pb = indicator_trace(rho, Event::discrete(extended));
        if (pa > pb + tol(1e-12)) return fmt("P(A) = %.17g > P(B) = %.17g for A ⊆ B", pa, pb);
    }
    return std::nullopt;
}

std::optional<std::string> check_trace_additivity(const VerifyOptions& opt,
                                                  SplitMix64& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + rng.index(opt.max_dim - 1);
        const DensityOperator rho(random_amplitudes(rng, dim));
        std::vector<std::size_t> left, right, both;
        for (std::size_t i = 0; i < dim; ++i) {
            if (!rng.coin()) continue;
            both.push_back(i);
            (rng.coin() ? left : right).push_back(i);
        }
        const double whole = indicator_trace(rho, Event::discrete(both));
        const double parts = indicator_trace(rho, Event::discrete(left)) +
                             indicator_trace(rho, Event::discrete(right));
        if (std::abs(whole - parts) > tol(1e-12)) {
            return fmt("P(A∪B) = %.17g vs P(A)+P(B) = %.17g", whole, parts);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_unit_trace_conditioning(const VerifyOptions& opt,
                                                         SplitMix64& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + rng.index(opt.max_dim - 1);
        const DensityOperator rho(random_amplitudes(rng, dim));
        const Event x = random_event(rng, dim, false);
        const Event y = random_event(rng, dim, true);
        const double py = indicator_trace(rho, y);
        if (py <= 1e-10) continue;
        // renormalize the conditioned weights by hand and trace the X mask
        const auto mx = x.mask(dim);
        const auto my = y.mask(dim);
        double by_hand = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            if (mx[i] && my[i]) by_hand += rho.weight(i) / py;
        }
        const double viaCdo = normalized_cdo_trace(rho, x, y);
        if (std::abs(viaCdo - by_hand) > tol(1e-12)) {
            return fmt("normalized trace %.17g vs unit-trace route %.17g", viaCdo, by_hand);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------- spectral_discrete

std::optional<std::string> check_discrete_routes(const VerifyOptions& opt, SplitMix64& rng) {
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 2 + rng.index(opt.max_dim - 1);
        const auto s = random_discrete(rng, dim);
        const Event a = random_event(rng, dim, true);
        if (absolute_probability(s, a) < 1e-10) continue;
        const auto r = ce_report(s, a);
        if (!r.ok) return fmt("CE route discrepancy %.3e", r.discrepancy);
    }
    return std::nullopt;
}

std::optional<std::string> check_total_expectation(const VerifyOptions& opt,
                                                   SplitMix64& rng) {
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t dim = 3 + rng.index(opt.max_dim - 2);
        const auto s = random_discrete(rng, dim);
        std::vector<std::vector<std::size_t>> cells(3);
        for (std::size_t i = 0; i < dim; ++i) cells[rng.index(3)].push_back(i);
        double total = 0.0;
        for (const auto& cell : cells) {
            const Event a = Event::discrete(cell);
            const double p = absolute_probability(s, a);
            if (p <= 1e-14) continue;
            total += p * conditional_expectation(s, a);
        }
        if (std::abs(total - expectation(s)) > tol(1e-12)) {
            return fmt("partition total %.17g vs expectation %.17g", total, expectation(s));
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_ce_bounds(const VerifyOptions& opt, SplitMix64& rng) {
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 2 + rng.index(opt.max_dim - 1);
        const auto s = random_discrete(rng, dim);
        const Event a = random_event(rng, dim, true);
        if (absolute_probability(s, a) <= 1e-14) continue;
        const double ce = conditional_expectation(s, a);
        double lo = 1e300, hi = -1e300;
        const auto mask = a.mask(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (!mask[i]) continue;
            lo = std::min(lo, s.eigenvalue(i));
            hi = std::max(hi, s.eigenvalue(i));
        }
        if (ce < lo - tol(1e-12) || ce > hi + tol(1e-12)) {
            return fmt("CE %.17g escapes [min, max] of the event", ce);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_bayes(const VerifyOptions& opt, SplitMix64& rng) {
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 2 + rng.index(opt.max_dim - 1);
        const auto s = random_discrete(rng, dim);
        const Event a = random_event(rng, dim, false);
        const Event b = random_event(rng, dim, true);
        if (absolute_probability(s, b) <= 1e-14) continue;
        const double lhs = conditional_probability(s, a, b) * absolute_probability(s, b);
        const double rhs = absolute_probability(s, event_intersect(a, b));
        if (std::abs(lhs - rhs) > tol(1e-12)) {
            return fmt("CP*AP = %.17g vs AP(A∩B) = %.17g", lhs, rhs);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_singleton_normalization(const VerifyOptions& opt,
                                                         SplitMix64& rng) {
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dim = 2 + rng.index(opt.max_dim - 1);
        const auto s = random_discrete(rng, dim);
        double sum = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            sum += conditional_probability(s, Event::discrete({i}),
                                           Event::discrete_range(0, dim));
        }
        if (std::abs(sum - 1.0) > tol(1e-12)) return fmt("sum of singleton CP = %.17g", sum);
    }
    return std::nullopt;
}

// ------------------------------------------------------------- grid_continuum

std::optional<std::string> check_grid_routes(const VerifyOptions& opt, SplitMix64& rng) {
    for (int draw = 0; draw < 5; ++draw) {
        const Gaussian1D g{rng.uniform(-1.0, 1.0), rng.uniform(0.5, 2.0),
                           rng.uniform(-2.0, 2.0)};
        const auto s = sample_gaussian_1d(g, 8.0 * g.sigma, opt.grid_n);
        for (int k = 0; k < 6; ++k) {
            const double lo = g.center + rng.uniform(-3.0, 1.0) * g.sigma;
            const Event a = Event::interval(lo, lo + rng.uniform(0.5, 3.0) * g.sigma);
            if (absolute_probability_1d(s, a) <= 1e-14) continue;
            const auto r = ce_report_1d(s, a);
            if (!r.ok) return fmt("grid CE route discrepancy %.3e", r.discrepancy);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_quadrature_convergence(const VerifyOptions& opt,
                                                        SplitMix64&) {
    const double reference = std::sqrt(2.0 / std::numbers::pi);
    double prev = 0.0;
    for (std::size_t n : {opt.grid_n, opt.grid_n * 2, opt.grid_n * 4}) {
        const auto s = sample_gaussian_1d({0.0, 1.0, 0.0}, 8.0, n);
        const double err =
            std::abs(conditional_expectation_1d(s, Event::interval(0.0, 8.0)) - reference);
        if (prev > 0.0 && prev < 3.0 * err) {
            return fmt("error ratio %.2f below 3 under halving", prev / err);
        }
        prev = err;
    }
    return std::nullopt;
}

std::optional<std::string> check_tower_property(const VerifyOptions&, SplitMix64&) {
    const auto s = sample_bivariate_normal({1.0, 1.0, 0.5}, 8.0, 129, 129);
    const Marginals m = marginals_2d(s);
    const Event full = Event::product(IntervalUnion{{{-9.0, 9.0}}},
                                      IntervalUnion{{{-9.0, 9.0}}});
    const double mean_x = ce_borel_2d(s, [](double x, double) { return x; }, full);
    KahanSum tower;
    for (std::size_t k = 0; k < s.ny(); ++k) {
        const double py = m.py[k] * s.grid_y().dx;
        if (py <= 1e-14) continue;
        tower.add(py * ce_given_point(s, s.grid_y().point(k)));
    }
    if (std::abs(tower.value() - mean_x) > tol(2e-3)) {
        return fmt("tower mean %.6g vs direct mean %.6g", tower.value(), mean_x);
    }
    return std::nullopt;
}

std::optional<std::string> check_marginal_consistency(const VerifyOptions&, SplitMix64&) {
    const auto s = sample_bivariate_normal({1.0, 1.0, 0.3}, 8.0, 65, 65);
    const Marginals m = marginals_2d(s);
    for (std::size_t j = 0; j < s.nx(); ++j) {
        KahanSum row;
        for (std::size_t k = 0; k < s.ny(); ++k) row.add(s.density(j, k) * s.grid_y().dx);
        if (std::abs(row.value() - m.px[j]) > tol(1e-12)) {
            return fmt("row sum %.17g vs marginal %.17g", row.value(), m.px[j]);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_coordinate_commutativity(const VerifyOptions&,
                                                          SplitMix64&) {
    const auto s = sample_bivariate_normal({1.0, 1.0, 0.4}, 8.0, 33, 33);
    for (std::size_t j = 0; j < s.nx(); ++j) {
        for (std::size_t k = 0; k < s.ny(); ++k) {
            const double x = s.grid_x().point(j);
            const double y = s.grid_y().point(k);
            if ((x * y) * s.psi(j, k) != (y * x) * s.psi(j, k)) {
                return std::string("diagonal coordinate product depended on order");
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- fock_thermo

std::optional<std::string> check_fock_factorization(const VerifyOptions&, SplitMix64& rng) {
    for (int trial = 0; trial < 100; ++trial) {
        const bool fermionic = rng.coin();
        const std::size_t t = 1 + rng.index(fermionic ? 4 : 3);
        std::vector<double> eps(t);
        for (auto& e : eps) e = rng.uniform(0.1, 3.0);
        const double beta = rng.uniform(0.2, 2.0);
        const double mu = fermionic ? rng.uniform(-1.0, 1.0) : rng.uniform(-1.0, 0.05);
        const auto e = fermionic
                           ? FockEnsemble::fermions(eps, beta, mu)
                           : FockEnsemble::bosons(eps, beta, mu, 1 + rng.index(6));
        const double factored = grand_partition(e);
        const double direct = grand_partition_enumerated(e);
        if (std::abs(factored - direct) > tol(1e-12) * direct) {
            return fmt("factorized %.17g vs enumerated %.17g", factored, direct);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_fock_equilibrium(const VerifyOptions&, SplitMix64& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t t = 1 + rng.index(3);
        std::vector<double> eps(t), obs(t);
        for (auto& e : eps) e = rng.uniform(0.2, 2.0);
        for (auto& o : obs) o = rng.uniform(-2.0, 2.0);
        const auto e = FockEnsemble::bosons(eps, rng.uniform(0.5, 1.5), -0.2, 4);
        const double a = equilibrium_state_expectation(e, obs);
        const double b = linear_observable_expectation(e, obs);
        if (std::abs(a - b) > tol(1e-12) * std::max(1.0, std::abs(b))) {
            return fmt("equilibrium route %.17g vs factorized %.17g", a, b);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_fermion_bounds(const VerifyOptions&, SplitMix64& rng) {
    for (int trial = 0; trial < 60; ++trial) {
        const auto e = FockEnsemble::fermions({rng.uniform(-3.0, 3.0)},
                                              rng.uniform(0.1, 5.0), rng.uniform(-3.0, 3.0));
        const double n = mean_occupation(e, 0);
        if (n < 0.0 || n > 1.0) return fmt("fermion occupancy %.17g outside [0, 1]", n);
    }
    return std::nullopt;
}

std::optional<std::string> check_boson_truncation(const VerifyOptions&, SplitMix64&) {
    double prev_z = 0.0, prev_n = 0.0;
    for (std::size_t cap : {5u, 10u, 25u, 50u}) {
        const auto e = FockEnsemble::bosons({1.2}, 1.0, 0.6, cap);
        const double z = mode_partition(e, 0);
        const double n = mean_occupation(e, 0);
        if (z <= prev_z || n < prev_n) return std::string("truncation was not monotone");
        prev_z = z;
        prev_n = n;
    }
    const auto a = FockEnsemble::bosons({1.2}, 1.0, 0.6, 50);
    const auto b = FockEnsemble::bosons({1.2}, 1.0, 0.6, 100);
    const double dz = std::abs(mode_partition(b, 0) - mode_partition(a, 0));
    const double dn = std::abs(mean_occupation(b, 0) - mean_occupation(a, 0));
    if (dz > tol(1e-10) || dn > tol(1e-10)) {
        return fmt("truncation gap z %.3e, n %.3e above 1e-10", dz, dn);
    }
    return std::nullopt;
}

// ------------------------------------------------------------- time_evolution

Eigen::MatrixXcd random_hermitian(SplitMix64& rng, std::size_t dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(Eigen::Index(dim), Eigen::Index(dim));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            a(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    return 0.5 * (a + a.adjoint()).eval();
}

Eigen::VectorXcd random_ket(SplitMix64& rng, std::size_t dim) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    v.normalize();
    return v;
}

std::optional<std::string> check_unitarity(const VerifyOptions& opt, SplitMix64& rng) {
    const std::size_t dim = std::min<std::size_t>(opt.max_dim, 12);
    const HamiltonianMatrix h(random_hermitian(rng, dim));
    const Propagator base = build_propagator(h, 0.0);
    for (double t : {0.3, 2.0, 9.0, 31.0}) {
        const auto u = base.at(t).matrix();
        const double dev =
            (u.adjoint() * u -
             Eigen::MatrixXcd::Identity(Eigen::Index(dim), Eigen::Index(dim)))
                .cwiseAbs()
                .maxCoeff();
        if (dev > tol(1e-10)) return fmt("||U*U - I|| = %.3e at t = %g", dev, t);
    }
    return std::nullopt;
}

std::optional<std::string> check_purity(const VerifyOptions& opt, SplitMix64& rng) {
    const std::size_t dim = std::min<std::size_t>(opt.max_dim, 12);
    const HamiltonianMatrix h(random_hermitian(rng, dim));
    const auto s0 = random_ket(rng, dim);
    const Propagator base = build_propagator(h, 0.0);
    for (double t : {0.5, 4.0, 17.0}) {
        const Eigen::VectorXcd st = base.at(t).apply(s0);
        const Eigen::MatrixXcd rho = st * st.adjoint();
        const double tr = rho.trace().real();
        const double tr2 = (rho * rho).trace().real();
        if (std::abs(tr - 1.0) > tol(1e-10) || std::abs(tr2 - 1.0) > tol(1e-10)) {
            return fmt("trace %.17g, purity trace %.17g", tr, tr2);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_composition(const VerifyOptions& opt, SplitMix64& rng) {
    const std::size_t dim = std::min<std::size_t>(opt.max_dim, 12);
    const HamiltonianMatrix h(random_hermitian(rng, dim));
    const Propagator base = build_propagator(h, 0.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double t1 = rng.uniform(0.0, 5.0);
        const double t2 = rng.uniform(0.0, 5.0);
        const double dev =
            (base.at(t1 + t2).matrix() - base.at(t1).matrix() * base.at(t2).matrix())
                .cwiseAbs()
                .maxCoeff();
        if (dev > tol(1e-9)) return fmt("||U(t1+t2) - U(t1)U(t2)|| = %.3e", dev);
    }
    return std::nullopt;
}

std::optional<std::string> check_energy_conservation(const VerifyOptions& opt,
                                                     SplitMix64& rng) {
    const std::size_t dim = std::min<std::size_t>(opt.max_dim, 12);
    const Eigen::MatrixXcd hm = random_hermitian(rng, dim);
    const HamiltonianMatrix h(hm);
    const auto s0 = random_ket(rng, dim);
    const Propagator base = build_propagator(h, 0.0);
    const double e0 = (s0.adjoint() * hm * s0)(0, 0).real();
    for (double t : {1.0, 6.0, 23.0}) {
        const Eigen::VectorXcd st = base.at(t).apply(s0);
        const double et = (st.adjoint() * hm * st)(0, 0).real();
        if (std::abs(et - e0) > tol(1e-10)) return fmt("energy drift %.3e at t = %g", et - e0, t);
    }
    return std::nullopt;
}

std::optional<std::string> check_static_reduction(const VerifyOptions& opt,
                                                  SplitMix64& rng) {
    const std::size_t dim = 2 + rng.index(std::min<std::size_t>(opt.max_dim, 10) - 1);
    const HamiltonianMatrix h(random_hermitian(rng, dim));
    const auto s0 = random_ket(rng, dim);
    std::vector<double> obs(dim);
    for (auto& o : obs) o = rng.uniform(-2.0, 2.0);
    const Event a = random_event(rng, dim, true);
    if (ap_static(s0, a) <= 1e-10) return std::nullopt;
    const double d_ce = std::abs(ce_t(s0, h, obs, a, 0.0) - ce_static(s0, obs, a));
    const double d_ap = std::abs(ap_t(s0, h, a, 0.0) - ap_static(s0, a));
    if (d_ce > tol(1e-12) || d_ap > tol(1e-12)) {
        return fmt("t = 0 reduction drift ce %.3e ap %.3e", d_ce, d_ap);
    }
    return std::nullopt;
}

// -------------------------------------------------------------- noncommutative

std::optional<std::string> check_momentum_hermiticity(const VerifyOptions&, SplitMix64&) {
    const UniformGrid g = UniformGrid::cell_centered(0.0, 4.0, 64);
    for (Boundary b : {Boundary::periodic, Boundary::zero}) {
        const auto m = MomentumOperator(g, 1.0, b).dense();
        const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (dev > 1e-14) return fmt("stencil asymmetry %.3e", dev);
    }
    return std::nullopt;
}

std::optional<std::string> check_quasi_cp_unit_integral(const VerifyOptions& opt,
                                                        SplitMix64& rng) {
    const std::size_t n = std::min<std::size_t>(opt.grid_n, 1024);
    for (int trial = 0; trial < 10; ++trial) {
        const Gaussian1D g{rng.uniform(-1.0, 1.0), rng.uniform(0.5, 1.5),
                           rng.uniform(-2.0, 2.0)};
        const auto s = sample_gaussian_1d(g, 8.0 * g.sigma, n);
        const double x = g.center + rng.uniform(-2.0, 2.0) * g.sigma;
        const auto q = quasi_cp_momentum_given_position(s, x);
        const double dev = std::abs(q.unit_integral - cplx(1.0, 0.0));
        if (dev > tol(1e-6)) return fmt("unit integral off by %.3e", dev);
    }
    return std::nullopt;
}

std::optional<std::string> check_momentum_space_consistency(const VerifyOptions& opt,
                                                            SplitMix64&) {
    const std::size_t base = std::min<std::size_t>(opt.grid_n / 2, 512);
    double prev = 0.0;
    for (std::size_t n : {base, base * 2}) {
        const auto s = sample_gaussian_1d({0.0, 1.0, 1.7}, 8.0, n);
        const auto phi = momentum_amplitudes(s, 1.0);
        const MomentumGrid mg = conjugate_momentum_grid(s.grid(), 1.0);
        KahanSum mean;
        for (std::size_t m = 0; m < mg.n; ++m) {
            mean.add(mg.point(m) * std::norm(phi[m]) * mg.dp);
        }
        const MomentumOperator p(s.grid(), 1.0, Boundary::periodic);
        const double err = std::abs(mean.value() - momentum_expectation(p, s).real());
        if (prev > 0.0 && prev < 3.0 * err) {
            return fmt("momentum-space error ratio %.2f below 3", prev / err);
        }
        prev = err;
    }
    return std::nullopt;
}

std::optional<std::string> check_divergence_detection(const VerifyOptions&, SplitMix64&) {
    const auto psi = [](double x) { return gaussian_wavefunction({0.0, 1.0, 0.0}, x); };
    const auto rep = ce_momentum_given_position(psi, 8.0, 129, 1.0, 4);
    if (rep.verdict != DivergenceVerdict::divergent) {
        return std::string("generic point was not flagged divergent");
    }
    for (double r : rep.growth) {
        if (r < 1.5) return fmt("growth ratio %.3f below 1.5 per halving", r);
    }
    const auto zero = ce_momentum_given_position(psi, 8.0, 129, 0.0, 4);
    if (zero.verdict != DivergenceVerdict::conditionally_zero) {
        return std::string("symmetry point was not flagged conditionally-zero");
    }
    return std::nullopt;
}

const Check k_checks[] = {
    {"probability_core/amplitude_normalization", check_amplitude_normalization},
    {"probability_core/projector_idempotence", check_projector_idempotence},
    {"probability_core/intersection_homomorphism", check_intersection_homomorphism},
    {"probability_core/trace_monotonicity", check_trace_monotonicity},
    {"probability_core/trace_additivity", check_trace_additivity},
    {"probability_core/unit_trace_conditioning", check_unit_trace_conditioning},
    {"spectral_discrete/route_equivalence", check_discrete_routes},
    {"spectral_discrete/total_expectation", check_total_expectation},
    {"spectral_discrete/ce_bounds", check_ce_bounds},
    {"spectral_discrete/bayes_consistency", check_bayes},
    {"spectral_discrete/singleton_normalization", check_singleton_normalization},
    {"grid_continuum/route_equivalence", check_grid_routes},
    {"grid_continuum/quadrature_convergence", check_quadrature_convergence},
    {"grid_continuum/tower_property", check_tower_property},
    {"grid_continuum/marginal_consistency", check_marginal_consistency},
    {"grid_continuum/coordinate_commutativity", check_coordinate_commutativity},
    {"fock_thermo/factorization_identity", check_fock_factorization},
    {"fock_thermo/equilibrium_consistency", check_fock_equilibrium},
    {"fock_thermo/fermion_occupancy_bounds", check_fermion_bounds},
    {"fock_thermo/boson_truncation_convergence", check_boson_truncation},
    {"time_evolution/unitarity", check_unitarity},
    {"time_evolution/purity_preservation", check_purity},
    {"time_evolution/composition", check_composition},
    {"time_evolution/energy_conservation", check_energy_conservation},
    {"time_evolution/static_reduction", check_static_reduction},
    {"noncommutative/momentum_hermiticity", check_momentum_hermiticity},
    {"noncommutative/quasi_cp_unit_integral", check_quasi_cp_unit_integral},
    {"noncommutative/momentum_space_consistency", check_momentum_space_consistency},
    {"noncommutative/divergence_detection", check_divergence_detection},
};

}  // namespace

int run_verify(const VerifyOptions& opt) {
    const auto t_start = std::chrono::steady_clock::now();
    std::size_t ran = 0, failed = 0;
    std::string first_failed;

    for (const Check& check : k_checks) {
        const std::string name(check.name);
        if (!opt.only.empty() && name.find(opt.only) == std::string::npos) continue;
        ++ran;
        // one independent deterministic stream per invariant
        SplitMix64 rng(opt.seed * 1000003ull + ran);
        std::optional<std::string> failure;
        try {
            failure = check.fn(opt, rng);
        } catch (const std::exception& e) {
            failure = std::string("threw: ") + e.what();
        }
        if (failure) {
            ++failed;
            if (first_failed.empty()) first_failed = name;
            std::printf("%-52s FAIL  %s\n", check.name, failure->c_str());
        } else {
            std::printf("%-52s PASS\n", check.name);
        }
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    std::printf("qprob verify: %zu/%zu invariants passed (seed %llu, max-dim %zu, %.1f s)\n",
                ran - failed, ran, static_cast<unsigned long long>(opt.seed), opt.max_dim,
                secs);
    if (failed > 0) {
        std::printf("reproduce the first failure with:\n  qprob verify --seed %llu --only '%s'\n",
                    static_cast<unsigned long long>(opt.seed), first_failed.c_str());
        return 1;
    }
    if (ran == 0) {
        std::printf("no invariant matches --only '%s'\n", opt.only.c_str());
        return 1;
    }
    return 0;
}

}
