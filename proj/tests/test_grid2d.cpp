#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qprob/continuum.hpp"
#include "qprob/presets.hpp"

using namespace qprob;

namespace {

GridState2D correlated_preset(std::size_t n = 257) {
    return sample_bivariate_normal({1.0, 1.0, 0.5}, 8.0, n, n);
}

GridState2D separable_preset(std::size_t n = 129) {
    return sample_product_gaussian({0.0, 1.0, 0.0}, {0.0, 1.0, 0.0}, 8.0, n, n);
}

}  // namespace

TEST_CASE("borel conditional expectation") {
    const auto sep = separable_preset();
    const Event full = Event::product(IntervalUnion{{{-9.0, 9.0}}},
                                      IntervalUnion{{{-9.0, 9.0}}});

    CHECK(std::abs(ce_borel_2d(sep, [](double, double) { return 1.0; }, full) - 1.0) <
          1e-12);
    CHECK(std::abs(ce_borel_2d(sep, [](double x, double) { return x; }, full)) < 1e-8);

    // correlated normal law: E[XY] equals the correlation
    const auto corr = correlated_preset();
    CHECK(std::abs(ce_borel_2d(corr, [](double x, double y) { return x * y; }, full) -
                   0.5) < 1e-3);

    CHECK_THROWS_AS(ce_borel_2d(sep, [](double, double) { return 1.0; },
                                Event::product(IntervalUnion{{{20.0, 21.0}}},
                                               IntervalUnion{{{-1.0, 1.0}}})),
                    ZeroConditionEvent);
}

TEST_CASE("marginals") {
    const auto sep = separable_preset();
    const Marginals m = marginals_2d(sep);

    // each marginal is itself a normalized density
    double sx = 0.0, sy = 0.0;
    for (double v : m.px) sx += v * sep.grid_x().dx;
    for (double v : m.py) sy += v * sep.grid_y().dx;
    CHECK(std::abs(sx - 1.0) < 1e-10);
    CHECK(std::abs(sy - 1.0) < 1e-10);

    // separable state: the x marginal is the 1D density of the x factor
    const UniformGrid gx = sep.grid_x();
    std::vector<cplx> col(gx.n);
    for (std::size_t j = 0; j < gx.n; ++j) col[j] = gaussian_wavefunction({0.0, 1.0, 0.0}, gx.point(j));
    const GridState1D factor(gx, std::move(col));
    for (std::size_t j = 0; j < gx.n; ++j) {
        CHECK(std::abs(m.px[j] - factor.density(j)) < 1e-10);
    }

    // correlated state: marginal of the joint law is the 1D normal density
    const auto corr = correlated_preset();
    const Marginals mc = marginals_2d(corr);
    for (std::size_t j = 0; j < corr.grid_x().n; j += 16) {
        const double expected = oracle::normal_density(corr.grid_x().point(j), 0.0, 1.0);
        CHECK(std::abs(mc.px[j] - expected) < 1e-4);
    }
}

TEST_CASE("marginal consistency is an exact summation identity") {
    const auto corr = correlated_preset(65);
    const Marginals m = marginals_2d(corr);
    for (std::size_t j = 0; j < corr.nx(); ++j) {
        KahanSum row;
        for (std::size_t k = 0; k < corr.ny(); ++k) {
            row.add(corr.density(j, k) * corr.grid_y().dx);
        }
        CHECK(std::abs(row.value() - m.px[j]) < 1e-12);
    }
}

TEST_CASE("independence factorization") {
    const auto sep = separable_preset();
    const auto r1 = independence_check(sep, 1e-10);
    CHECK(r1.independent);
    CHECK(r1.max_deviation < 1e-10);

    const auto box = sample_box2d({1, 2, 1.0, 1.0}, 128, 128);
    CHECK(independence_check(box, 1e-10).independent);

    const auto corr = correlated_preset();
    const auto r2 = independence_check(corr, 1e-3);
    CHECK_FALSE(r2.independent);
    CHECK(r2.max_deviation > 1e-3);

    // y-degenerate state (constant along y) factorizes trivially
    const UniformGrid gx = UniformGrid::node_aligned(0.0, 4.0, 33);
    const UniformGrid gy(0.0, 1.0, 2);
    std::vector<cplx> psi(gx.n * gy.n);
    for (std::size_t j = 0; j < gx.n; ++j) {
        for (std::size_t k = 0; k < gy.n; ++k) {
            psi[j * gy.n + k] = gaussian_wavefunction({0.0, 1.0, 0.0}, gx.point(j));
        }
    }
    CHECK(independence_check(GridState2D(gx, gy, std::move(psi)), 1e-10).independent);
}

TEST_CASE("axis conditional expectation") {
    const auto sep = separable_preset();
    const Event band = Event::product(IntervalUnion{{{0.25, 1.75}}},
                                      IntervalUnion{{{-9.0, 9.0}}});

    // product event on a separable state reduces to the 1D conditioning
    const UniformGrid gx = sep.grid_x();
    std::vector<cplx> col(gx.n);
    for (std::size_t j = 0; j < gx.n; ++j) col[j] = gaussian_wavefunction({0.0, 1.0, 0.0}, gx.point(j));
    const GridState1D factor(gx, std::move(col));
    const double axis_value = axis_conditional_expectation(sep, Axis::x, band);
    const double oned_value = conditional_expectation_1d(factor, Event::interval(0.25, 1.75));
    CHECK(std::abs(axis_value - oned_value) < 1e-10);

    const Event full = Event::product(IntervalUnion{{{-9.0, 9.0}}},
                                      IntervalUnion{{{-9.0, 9.0}}});
    CHECK(std::abs(axis_conditional_expectation(sep, Axis::x, full) -
                   ce_borel_2d(sep, [](double x, double) { return x; }, full)) < 1e-12);

    // upper half-plane of the correlated law pulls the x mean to
    // correlation * E[Y | Y >= a]. The event boundary is placed on a cell
    // edge (half a spacing above zero) so the grid mask tiles [a, inf)
    // exactly and the comparison against the closed form is second order.
    const auto corr = correlated_preset(513);
    const double a = 0.5 * corr.grid_y().dx;
    const Event upper = Event::product(IntervalUnion{{{-9.0, 9.0}}},
                                       IntervalUnion{{{a, 9.0}}});
    const double tail = 0.5 * std::erfc(a / std::sqrt(2.0));
    const double expected = 0.5 * oracle::normal_density(a, 0.0, 1.0) / tail;
    CHECK(std::abs(axis_conditional_expectation(corr, Axis::x, upper) - expected) < 1e-4);
}

TEST_CASE("point conditioning") {
    const auto sep = separable_preset();
    for (double y : {-1.0, 0.0, 0.5, 2.0}) {
        CHECK(std::abs(ce_given_point(sep, y) -
                       ce_borel_2d(sep, [](double x, double) { return x; },
                                   Event::product(IntervalUnion{{{-9.0, 9.0}}},
                                                  IntervalUnion{{{-9.0, 9.0}}}))) < 1e-10);
    }

    // conditional mean of the correlated normal law is correlation * y
    const auto corr = correlated_preset();
    CHECK(std::abs(ce_given_point(corr, 1.0) - 0.5) < 1e-3);

    // even density in x keeps every conditional mean at zero
    CHECK(std::abs(ce_given_point(sep, 1.0)) < 1e-8);

    CHECK_THROWS_AS(ce_given_point(correlated_preset(65), 7.9), ZeroConditionEvent);
}

TEST_CASE("point-conditioned density") {
    const auto corr = correlated_preset();

    // normalization of the conditional density row
    for (double y : {0.0, 1.0, -0.5}) {
        const auto row = conditional_density_given_point(corr, y);
        KahanSum sum;
        for (double v : row) sum.add(v * corr.grid_x().dx);
        CHECK(std::abs(sum.value() - 1.0) < 1e-10);
    }

    // separable state: conditional density equals the x marginal
    const auto sep = separable_preset();
    const auto row = conditional_density_given_point(sep, 0.75);
    const auto m = marginals_2d(sep);
    for (std::size_t j = 0; j < row.size(); j += 8) {
        CHECK(std::abs(row[j] - m.px[j]) < 1e-10);
    }

    // conditional law of the correlated normal: N(rho y, 1 - rho^2)
    for (double x : {-0.5, 0.0, 0.5, 1.0}) {
        const double expected = oracle::normal_density(x, 0.5, std::sqrt(0.75));
        CHECK(std::abs(cp_given_point(corr, x, 1.0) - expected) < 1e-3);
    }
}

TEST_CASE("non-finite observables are rejected") {
    const auto sep = separable_preset(33);
    const Event full = Event::product(IntervalUnion{{{-9.0, 9.0}}},
                                      IntervalUnion{{{-9.0, 9.0}}});
    CHECK_THROWS_AS(ce_borel_2d(sep, [](double x, double) { return 1.0 / (x - x); }, full),
                    Error);
}

TEST_CASE("tower property over the y marginal") {
    const auto corr = correlated_preset(129);
    const Marginals m = marginals_2d(corr);
    const Event full = Event::product(IntervalUnion{{{-9.0, 9.0}}},
                                      IntervalUnion{{{-9.0, 9.0}}});
    const double mean_x = ce_borel_2d(corr, [](double x, double) { return x; }, full);

    KahanSum tower;
    for (std::size_t k = 0; k < corr.ny(); ++k) {
        const double py = m.py[k] * corr.grid_y().dx;
        if (py <= 1e-14) continue;
        tower.add(py * ce_given_point(corr, corr.grid_y().point(k)));
    }
    CHECK(std::abs(tower.value() - mean_x) < 2e-3);
}

TEST_CASE("coordinate multiplication commutes exactly") {
    // both coordinate operators are diagonal, so their composition is the
    // diagonal of elementwise products, which is order-independent bitwise
    const auto corr = correlated_preset(65);
    for (std::size_t j = 0; j < corr.nx(); j += 7) {
        for (std::size_t k = 0; k < corr.ny(); k += 7) {
            const double x = corr.grid_x().point(j);
            const double y = corr.grid_y().point(k);
            const cplx xy = (x * y) * corr.psi(j, k);
            const cplx yx = (y * x) * corr.psi(j, k);
            CHECK(xy == yx);
        }
    }
}

TEST_CASE("2d absolute and conditional probability") {
    const auto corr = correlated_preset(513);
    const Event full = Event::product(IntervalUnion{{{-9.0, 9.0}}},
                                      IntervalUnion{{{-9.0, 9.0}}});
    CHECK(std::abs(absolute_probability_2d(corr, full) - 1.0) < 1e-10);

    // quadrant with cell-edge boundaries; reference by independent 2D
    // quadrature of the analytic density over the same effective region
    const double a = 0.5 * corr.grid_x().dx;
    const Event quadrant = Event::product(IntervalUnion{{{a, 9.0}}},
                                          IntervalUnion{{{a, 9.0}}});
    const double expected = oracle::integrate2d(
        [](double x, double y) { return oracle::bivariate_normal_density(x, y, 1.0, 1.0, 0.5); },
        a, 8.0, a, 8.0, 800);
    CHECK(std::abs(absolute_probability_2d(corr, quadrant) - expected) < 1e-3);

    CHECK(std::abs(conditional_probability_2d(corr, full, quadrant) - 1.0) < 1e-12);
}
