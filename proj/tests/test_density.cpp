#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qprob/density.hpp"
#include "qprob/rng.hpp"

using namespace qprob;

namespace {

DensityOperator random_density(SplitMix64& rng, std::size_t dim) {
    std::vector<cplx> amps(dim);
    for (auto& a : amps) a = rng.amplitude();
    return DensityOperator(std::move(amps));
}

std::vector<std::size_t> random_indices(SplitMix64& rng, std::size_t dim) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < dim; ++i) {
        if (rng.coin()) idx.push_back(i);
    }
    return idx;
}

}  // namespace

TEST_CASE("density operator trace and purity") {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const auto rho = random_density(rng, 2 + rng.index(14));
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK(std::abs(rho.purity_trace() - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(DensityOperator(std::vector<cplx>(3, cplx(0.0))), Error);
}

TEST_CASE("indicator trace") {
    const DensityOperator rho({std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)});
    CHECK(std::abs(indicator_trace(rho, Event::discrete_range(0, 3)) - 1.0) < 1e-12);
    CHECK(indicator_trace(rho, Event::discrete({})) == 0.0);
    CHECK(std::abs(indicator_trace(rho, Event::discrete({0, 2})) - 0.7) < 1e-12);
}

TEST_CASE("conditional density operator caches the event trace") {
    const DensityOperator rho({std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)});
    CHECK(std::abs(cdo(rho, Event::discrete_range(0, 3)).trace() - 1.0) < 1e-12);
    CHECK(cdo(rho, Event::discrete({})).trace() == 0.0);
    CHECK(std::abs(cdo(rho, Event::discrete({1})).trace() - 0.3) < 1e-12);
}

TEST_CASE("normalized cdo trace") {
    SplitMix64 rng(22);
    const auto rho = random_density(rng, 6);

    CHECK(std::abs(normalized_cdo_trace(rho, Event::discrete_range(0, 6),
                                        Event::discrete({1, 3})) -
                   1.0) < 1e-12);
    CHECK(normalized_cdo_trace(rho, Event::discrete({0}), Event::discrete({1})) == 0.0);
    CHECK_THROWS_AS(normalized_cdo_trace(rho, Event::discrete({0}), Event::discrete({})),
                    ZeroConditionEvent);

    for (int trial = 0; trial < 40; ++trial) {
        const auto rho6 = random_density(rng, 6);
        auto ix = random_indices(rng, 6);
        auto iy = random_indices(rng, 6);
        if (iy.empty()) iy.push_back(rng.index(6));
        std::vector<std::size_t> both;
        for (std::size_t i : ix) {
            if (std::find(iy.begin(), iy.end(), i) != iy.end()) both.push_back(i);
        }
        const double expected = oracle::weight_sum(rho6.amplitudes(), both) /
                                oracle::weight_sum(rho6.amplitudes(), iy);
        const double got =
            normalized_cdo_trace(rho6, Event::discrete(ix), Event::discrete(iy));
        CHECK(std::abs(got - expected) < 1e-12);
    }
}

TEST_CASE("trace monotonicity and additivity") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + rng.index(15);
        const auto rho = random_density(rng, dim);
        auto ia = random_indices(rng, dim);

        // a superset can only gain probability
        auto ib = ia;
        for (std::size_t i = 0; i < dim; ++i) {
            if (rng.coin()) ib.push_back(i);
        }
        const Event a = Event::discrete(ia);
        const Event b = Event::discrete(ib);
        CHECK(indicator_trace(rho, a) <= indicator_trace(rho, b) + 1e-12);

        // disjoint split of b adds up
        std::vector<std::size_t> left, right;
        const auto mask_b = b.mask(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (!mask_b[i]) continue;
            (rng.coin() ? left : right).push_back(i);
        }
        const double whole = indicator_trace(rho, b);
        const double split = indicator_trace(rho, Event::discrete(left)) +
                             indicator_trace(rho, Event::discrete(right));
        CHECK(std::abs(whole - split) < 1e-12);
    }
}

TEST_CASE("conditioning through the unit-trace operator matches") {
    // Tr[rho I_X I_Y] / Tr[rho I_Y] must agree with the indicator trace of
    // X against the renormalized conditioned state, evaluated by hand.
    SplitMix64 rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t dim = 2 + rng.index(15);
        const auto rho = random_density(rng, dim);
        auto ix = random_indices(rng, dim);
        auto iy = random_indices(rng, dim);
        if (iy.empty()) iy.push_back(rng.index(6 % dim));
        const double trace_y = oracle::weight_sum(rho.amplitudes(), iy);
        if (trace_y <= 1e-14) continue;

        double via_unit_trace = 0.0;
        for (std::size_t i : ix) {
            if (std::find(iy.begin(), iy.end(), i) != iy.end()) {
                via_unit_trace += std::norm(rho.amplitudes()[i]) / trace_y;
            }
        }
        const double got =
            normalized_cdo_trace(rho, Event::discrete(ix), Event::discrete(iy));
        CHECK(std::abs(got - via_unit_trace) < 1e-12);
    }
}

TEST_CASE("observable indicator trace") {
    const DensityOperator rho({std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)});
    const std::vector<double> obs{1.0, 2.0, 4.0};
    const double got = observable_indicator_trace(rho, obs, Event::discrete({0, 2}));
    CHECK(std::abs(got - (0.5 * 1.0 + 0.2 * 4.0)) < 1e-12);
    CHECK_THROWS_AS(
        observable_indicator_trace(rho, std::vector<double>{1.0}, Event::discrete({0})),
        DimensionMismatch);
}
