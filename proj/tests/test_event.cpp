#include <doctest.h>

#include "qprob/event.hpp"
#include "qprob/rng.hpp"

using namespace qprob;

TEST_CASE("discrete set intersection") {
    const Event a = Event::discrete({1, 2, 3});
    const Event b = Event::discrete({2, 3, 5});
    const Event c = event_intersect(a, b);
    CHECK(c.mask(8) == std::vector<std::uint8_t>{0, 0, 1, 1, 0, 0, 0, 0});
}

TEST_CASE("interval intersection and normalization") {
    const Event a = Event::interval(0.0, 2.0);
    const Event b = Event::interval(1.0, 3.0);
    const Event ab = event_intersect(a, b);
    const auto& iv = std::get<IntervalUnion>(ab.value());
    REQUIRE(iv.intervals.size() == 1);
    CHECK(iv.intervals[0][0] == 1.0);
    CHECK(iv.intervals[0][1] == 2.0);

    // touching closed intervals merge; merging is idempotent
    const Event m = Event::intervals({{0.0, 1.0}, {1.0, 2.0}, {4.0, 5.0}});
    const auto& mv = std::get<IntervalUnion>(m.value());
    REQUIRE(mv.intervals.size() == 2);
    CHECK(mv.intervals[0][1] == 2.0);
    const Event m2 = Event::intervals(mv.intervals);
    CHECK(std::get<IntervalUnion>(m2.value()).intervals == mv.intervals);
}

TEST_CASE("intersection with the full space is the identity") {
    SplitMix64 rng(11);
    const Event omega = Event::discrete_range(0, 8);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < 8; ++i) {
            if (rng.coin()) idx.push_back(i);
        }
        const Event a = Event::discrete(idx);
        CHECK(event_intersect(a, omega).mask(8) == a.mask(8));
    }
}

TEST_CASE("indicator idempotence and composition") {
    SplitMix64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + rng.index(15);
        std::vector<std::size_t> ia, ib;
        for (std::size_t i = 0; i < dim; ++i) {
            if (rng.coin()) ia.push_back(i);
            if (rng.coin()) ib.push_back(i);
        }
        const Event a = Event::discrete(ia);
        const Event b = Event::discrete(ib);
        const IndicatorMask ma = indicator(a, dim);
        const IndicatorMask mb = indicator(b, dim);

        // applying the projector twice equals applying it once, exactly
        std::vector<cplx> v(dim), once, twice;
        for (auto& z : v) z = rng.amplitude();
        once = v;
        ma.apply(once);
        twice = once;
        ma.apply(twice);
        CHECK(once == twice);

        // indicator of the intersection is the elementwise product
        CHECK(event_intersect(a, b).mask(dim) == ma.compose(mb).flags);
    }
}

TEST_CASE("full-space indicator is all ones") {
    CHECK(indicator(Event::discrete_range(0, 6), 6).all_ones());
    const UniformGrid g = UniformGrid::cell_centered(0.0, 4.0, 16);
    CHECK(indicator(Event::full_line(), g).all_ones());
}

TEST_CASE("grid masks use cell-center inclusion") {
    const UniformGrid g(0.0, 1.0, 5);  // points 0,1,2,3,4
    const Event a = Event::interval(0.5, 3.0);
    CHECK(a.mask(g) == std::vector<std::uint8_t>{0, 1, 1, 1, 0});
    const Event point = Event::discrete({2});  // exact grid-cell event
    CHECK(point.mask(g) == std::vector<std::uint8_t>{0, 0, 1, 0, 0});
}

TEST_CASE("product events build outer-product masks") {
    const UniformGrid gx(0.0, 1.0, 3);
    const UniformGrid gy(0.0, 1.0, 2);
    const Event p = Event::product(IntervalUnion{{{0.0, 1.0}}}, IntervalUnion{{{1.0, 1.0}}});
    CHECK(p.mask(gx, gy) == std::vector<std::uint8_t>{0, 1, 0, 1, 0, 0});
}

TEST_CASE("fock predicates admit occupation vectors") {
    FockPredicate pred;
    pred.per_mode = {FockRange{1, 1}, std::nullopt};
    pred.total = FockRange{1, 2};
    const Event e = Event::fock(pred);
    const std::vector<std::size_t> good{1, 1};
    const std::vector<std::size_t> wrong_mode{0, 2};
    const std::vector<std::size_t> too_many{1, 3};
    CHECK(e.admits(good));
    CHECK_FALSE(e.admits(wrong_mode));
    CHECK_FALSE(e.admits(too_many));

    FockPredicate other;
    other.total = FockRange{2, 5};
    const Event inter = event_intersect(e, Event::fock(other));
    CHECK(inter.admits(good));
    const std::vector<std::size_t> total_one{1, 0};
    CHECK_FALSE(inter.admits(total_one));
}

TEST_CASE("variant mismatches are rejected") {
    CHECK_THROWS_AS(event_intersect(Event::discrete({0}), Event::interval(0, 1)),
                    IncompatibleEvents);
    CHECK_THROWS_AS(Event::interval(0, 1).mask(std::size_t(4)), IncompatibleEvents);
    CHECK_THROWS_AS(Event::discrete({9}).mask(std::size_t(4)), IncompatibleEvents);
    const UniformGrid g(0.0, 1.0, 4);
    CHECK_THROWS_AS(Event::grid_mask({1, 0}).mask(g), IncompatibleEvents);
}

TEST_CASE("grid mask events intersect elementwise") {
    const Event a = Event::grid_mask({1, 1, 0, 1});
    const Event b = Event::grid_mask({0, 1, 1, 1});
    const Event ab = event_intersect(a, b);
    const UniformGrid g(0.0, 1.0, 4);
    CHECK(ab.mask(g) == std::vector<std::uint8_t>{0, 1, 0, 1});
    CHECK_THROWS_AS(event_intersect(a, Event::grid_mask({1, 0})), IncompatibleEvents);
}

TEST_CASE("grid construction validates its invariants") {
    CHECK_THROWS_AS(UniformGrid(0.0, 0.0, 8), Error);
    CHECK_THROWS_AS(UniformGrid(0.0, -0.5, 8), Error);
    CHECK_THROWS_AS(UniformGrid(0.0, 1.0, 1), GridTooSmall);
    CHECK_THROWS_AS(UniformGrid::cell_centered(0.0, -1.0, 8), Error);

    const UniformGrid g = UniformGrid::node_aligned(0.0, 4.0, 9);
    CHECK(g.point(4) == 0.0);  // odd n keeps the center on the grid
    CHECK(g.nearest_index(-10.0) == 0);
    CHECK(g.nearest_index(10.0) == 8);
    CHECK(g.nearest_index(0.4) == 4);
    CHECK(g.nearest_index(0.6) == 5);
}

TEST_CASE("degenerate intervals and empty events") {
    CHECK(Event::discrete({}).surely_empty());
    CHECK(Event::intervals({}).surely_empty());
    CHECK_FALSE(Event::interval(2.0, 2.0).surely_empty());  // single closed point
    CHECK_THROWS_AS(Event::interval(3.0, 2.0), Error);
}
