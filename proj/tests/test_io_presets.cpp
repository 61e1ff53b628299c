#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "qprob/continuum.hpp"
#include "qprob/discrete.hpp"
#include "qprob/io.hpp"
#include "qprob/presets.hpp"

using namespace qprob;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/qprob_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("grid state file round trip") {
    const auto s = sample_gaussian_1d({0.4, 0.8, 1.2}, 6.4, 128);
    TempFile f("roundtrip.dat");
    save_grid_state_1d(f.path, s);
    const auto loaded = load_grid_state_1d(f.path);
    REQUIRE(loaded.size() == s.size());
    CHECK(loaded.grid() == s.grid());
    for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(std::abs(loaded.psi(j) - s.psi(j)) < 1e-15);
    }
}

TEST_CASE("loader renormalizes and validates") {
    TempFile f("unnormalized.dat");
    {
        std::ofstream out(f.path);
        out << "# sampled state, intentionally unnormalized\n";
        out << "x0 0.0\ndx 0.5\nn 4\n";
        out << "0 2.0 0.0\n1 2.0 0.0\n2 2.0 0.0\n3 2.0 0.0\n";
    }
    const auto s = load_grid_state_1d(f.path);
    CHECK(std::abs(s.norm_check() - 1.0) < 1e-12);

    // header lines may come in any order
    TempFile reordered("reordered.dat");
    {
        std::ofstream out(reordered.path);
        out << "n 3\nx0 -1.0\ndx 1.0\n0 1.0 0.0\n1 2.0 0.0\n2 1.0 0.0\n";
    }
    const auto r = load_grid_state_1d(reordered.path);
    CHECK(r.grid().x0 == -1.0);
    CHECK(r.size() == 3);

    TempFile bad_header("bad_header.dat");
    {
        std::ofstream out(bad_header.path);
        out << "x0 0.0\nn 2\n0 1.0 0.0\n1 1.0 0.0\n";
    }
    CHECK_THROWS_AS(load_grid_state_1d(bad_header.path), Error);

    TempFile bad_row("bad_row.dat");
    {
        std::ofstream out(bad_row.path);
        out << "x0 0.0\ndx 0.5\nn 2\n0 1.0 0.0\n5 1.0 0.0\n";
    }
    CHECK_THROWS_AS(load_grid_state_1d(bad_row.path), Error);

    CHECK_THROWS_AS(load_grid_state_1d("/nonexistent/qprob.dat"), Error);
}

TEST_CASE("harmonic oscillator recipes") {
    const auto ground = harmonic_oscillator_state(6, 1.0, OscillatorRecipe::ground);
    CHECK(std::abs(expectation(ground) - 0.5) < 1e-12);
    CHECK(std::abs(absolute_probability(ground, Event::discrete({0})) - 1.0) < 1e-12);

    // thermal weights follow the Boltzmann ratio between adjacent levels
    const double beta = 0.7;
    const auto thermal = harmonic_oscillator_state(24, 1.0, OscillatorRecipe::thermal, beta);
    for (std::size_t i = 0; i + 1 < 8; ++i) {
        const double ratio = thermal.weight(i + 1) / thermal.weight(i);
        CHECK(std::abs(ratio - std::exp(-beta)) < 1e-12);
    }

    // coherent amplitudes keep the Poisson weight ratio alpha^2 / (i + 1)
    const double alpha = 1.3;
    const auto coherent =
        harmonic_oscillator_state(40, 1.0, OscillatorRecipe::coherent, alpha);
    for (std::size_t i = 0; i < 6; ++i) {
        const double ratio = coherent.weight(i + 1) / coherent.weight(i);
        CHECK(std::abs(ratio - alpha * alpha / double(i + 1)) < 1e-10);
    }
    // truncated at 40 levels the packet mean sits at (n_bar + 1/2) hbar_omega
    CHECK(std::abs(expectation(coherent) - (alpha * alpha + 0.5)) < 1e-8);
}

TEST_CASE("box eigenstates are separable and normalized") {
    const auto box = sample_box2d({2, 3, 1.0, 2.0}, 64, 64);
    CHECK(std::abs(box.norm_check() - 1.0) < 1e-10);
    const auto r = independence_check(box, 1e-10);
    CHECK(r.independent);
}

TEST_CASE("gaussian preset spans center plus minus halfwidth") {
    const auto s = sample_gaussian_1d({1.0, 0.5, 0.0}, 4.0, 256);
    CHECK(s.grid().left_edge() == doctest::Approx(-3.0));
    CHECK(s.grid().right_edge() == doctest::Approx(5.0));
    CHECK(std::abs(expectation_1d(s) - 1.0) < 1e-8);
}
