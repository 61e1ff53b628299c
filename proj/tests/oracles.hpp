#pragma once

// Brute-force reference computations for the test suite. Everything here is
// deliberately independent of the library's computation paths: plain loops,
// naive summation, recursion.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// sum of |c_i|^2 over an index subset
inline double weight_sum(std::span<const cplx> amps, std::span<const std::size_t> idx) {
    double s = 0.0;
    for (std::size_t i : idx) s += std::norm(amps[i]);
    return s;
}

// sum of eps_i |c_i|^2 over an index subset
inline double weighted_value_sum(std::span<const double> eps, std::span<const cplx> amps,
                                 std::span<const std::size_t> idx) {
    double s = 0.0;
    for (std::size_t i : idx) s += eps[i] * std::norm(amps[i]);
    return s;
}

// composite Simpson rule at high resolution (pieces must be even)
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        std::size_t pieces = 20000) {
    const double h = (b - a) / double(pieces);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < pieces; ++i) {
        s += f(a + double(i) * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

// tensorized composite Simpson rule over a rectangle
inline double integrate2d(const std::function<double(double, double)>& f, double ax,
                          double bx, double ay, double by, std::size_t pieces = 400) {
    const auto inner = [&](double y) {
        return integrate([&](double x) { return f(x, y); }, ax, bx, pieces);
    };
    return integrate(inner, ay, by, pieces);
}

inline double normal_density(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

inline double bivariate_normal_density(double x, double y, double sx, double sy,
                                       double rho) {
    const double u = x / sx;
    const double v = y / sy;
    const double om = 1.0 - rho * rho;
    const double q = (u * u - 2.0 * rho * u * v + v * v) / om;
    return std::exp(-0.5 * q) / (2.0 * M_PI * sx * sy * std::sqrt(om));
}

// recursive enumeration over truncated occupation vectors
inline void visit_occupations(std::size_t modes, std::size_t cap,
                              std::vector<std::size_t>& n, std::size_t mode,
                              const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (mode == modes) {
        fn(n);
        return;
    }
    for (std::size_t k = 0; k <= cap; ++k) {
        n[mode] = k;
        visit_occupations(modes, cap, n, mode + 1, fn);
    }
}

// direct Boltzmann-weighted trace over occupation vectors
inline double fock_grand_partition(std::span<const double> eps, double beta, double mu,
                                   std::size_t cap) {
    double z = 0.0;
    std::vector<std::size_t> n(eps.size(), 0);
    visit_occupations(eps.size(), cap, n, 0, [&](const std::vector<std::size_t>& occ) {
        double energy = 0.0, count = 0.0;
        for (std::size_t j = 0; j < occ.size(); ++j) {
            energy += double(occ[j]) * eps[j];
            count += double(occ[j]);
        }
        z += std::exp(-beta * (energy - mu * count));
    });
    return z;
}

// conditional mean of a linear occupation observable over an admitted set
inline double fock_conditional(std::span<const double> eps, double beta, double mu,
                               std::size_t cap, std::span<const double> obs,
                               const std::function<bool(const std::vector<std::size_t>&)>& admit) {
    double num = 0.0, den = 0.0;
    std::vector<std::size_t> n(eps.size(), 0);
    visit_occupations(eps.size(), cap, n, 0, [&](const std::vector<std::size_t>& occ) {
        if (!admit(occ)) return;
        double energy = 0.0, count = 0.0, value = 0.0;
        for (std::size_t j = 0; j < occ.size(); ++j) {
            energy += double(occ[j]) * eps[j];
            count += double(occ[j]);
            value += obs[j] * double(occ[j]);
        }
        const double w = std::exp(-beta * (energy - mu * count));
        num += value * w;
        den += w;
    });
    return num / den;
}

// closed-form two-level propagator for H = [[0, c], [c, 0]], hbar = 1:
// U(t) = [[cos(ct), -i sin(ct)], [-i sin(ct), cos(ct)]]
inline void rabi_propagator(double coupling, double t, cplx out[2][2]) {
    const double c = std::cos(coupling * t);
    const double s = std::sin(coupling * t);
    out[0][0] = c;
    out[0][1] = cplx(0.0, -s);
    out[1][0] = cplx(0.0, -s);
    out[1][1] = c;
}

}  // namespace oracle
