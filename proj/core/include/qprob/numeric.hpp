#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace qprob {

using cplx = std::complex<double>;

// Conditioning events with probability at or below this threshold raise
// ZeroConditionEvent instead of producing NaN.
inline constexpr double k_zero_condition_tol = 1e-14;

// Compensated (Kahan) accumulator. All quadratures and traces run in a
// fixed left-to-right order so repeated runs produce identical bytes.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

class KahanSumCplx {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

// Uniform tolerance relaxation for low-precision platforms; reads
// QPROB_TOLERANCE_SCALE once, clamped to >= 1. Default 1.
double tolerance_scale();

// Sum of |a_i|^2 * weight.
double norm_squared(std::span<const cplx> amps, double weight = 1.0);

// Scales amplitudes to unit norm under the given quadrature weight and
// returns the original norm. Throws Error on an (effectively) zero vector.
double normalize_amplitudes(std::span<cplx> amps, double weight = 1.0);

}
