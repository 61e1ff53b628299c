#include "qprob/density.hpp"

#include <cmath>

namespace qprob {

DensityOperator::DensityOperator(std::vector<cplx> amplitudes)
    : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw Error("density operator requires dimension >= 1");
    normalize_amplitudes(amps_);
}

double DensityOperator::weight(std::size_t i) const { return std::norm(amps_[i]); }

double DensityOperator::trace() const { return norm_squared(amps_); }

double DensityOperator::purity_trace() const {
    const double t = trace();
    return t * t;
}

ConditionalDensityOperator::ConditionalDensityOperator(DensityOperator base, Event event)
    : base_(std::move(base)), event_(std::move(event)),
      trace_(indicator_trace(base_, event_)) {}

double indicator_trace(const DensityOperator& rho, const Event& a) {
    const auto m = a.mask(rho.dim());
    KahanSum s;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        if (m[i]) s.add(rho.weight(i));
    }
    return s.value();
}

ConditionalDensityOperator cdo(const DensityOperator& rho, Event a) {
    return ConditionalDensityOperator(rho, std::move(a));
}

double normalized_cdo_trace(const DensityOperator& rho, const Event& x, const Event& y) {
    const double denom = indicator_trace(rho, y);
    if (denom <= k_zero_condition_tol) {
        throw ZeroConditionEvent("condition event has probability <= 1e-14: " + y.describe());
    }
    const auto mx = indicator(x, rho.dim());
    const auto my = indicator(y, rho.dim());
    const auto mxy = mx.compose(my);
    KahanSum num;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        if (mxy.flags[i]) num.add(rho.weight(i));
    }
    return num.value() / denom;
}

double observable_indicator_trace(const DensityOperator& rho, std::span<const double> obs,
                                  const Event& a) {
    if (obs.size() != rho.dim()) {
        throw DimensionMismatch("observable length does not match state dimension");
    }
    const auto m = a.mask(rho.dim());
    KahanSum s;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        if (m[i]) s.add(obs[i] * rho.weight(i));
    }
    return s.value();
}

}
